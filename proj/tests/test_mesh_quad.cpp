#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "sonine/convolution.hpp"
#include "sonine/error.hpp"
#include "sonine/gamma.hpp"
#include "sonine/gauss_rules.hpp"
#include "sonine/kernels.hpp"
#include "sonine/mesh.hpp"
#include "sonine/product_rule.hpp"
#include "sonine/singular_rule.hpp"

using namespace sonine;
using std::numbers::pi;

namespace {

std::vector<double> nodes_of(const Mesh& m) { return {m.nodes().begin(), m.nodes().end()}; }

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

double max_gap_to_one(const SampledFunction& g) {
  double worst = 0.0;
  for (std::size_t i = 1; i < g.values.size(); ++i) worst = std::max(worst, std::abs(g.values[i] - 1.0));
  return worst;
}

}  // namespace

TEST_SUITE("mesh_quad") {

TEST_CASE("graded mesh examples") {
  CHECK(nodes_of(graded_mesh(4, 2, 1.0)) == std::vector<double>{0, 0.0625, 0.25, 0.5625, 1.0});
  CHECK(nodes_of(graded_mesh(4, 1, 2.0)) == std::vector<double>{0, 0.5, 1.0, 1.5, 2.0});
  CHECK(nodes_of(graded_mesh(2, 3, 1.0)) == std::vector<double>{0, 0.125, 1.0});
  CHECK_THROWS_AS(graded_mesh(1, 2, 1.0), DomainError);
  CHECK_THROWS_AS(graded_mesh(4, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(graded_mesh(4, 2, 0.0), DomainError);
}

TEST_CASE("graded mesh invariants") {
  for (double r : {1.0, 1.5, 2.0, 3.7}) {
    const Mesh m = graded_mesh(777, r, 0.3);
    CHECK(m[0] == 0.0);
    CHECK(m[777] == 0.3);
    for (std::size_t j = 1; j <= 777; ++j) {
      REQUIRE(m[j] > m[j - 1]);
      REQUIRE(oracle::rel_err(m[j], 0.3 * std::pow(j / 777.0, r)) <= 1e-14);
    }
  }
  CHECK(default_grading({0.5}) == 4.0);
  CHECK(default_grading({0.25}) == doctest::Approx(8.0 / 3.0));
  CHECK(default_grading({0.9, 0.1}) == 4.0);
}

TEST_CASE("mesh from nodes") {
  CHECK_THROWS_AS(Mesh::from_nodes({0.0, 0.5}), DomainError);
  CHECK_THROWS_AS(Mesh::from_nodes({0.1, 0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(Mesh::from_nodes({0.0, 0.5, 0.5}), DomainError);
  const Mesh m = Mesh::from_nodes({0.0, 0.2, 0.7, 1.0});
  CHECK(m.panel_of(0.0) == 0);
  CHECK(m.panel_of(0.5) == 1);
  CHECK(m.panel_of(1.0) == 2);
}

TEST_CASE("sampled function conventions") {
  const Mesh m = graded_mesh(4, 1, 1.0);
  CHECK_THROWS_AS(SampledFunction(m, {1.0, 2.0}), DomainError);
  SampledFunction f(m, {0.0, 1.0, 2.0, 3.0, 4.0});
  CHECK(f(0.375) == doctest::Approx(1.5));
  SampledFunction c(m, {0.0, 1.0, 2.0, 3.0, 4.0}, Interp::piecewise_constant_left);
  CHECK(c(0.375) == 1.0);
  SampledFunction s(m, {NAN, 2.0, std::sqrt(2.0), 2.0 / std::sqrt(3.0), 1.0});
  s.sing_exponent = 0.5;
  s.head_limit = 1.0;
  CHECK_NOTHROW(s.validate());
  CHECK(s.regular_node(0) == 1.0);
  CHECK(s.regular_node(2) == doctest::Approx(1.0));
  CHECK(s(0.1) == doctest::Approx(1.0 / std::sqrt(0.1)));
  SampledFunction bad(m, {0.0, 1.0, NAN, 3.0, 4.0});
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("product weights on a unit panel") {
  const Mesh m = Mesh::from_nodes({0.0, 1.0, 2.0});
  const auto w = product_weights(m, 1, 0.5);
  REQUIRE(w.size() == 2);
  CHECK(w[0] + w[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(w[0] * 0.0 + w[1] * 1.0 == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(product_weights(m, 0, 0.5), DomainError);
  CHECK_THROWS_AS(product_weights(m, 3, 0.5), DomainError);
  CHECK_THROWS_AS(product_weights(m, 1, 0.0), DomainError);
}

TEST_CASE("product weights are exact on linears") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (double r : {1.0, 2.0, 3.5}) {
    const Mesh m = graded_mesh(64, r, 1.3);
    for (double beta : {0.05, 0.25, 0.5, 0.75, 0.97}) {
      for (std::size_t i : {1u, 2u, 17u, 63u, 64u}) {
        const double a = U(rng), c = U(rng);
        const auto w = product_weights(m, i, beta);
        KahanSum sum;
        for (std::size_t j = 0; j <= i; ++j) sum.add(w[j] * (a + c * m[j]));
        const double ti = m[i];
        const double want = a * std::pow(ti, beta) / beta + c * std::pow(ti, beta + 1.0) / (beta * (beta + 1.0));
        const double ref = oracle::convolve([&](double s, double r) { return std::pow(r, beta - 1.0) * (a + c * s); }, ti);
        CAPTURE(r);
        CAPTURE(beta);
        CAPTURE(i);
        CHECK(oracle::rel_err(sum.value(), want) <= 1e-10);
        CHECK(oracle::rel_err(ref, want) <= 1e-10);

        KahanSum mass;
        for (double x : w) mass.add(x);
        CHECK(oracle::rel_err(mass.value(), std::pow(ti, beta) / beta) <= 1e-12);
      }
    }
  }
}

TEST_CASE("constant-left weights are non-negative and exact on constants") {
  const Mesh m = graded_mesh(50, 2.0, 1.0);
  for (double beta : {0.1, 0.5, 0.9}) {
    for (std::size_t i = 1; i <= 50; ++i) {
      const auto w = product_weights_constant(m, i, beta);
      double sum = 0.0;
      for (double x : w) {
        REQUIRE(x >= 0.0);
        sum += x;
      }
      CHECK(w[i] == 0.0);
      CHECK(oracle::rel_err(sum, std::pow(m[i], beta) / beta) <= 1e-12);
    }
  }
}

TEST_CASE("gauss-jacobi integrates its weight against polynomials") {
  for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{-0.5, 0.0}, std::pair{0.0, -0.75}, std::pair{-0.4, -0.6}}) {
    const QuadratureRule q = gauss_jacobi(10, a, b);
    for (int n = 0; n < 19; ++n) {
      double sum = 0.0;
      for (std::size_t k = 0; k < q.nodes.size(); ++k) sum += q.weights[k] * std::pow(q.nodes[k], n);
      CAPTURE(a);
      CAPTURE(b);
      CAPTURE(n);
      CHECK(oracle::rel_err(sum, beta(a + 1.0, b + n + 1.0)) <= 1e-12);
    }
  }
}

TEST_CASE("singular rule is exact for the doubly singular Beta integral") {
  const Mesh m = graded_mesh(40, 2.0, 1.0);
  const SingularRule rule(m, 0.3, 0.6);
  std::vector<double> c;
  for (std::size_t i : {1u, 5u, 40u}) {
    rule.row(i, [](double) { return 1.0; }, c);
    double sum = 0.0;
    for (double x : c) sum += x;
    const double want = std::pow(m[i], 1.0 - 0.3 - 0.6) * beta(0.7, 0.4);
    CHECK(oracle::rel_err(sum, want) <= 1e-12);
  }
}

TEST_CASE("convolve_weakly_singular") {
  const Mesh m = graded_mesh(256, 2.0, 1.0);
  const KernelSpec k = KernelSpec::power(1.0, 0.5, 1.0);
  const SampledFunction one(m, std::vector<double>(m.size(), 1.0));
  const SampledFunction c = convolve_weakly_singular(k, one, m);
  CHECK(c.values[0] == 0.0);
  CHECK(c.values[256] == doctest::Approx(2.0).epsilon(1e-14));

  // (t^-1/2 / pi) * (2 sqrt(s) / pi) = t / pi
  const KernelSpec K = KernelSpec::power(1.0 / pi, 0.5, 1.0);
  std::vector<double> phi(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) phi[j] = 2.0 * std::sqrt(m[j]) / pi;
  const SampledFunction r = convolve_weakly_singular(K, SampledFunction(m, phi), m);
  for (std::size_t i = 1; i <= 256; ++i)
    if (m[i] >= 0.1) CHECK(oracle::rel_err(r.values[i], m[i] / pi) <= 1e-4);

  CHECK_THROWS_AS(convolve_weakly_singular(k, SampledFunction(graded_mesh(256, 1.0, 1.0), phi), m), DomainError);
}

TEST_CASE("convolve_pair on classical pairs") {
  for (double a : {0.25, 0.5, 0.75}) {
    const SoninePair p = make_classical_abel_pair(a, 1.0);
    const Mesh m = graded_mesh(512, 2.0, 1.0);
    const SampledFunction g = convolve_pair(p.K, p.k, m);
    CAPTURE(a);
    CHECK(std::isnan(g.values[0]));
    CHECK(max_gap_to_one(g) <= 1e-4);
  }
}

TEST_CASE("convolve_pair on the variable exponent pair matches an adaptive oracle") {
  const SoninePair p = make_variable_exponent_pair(ExponentFunction::affine(0.5, 0.2, 0.5), 0.5);
  const double t = 0.25;
  const double ref =
      oracle::convolve([&](double z, double w) { return std::pow(t * z, -t * z / 5.0) / std::sqrt(w * z); }, 1.0) / pi;
  CHECK(oracle::rel_err(ref, 1.0455940748395607005) <= 1e-12);
  CHECK(std::abs(convolve_pair_at(p.K, p.k, t) - ref) <= 1e-4);
  const Mesh m = graded_mesh(512, 2.0, 0.5);
  const SampledFunction g = convolve_pair(p.K, p.k, m);
  std::size_t i = m.panel_of(t);
  const double want_i = oracle::convolve([&](double s, double r) { return p.K(r) * p.k(s); }, m[i]);
  CHECK(std::abs(g.values[i] - want_i) <= 1e-4);
}

TEST_CASE("convolve_pair is symmetric up to quadrature error") {
  const SoninePair p = make_variable_exponent_pair(ExponentFunction::affine(0.5, 0.2, 0.5), 0.5);
  const Mesh m = graded_mesh(512, 2.0, 0.5);
  const SampledFunction a = convolve_pair(p.K, p.k, m);
  const SampledFunction b = convolve_pair(p.k, p.K, m);
  double worst = 0.0;
  for (std::size_t i = 1; i < m.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  CHECK(worst <= 2e-4);
}

TEST_CASE("convolve_pair refines on classical pairs") {
  // The node error is scale free, so refine the local sub-mesh.
  const SoninePair p = make_classical_abel_pair(0.5, 1.0);
  const Mesh m = graded_mesh(64, 2.0, 1.0);
  double prev = 0.0;
  for (std::size_t panels : {8u, 16u, 32u, 64u}) {
    const double err = max_gap_to_one(convolve_pair(p.K, p.k, m, {panels, 1.5}));
    CAPTURE(panels);
    if (prev > 0.0) CHECK(prev / err >= 1.7);
    prev = err;
  }
}

TEST_CASE("serial and parallel rows are bit-identical") {
  const SoninePair p = make_variable_exponent_pair(ExponentFunction::affine(0.5, 0.2, 0.5), 0.5);
  const Mesh m = graded_mesh(300, 2.0, 0.5);
  CHECK(same_bits(convolve_pair(p.K, p.k, m, {}, Exec::serial).values, convolve_pair(p.K, p.k, m, {}, Exec::parallel).values));
  std::vector<double> phi(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) phi[j] = std::cos(m[j]);
  const SampledFunction f(m, phi);
  CHECK(same_bits(convolve_weakly_singular(p.K, f, m, Exec::serial).values,
                  convolve_weakly_singular(p.K, f, m, Exec::parallel).values));
}

TEST_CASE("convolve_pair rejects out-of-range exponents") {
  const Mesh m = graded_mesh(16, 2.0, 1.0);
  const SampledFunction flat(m, std::vector<double>(m.size(), 1.0));
  const KernelSpec K = KernelSpec::power(1.0, 0.5, 1.0);
  const KernelSpec bounded = KernelSpec::tabulated(flat);
  CHECK_THROWS_AS(convolve_weakly_singular(bounded, flat, m), DomainError);
  CHECK_NOTHROW(convolve_pair(K, K, m));
}

}  // TEST_SUITE
