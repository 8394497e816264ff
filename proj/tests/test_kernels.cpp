#include <doctest.h>

#include <cmath>
#include <numbers>
#include <utility>

#include "oracle.hpp"
#include "sonine/error.hpp"
#include "sonine/gamma.hpp"
#include "sonine/kernels.hpp"

using namespace sonine;
using std::numbers::pi;

TEST_SUITE("kernels") {

TEST_CASE("gamma at reference points") {
  CHECK(sonine::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(oracle::rel_err(sonine::gamma(0.5), 1.7724538509055159) <= 1e-12);
  CHECK(oracle::rel_err(sonine::gamma(1.5), 0.8862269254527580) <= 1e-12);
  const std::pair<double, double> table[] = {
      {0.1, 9.5135076986687312858},    {2.5, 1.3293403881791370205},      {3.7, 4.1706517837966040301},
      {7.25, 1155.3810139199896872},   {20.5, 540624298233507504.47},     {33.3, 7.4875775965226323274e+35},
      {49.9, 4.1180110342530352191e+62}};
  for (auto [x, want] : table) {
    CAPTURE(x);
    CHECK(oracle::rel_err(sonine::gamma(x), want) <= 1e-12);
  }
}

TEST_CASE("gamma matches tgamma and the recurrence") {
  for (int k = 1; k <= 1000; ++k) {
    const double x = 50.0 * k / 1000.0;
    CAPTURE(x);
    REQUIRE(oracle::rel_err(sonine::gamma(x), std::tgamma(x)) <= 1e-12);
  }
  for (int k = 1; k <= 200; ++k) {
    const double x = 10.0 * k / 200.0;
    CAPTURE(x);
    REQUIRE(oracle::rel_err(sonine::gamma(x + 1.0), x * sonine::gamma(x)) <= 1e-11);
  }
}

TEST_CASE("gamma rejects bad arguments") {
  CHECK_THROWS_AS(sonine::gamma(0.0), DomainError);
  CHECK_THROWS_AS(sonine::gamma(-1.5), DomainError);
  CHECK_THROWS_AS(sonine::gamma(std::nan("")), DomainError);
  CHECK_THROWS_AS(sonine::gamma(INFINITY), DomainError);
}

TEST_CASE("beta function") {
  CHECK(oracle::rel_err(beta(2.0, 0.5), 4.0 / 3.0) <= 1e-13);
  CHECK(oracle::rel_err(beta(0.5, 0.5), pi) <= 1e-13);
}

TEST_CASE("kappa") {
  CHECK(oracle::rel_err(kappa(0.5), 3.141592653589793) <= 1e-12);
  CHECK(oracle::rel_err(kappa(0.25), 4.442882938158366) <= 1e-12);
  CHECK(oracle::rel_err(kappa(0.75), 4.442882938158366) <= 1e-12);
  for (int k = 1; k <= 9; ++k) {
    const double a = k / 10.0;
    CAPTURE(a);
    CHECK(kappa(a) == kappa(1.0 - a));
    CHECK(oracle::rel_err(kappa(a), pi / std::sin(pi * a)) <= 1e-12);
  }
  CHECK_THROWS_AS(kappa(0.0), DomainError);
  CHECK_THROWS_AS(kappa(1.0), DomainError);
}

TEST_CASE("classical Abel pair") {
  const SoninePair p = make_classical_abel_pair(0.5, 1.0);
  CHECK(p.is_classical);
  CHECK(p.k.kind() == KernelKind::classical_abel);
  CHECK(p.k(0.25) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(oracle::rel_err(p.K(0.25), 0.6366197723675814) <= 1e-14);
  for (double t : {1e-8, 1e-3, 0.1, 0.37, 1.0}) {
    CAPTURE(t);
    CHECK(oracle::rel_err(p.k(t) * std::pow(t, 0.5), 1.0) <= 1e-15);
    CHECK(oracle::rel_err(p.k(t) * p.K(t) * p.kappa, 1.0 / t) <= 1e-12);
  }
  const SoninePair q = make_classical_abel_pair(0.25, 2.0);
  CHECK(q.k.sing_exponent() == 0.25);
  CHECK(q.K.sing_exponent() == 0.75);
  CHECK(q.k.sing_exponent() + q.K.sing_exponent() == 1.0);
  CHECK(q.k.horizon() == q.K.horizon());
}

TEST_CASE("classical pair satisfies K*k = 1 by direct integration") {
  for (double a : {0.25, 0.5, 0.75}) {
    const SoninePair p = make_classical_abel_pair(a, 1.0);
    for (double t : {0.1, 0.6}) {
      const double g = oracle::convolve([&](double s, double r) { return p.K(r) * p.k(s); }, t);
      CAPTURE(a);
      CHECK(g == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("kernel evaluation domain") {
  const SoninePair p = make_classical_abel_pair(0.5, 1.0);
  CHECK_THROWS_AS(p.k(0.0), DomainError);
  CHECK_THROWS_AS(p.k(-0.1), DomainError);
  CHECK_THROWS_AS(p.k(1.5), DomainError);
  CHECK_THROWS_AS(make_classical_abel_pair(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(make_classical_abel_pair(0.5, 0.0), DomainError);
}

TEST_CASE("variable exponent pair") {
  const SoninePair p = make_variable_exponent_pair(ExponentFunction::affine(0.5, 0.2, 0.5), 0.5);
  CHECK_FALSE(p.is_classical);
  CHECK(p.k.kind() == KernelKind::variable_exponent_abel);
  CHECK(oracle::rel_err(p.k(0.25), 2.1435469250725863) <= 1e-14);
  CHECK(oracle::rel_err(p.K(0.25), 2.0 / pi) <= 1e-14);
  CHECK(p.k.sing_exponent() == doctest::Approx(0.6));
  CHECK(p.k.leading_exponent() == 0.5);
  CHECK(oracle::rel_err(p.kappa, pi) <= 1e-14);

  // t^sing k(t) stays bounded on a geometric sequence.
  for (int j = 1; j <= 40; ++j) {
    const double t = 0.5 * std::pow(0.5, j);
    CHECK(std::pow(t, p.k.sing_exponent()) * p.k(t) <= 1.0);
  }
}

TEST_CASE("constant exponent degenerates to the classical pair") {
  const SoninePair v = make_variable_exponent_pair(ExponentFunction::constant(0.5), 1.0);
  const SoninePair c = make_classical_abel_pair(0.5, 1.0);
  CHECK(v.is_classical);
  for (double t : {0.25, 0.5, 1.0, 1e-6}) {
    CAPTURE(t);
    CHECK(oracle::rel_err(v.k(t), c.k(t)) <= 1e-12);
    CHECK(oracle::rel_err(v.K(t), c.K(t)) <= 1e-12);
  }
}

TEST_CASE("exponent function validation") {
  CHECK_THROWS_AS(ExponentFunction::affine(0.9, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(ExponentFunction::constant(0.0), DomainError);
  ExponentFunction lying = ExponentFunction::affine(0.5, 0.2, 0.5);
  lying.alpha_hi = 0.55;
  CHECK_THROWS_AS(lying.verify(0.5), DomainError);
  ExponentFunction steep = ExponentFunction::affine(0.5, 0.2, 0.5);
  steep.lipschitz = 0.1;
  CHECK_THROWS_AS(steep.verify(0.5), DomainError);
  CHECK_NOTHROW(ExponentFunction::affine(0.5, 0.2, 0.5).verify(0.5));
}

TEST_CASE("make_pair recognizes structure") {
  const SoninePair v = make_variable_exponent_pair(ExponentFunction::affine(0.5, 0.2, 0.5), 0.5);
  const SoninePair again = make_pair(v.k, v.K);
  CHECK(again.exponent.has_value());
  CHECK_FALSE(again.is_classical);

  const SoninePair c = make_pair(KernelSpec::power(1.0, 0.25, 1.0), KernelSpec::power(1.0 / kappa(0.25), 0.75, 1.0));
  CHECK(c.is_classical);

  const SoninePair m = make_pair(KernelSpec::power(1.0, 0.5, 1.0), KernelSpec::power(1.0, 0.5, 1.0));
  CHECK_FALSE(m.is_classical);
  CHECK_FALSE(m.exponent.has_value());
  CHECK_THROWS_AS(make_pair(KernelSpec::power(1.0, 0.5, 1.0), KernelSpec::power(1.0, 0.5, 2.0)), DomainError);
}

}  // TEST_SUITE
