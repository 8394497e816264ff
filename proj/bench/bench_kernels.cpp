// Serial vs OpenMP timings for the row-parallel kernels.
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <vector>

#include "sonine/convolution.hpp"
#include "sonine/sonine.hpp"
#include "sonine/volterra.hpp"

using namespace sonine;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void report(const char* name, std::size_t N, double serial, double parallel, bool same) {
  std::printf("%-22s %6zu %10.4f %10.4f %7.2fx %s\n", name, N, serial, parallel, serial / parallel,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> sizes{512, 1024, 2048};
  if (argc > 1) {
    sizes.clear();
    for (int i = 1; i < argc; ++i) sizes.push_back(std::strtoul(argv[i], nullptr, 10));
  }
  const int reps = 3;
  const double b = 0.5;
  const SoninePair pair = make_variable_exponent_pair(ExponentFunction::affine(0.5, 0.2, b), b);

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-22s %6s %10s %10s %8s\n", "kernel", "N", "serial[s]", "omp[s]", "speedup");
  for (std::size_t N : sizes) {
    const Mesh mesh = graded_mesh(N, 2.0, b);

    SampledFunction gs = convolve_pair(pair.K, pair.k, mesh, {}, Exec::serial), gp = gs;
    const double t1 = best_of(reps, [&] { gs = convolve_pair(pair.K, pair.k, mesh, {}, Exec::serial); });
    const double t2 = best_of(reps, [&] { gp = convolve_pair(pair.K, pair.k, mesh, {}, Exec::parallel); });
    report("convolve_pair", N, t1, t2, same_bits(gs.values, gp.values));

    SampledFunction ds = estimate_gprime(pair, mesh, 256, Exec::serial), dp = ds;
    const double t3 = best_of(reps, [&] { ds = estimate_gprime(pair, mesh, 256, Exec::serial); });
    const double t4 = best_of(reps, [&] { dp = estimate_gprime(pair, mesh, 256, Exec::parallel); });
    report("estimate_gprime", N, t3, t4, same_bits(ds.values, dp.values));

    GscOptions opts;
    const GscReport gsc = check_gsc(pair, mesh, opts);
    const SampledFunction F = assemble_rhs(pair.K, RhsSpec::polynomial({0.0, 1.0}), mesh);
    SampledFunction us = SecondKindSystem(gsc.gprime, F.sing_exponent, Exec::serial).solve(F), up = us;
    const double t5 = best_of(reps, [&] { us = SecondKindSystem(gsc.gprime, F.sing_exponent, Exec::serial).solve(F); });
    const double t6 = best_of(reps, [&] { up = SecondKindSystem(gsc.gprime, F.sing_exponent, Exec::parallel).solve(F); });
    report("second_kind_system", N, t5, t6, same_bits(us.values, up.values));
  }
  return 0;
}
