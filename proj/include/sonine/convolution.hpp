#pragma once

#include <cstddef>

#include "sonine/exec.hpp"
#include "sonine/kernels.hpp"
#include "sonine/mesh.hpp"

namespace sonine {

/// Local sub-mesh used by convolve_pair on each half [0, t/2] and [t/2, t].
struct PairQuadrature {
  std::size_t panels = 256;  // per half
  double grading = 1.5;      // clustering toward the singular end of each half
};

/// (k * phi)(t_i), i = 1..N, by product weights on the leading singularity of
/// k, interpolating R(t_i - s) phi(s) linearly. phi must be regular (defined
/// at t_0); value at t_0 is 0. Throws DomainError for a mesh mismatch, an
/// undefined phi, or a kernel exponent outside (0,1).
SampledFunction convolve_weakly_singular(const KernelSpec& kernel, const SampledFunction& phi, const Mesh& mesh,
                                         Exec exec = Exec::parallel);

/// (k * u)(t_i) for u that may itself be weakly singular at 0
/// (u.sing_exponent > 0), using SingularRule.
SampledFunction convolve_sampled(const KernelSpec& kernel, const SampledFunction& u, Exec exec = Exec::parallel);

/// g(t_i) = (K * k)(t_i), i = 1..N, splitting at s = t_i / 2 so each half has
/// one singular factor. g(t_0) is left undefined (NaN).
SampledFunction convolve_pair(const KernelSpec& K, const KernelSpec& k, const Mesh& mesh,
                              const PairQuadrature& quad = {}, Exec exec = Exec::parallel);

/// (K * k)(t) at a single t in (0, b].
double convolve_pair_at(const KernelSpec& K, const KernelSpec& k, double t, const PairQuadrature& quad = {});

}  // namespace sonine
