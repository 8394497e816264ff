#pragma once

#include <cstddef>

namespace sonine {

/// How row-independent kernels are scheduled. Both policies produce
/// bit-identical results: each row is summed in a fixed order by one thread.
enum class Exec { serial, parallel };

template <class Fn>
void for_each_row(Exec exec, std::size_t begin, std::size_t end, Fn&& fn) {
  const auto b = static_cast<long long>(begin);
  const auto e = static_cast<long long>(end);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = b; i < e; ++i) fn(static_cast<std::size_t>(i));
  } else {
    for (long long i = b; i < e; ++i) fn(static_cast<std::size_t>(i));
  }
}

/// Compensated (Kahan) accumulator.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace sonine
