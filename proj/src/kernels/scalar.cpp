#include "kernels_internal.hpp"

namespace chtw::kernels {

namespace {

inline double step(double x) { return x > 0.0 ? 1.0 : 0.0; }

void firing_normal(std::span<const double> m, std::span<const double> threshold, std::span<const double> rate,
                   std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = step(m[i] - threshold[i]) * step(m[i] - rate[i]);
  }
}

void firing_blocking(std::span<const double> m, std::span<const double> threshold, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = step(-(m[i] - threshold[i]));
}

void firing_associative(std::span<const double> m, std::span<const double> threshold, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = step(m[i] - threshold[i]);
}

void multiply_into(std::span<double> acc, std::span<const double> x) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] *= x[i];
}

void subtract_product(std::span<double> y, std::span<const double> a, std::span<const double> d) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= a[i] * d[i];
}

void add_product(std::span<double> y, std::span<const double> a, std::span<const double> d) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a[i] * d[i];
}

void add_kernel_product(std::span<double> y, std::span<const double> kernel, std::span<const double> d,
                        double volume) {
  const std::size_t cols = y.size();
  for (std::size_t r = 0; r < d.size(); ++r) {
    if (d[r] == 0.0) continue;
    const double s = d[r] * volume;
    const double* row = kernel.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) y[c] += row[c] * s;
  }
}

}  // namespace

const Table& scalar() {
  static const Table table{Isa::Scalar,      "scalar",     firing_normal,    firing_blocking,
                           firing_associative, multiply_into, subtract_product, add_product,
                           add_kernel_product};
  return table;
}

}  // namespace chtw::kernels
