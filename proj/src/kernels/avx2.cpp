#include "kernels_internal.hpp"

#if defined(CHTW_HAVE_AVX2)

#include <immintrin.h>

namespace chtw::kernels {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256d step(__m256d x) {
  const __m256d mask = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_GT_OQ);
  return _mm256_and_pd(mask, _mm256_set1_pd(1.0));
}

inline double step(double x) { return x > 0.0 ? 1.0 : 0.0; }

void firing_normal(std::span<const double> m, std::span<const double> threshold, std::span<const double> rate,
                   std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d mv = _mm256_loadu_pd(m.data() + i);
    const __m256d over_h = step(_mm256_sub_pd(mv, _mm256_loadu_pd(threshold.data() + i)));
    const __m256d over_r = step(_mm256_sub_pd(mv, _mm256_loadu_pd(rate.data() + i)));
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(over_h, over_r));
  }
  for (; i < n; ++i) out[i] = step(m[i] - threshold[i]) * step(m[i] - rate[i]);
}

void firing_blocking(std::span<const double> m, std::span<const double> threshold, std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d excess = _mm256_sub_pd(_mm256_loadu_pd(m.data() + i), _mm256_loadu_pd(threshold.data() + i));
    _mm256_storeu_pd(out.data() + i, step(_mm256_xor_pd(excess, sign)));
  }
  for (; i < n; ++i) out[i] = step(-(m[i] - threshold[i]));
}

void firing_associative(std::span<const double> m, std::span<const double> threshold, std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d excess = _mm256_sub_pd(_mm256_loadu_pd(m.data() + i), _mm256_loadu_pd(threshold.data() + i));
    _mm256_storeu_pd(out.data() + i, step(excess));
  }
  for (; i < n; ++i) out[i] = step(m[i] - threshold[i]);
}

void multiply_into(std::span<double> acc, std::span<const double> x) {
  const std::size_t n = acc.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(acc.data() + i, _mm256_mul_pd(_mm256_loadu_pd(acc.data() + i), _mm256_loadu_pd(x.data() + i)));
  }
  for (; i < n; ++i) acc[i] *= x[i];
}

void subtract_product(std::span<double> y, std::span<const double> a, std::span<const double> d) {
  const std::size_t n = y.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(d.data() + i));
    _mm256_storeu_pd(y.data() + i, _mm256_sub_pd(_mm256_loadu_pd(y.data() + i), prod));
  }
  for (; i < n; ++i) y[i] -= a[i] * d[i];
}

void add_product(std::span<double> y, std::span<const double> a, std::span<const double> d) {
  const std::size_t n = y.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(d.data() + i));
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(_mm256_loadu_pd(y.data() + i), prod));
  }
  for (; i < n; ++i) y[i] += a[i] * d[i];
}

void add_kernel_product(std::span<double> y, std::span<const double> kernel, std::span<const double> d,
                        double volume) {
  const std::size_t cols = y.size();
  for (std::size_t r = 0; r < d.size(); ++r) {
    if (d[r] == 0.0) continue;
    const double s = d[r] * volume;
    const __m256d sv = _mm256_set1_pd(s);
    const double* row = kernel.data() + r * cols;
    std::size_t c = 0;
    for (; c + kLanes <= cols; c += kLanes) {
      const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(row + c), sv);
      _mm256_storeu_pd(y.data() + c, _mm256_add_pd(_mm256_loadu_pd(y.data() + c), prod));
    }
    for (; c < cols; ++c) y[c] += row[c] * s;
  }
}

}  // namespace

namespace detail {

const Table* avx2_table() {
  static const Table table{Isa::Avx2,         "avx2",        firing_normal,    firing_blocking,
                           firing_associative, multiply_into, subtract_product, add_product,
                           add_kernel_product};
  return &table;
}

}  // namespace detail

}  // namespace chtw::kernels

#else

namespace chtw::kernels::detail {
const Table* avx2_table() { return nullptr; }
}  // namespace chtw::kernels::detail

#endif
