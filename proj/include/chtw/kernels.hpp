#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops of the firing engine and the step update.
//
// Every variant performs the same IEEE operations per element in the same
// order (the library is built with -ffp-contract=off), so the SIMD tables are
// bit-identical to the scalar reference, not merely close. Firing outputs are
// 0.0 or 1.0 exactly.
namespace chtw::kernels {

enum class Isa { Scalar, Avx2 };

struct Table {
  Isa isa;
  std::string_view name;

  // out = Θ(m - threshold) · Θ(m - rate)
  void (*firing_normal)(std::span<const double> m, std::span<const double> threshold,
                        std::span<const double> rate, std::span<double> out);
  // out = Θ(-(m - threshold))
  void (*firing_blocking)(std::span<const double> m, std::span<const double> threshold,
                          std::span<double> out);
  // out = Θ(m - threshold)
  void (*firing_associative)(std::span<const double> m, std::span<const double> threshold,
                             std::span<double> out);
  // acc *= x
  void (*multiply_into)(std::span<double> acc, std::span<const double> x);
  // y -= a · d
  void (*subtract_product)(std::span<double> y, std::span<const double> a, std::span<const double> d);
  // y += a · d
  void (*add_product)(std::span<double> y, std::span<const double> a, std::span<const double> d);
  // y[c] += Σ_r kernel[r][c] · (d[r] · volume), rows with d[r] == 0 skipped.
  // kernel is row-major with d.size() rows and y.size() columns.
  void (*add_kernel_product)(std::span<double> y, std::span<const double> kernel, std::span<const double> d,
                             double volume);
};

const Table& scalar();

/// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const Table* avx2();

/// The table used by the engine. Defaults to the widest supported ISA; the
/// CHTW_ISA environment variable ("scalar" or "avx2") overrides it.
const Table& active();

/// Forces a table for the rest of the process. Returns false if unsupported.
bool select(Isa isa);

}  // namespace chtw::kernels
