#pragma once

#include <span>
#include <string>
#include <vector>

#include "chtw/model.hpp"

namespace chtw {

/// Θ(x): 0 for x <= 0, 1 for x > 0. Throws Error(NonFiniteInput) for NaN/inf.
int heaviside(double x);

/// Per-cell excesses of a normal carrier: delta = m - h, delta_r = m - r, and
/// the partial firing Θ(delta)·Θ(delta_r).
struct FiringIntermediates {
  Field delta;
  Field delta_r;
  Field partial;
};

FiringIntermediates firing_intermediates(std::span<const double> m, std::span<const double> threshold,
                                         std::span<const double> rate);

/// Partial firing of one carrier into a T-brane. `rate` is only read for
/// normal carriers and may be empty otherwise. Throws Error(ShapeMismatch).
Field partial_firing(CarrierKind kind, std::span<const double> m, std::span<const double> threshold,
                     std::span<const double> rate);

struct FiringField {
  std::string tbrane;
  Field values;

  std::size_t firing_cells() const;
  bool operator==(const FiringField&) const = default;
};

/// Pointwise product of the partials; no partials fires everywhere.
FiringField integral_firing(const TBrane& tbrane, std::size_t cells, std::span<const Field> partials);

}  // namespace chtw
