#include "chtw/firing.hpp"

#include <algorithm>
#include <cmath>

#include "chtw/error.hpp"
#include "chtw/kernels.hpp"

namespace chtw {

namespace {

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + " has " + std::to_string(got) +
                                              " cells, expected " + std::to_string(want));
  }
}

}  // namespace

int heaviside(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFiniteInput, "heaviside of non-finite value");
  return x > 0.0 ? 1 : 0;
}

FiringIntermediates firing_intermediates(std::span<const double> m, std::span<const double> threshold,
                                         std::span<const double> rate) {
  require_size(threshold.size(), m.size(), "threshold");
  require_size(rate.size(), m.size(), "rate");
  FiringIntermediates out{Field(m.size()), Field(m.size()), Field(m.size())};
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.delta[i] = m[i] - threshold[i];
    out.delta_r[i] = m[i] - rate[i];
    out.partial[i] = static_cast<double>(heaviside(out.delta[i]) * heaviside(out.delta_r[i]));
  }
  return out;
}

Field partial_firing(CarrierKind kind, std::span<const double> m, std::span<const double> threshold,
                     std::span<const double> rate) {
  require_size(threshold.size(), m.size(), "threshold");
  Field out(m.size());
  const auto& k = kernels::active();
  switch (kind) {
    case CarrierKind::Normal:
      require_size(rate.size(), m.size(), "rate");
      k.firing_normal(m, threshold, rate, out);
      break;
    case CarrierKind::Blocking:
      k.firing_blocking(m, threshold, out);
      break;
    case CarrierKind::Associative:
      k.firing_associative(m, threshold, out);
      break;
  }
  return out;
}

std::size_t FiringField::firing_cells() const {
  return static_cast<std::size_t>(std::count(values.begin(), values.end(), 1.0));
}

FiringField integral_firing(const TBrane& tbrane, std::size_t cells, std::span<const Field> partials) {
  FiringField d{tbrane.id, Field(cells, 1.0)};
  const auto& k = kernels::active();
  for (const auto& partial : partials) {
    require_size(partial.size(), cells, "partial firing");
    k.multiply_into(d.values, partial);
  }
  return d;
}

}  // namespace chtw
