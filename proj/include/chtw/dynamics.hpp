#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chtw/firing.hpp"
#include "chtw/model.hpp"

namespace chtw {

/// A CHTWSystem that passed validate_system, with ids resolved to indices and
/// grids built. The only way to obtain one is `ValidatedSystem::from`, which
/// throws Error(UnvalidatedSystem) when validation reports errors.
class ValidatedSystem {
 public:
  struct HLink {
    std::size_t carrier;
    std::size_t cbrane;
    std::size_t tbrane;
    CarrierKind kind;
  };
  struct WLink {
    std::size_t carrier;
    std::size_t tbrane;
    std::size_t cbrane;
  };

  static ValidatedSystem from(CHTWSystem system);

  const CHTWSystem& system() const noexcept { return system_; }
  const Grid& cbrane_grid(std::size_t c) const { return grids_[cbrane_grid_[c]]; }
  const Grid& tbrane_grid(std::size_t t) const { return grids_[tbrane_grid_[t]]; }
  const Grid& grid(std::string_view space_id) const;

  std::span<const HLink> hlinks() const noexcept { return hlinks_; }
  std::span<const WLink> wlinks() const noexcept { return wlinks_; }
  /// Indices into hlinks() of the carriers entering T-brane t, in declaration order.
  std::span<const std::size_t> inputs_of(std::size_t t) const { return inputs_[t]; }

  std::size_t cbrane_count() const noexcept { return system_.cbranes().size(); }
  std::size_t tbrane_count() const noexcept { return system_.tbranes().size(); }

 private:
  explicit ValidatedSystem(CHTWSystem system);

  CHTWSystem system_;
  std::vector<Grid> grids_;
  std::vector<std::size_t> cbrane_grid_;
  std::vector<std::size_t> tbrane_grid_;
  std::vector<HLink> hlinks_;
  std::vector<WLink> wlinks_;
  std::vector<std::vector<std::size_t>> inputs_;
};

/// Parameter values used for one step, indexed like the system's carrier and
/// brane vectors. `parameters_at` resolves the schedules; callers may replace
/// any span with their own data to drive a step programmatically.
struct StepParameters {
  std::vector<std::span<const double>> thresholds;  // per H-carrier
  std::vector<std::span<const double>> rates;       // per T-brane
  std::vector<std::span<const double>> weights;     // per W-carrier
};

StepParameters parameters_at(const ValidatedSystem& system, std::uint64_t k);

struct SystemState {
  std::uint64_t step = 0;
  std::vector<Field> marks;  // one per C-brane, declaration order

  bool operator==(const SystemState&) const = default;
};

SystemState initial_state(const ValidatedSystem& system);

struct NegativeCell {
  std::size_t cbrane;
  std::size_t cell;
  double value;
};

struct StepReport {
  std::vector<FiringField> firing;  // per T-brane
  std::vector<double> consumed;     // per C-brane, volume-weighted
  std::vector<double> produced;     // per C-brane, volume-weighted
  std::vector<NegativeCell> negative;
  Diagnostics diagnostics;
};

/// Firing fields of every T-brane computed from `state` alone.
std::vector<FiringField> compute_firing(const ValidatedSystem& system, const SystemState& state,
                                        const StepParameters& params);

/// Contribution of a W-carrier to its target grid. Pointwise: gain·d.
/// Kernel: y = Σ_x kernel(x, y)·d(x)·source_cell_volume.
Field apply_w(const WCarrier& carrier, std::span<const double> d, std::span<const double> weights,
              const Grid& source, const Grid& target);
Field apply_w(const ValidatedSystem& system, std::size_t wcarrier, const FiringField& d, std::uint64_t k);

/// One synchronous step:
///   m_c(k+1) = m_c(k) - Σ_{normal c->p} r_p·d_p + Σ_{p->c} w(d_p)
/// Blocking and associative sources are never debited. Negative cells are
/// reported and left as computed.
std::pair<SystemState, StepReport> step(const ValidatedSystem& system, const SystemState& state);
std::pair<SystemState, StepReport> step(const ValidatedSystem& system, const SystemState& state,
                                        const StepParameters& params);

struct RunOptions {
  std::uint64_t steps = 0;
  bool strict = false;             // stop after the first step that leaves a negative cell
  std::uint64_t sample_every = 1;  // record states whose step is a multiple of this (and the last)
};

struct TraceRecord {
  SystemState state;
  std::vector<double> brane_totals;  // total_resource per C-brane
  double total = 0.0;                // integral resource M
  std::optional<StepReport> report;  // the step taken from this state, if any
};

struct Trace {
  std::vector<TraceRecord> records;
  Diagnostics diagnostics;  // every step's diagnostics, sampled or not
  bool aborted = false;     // strict run hit NEGATIVE_RESOURCE
};

/// Throws Error(InvalidArgument) for sample_every == 0.
Trace run(const ValidatedSystem& system, const RunOptions& options);

std::vector<double> brane_totals(const ValidatedSystem& system, const SystemState& state);

}  // namespace chtw
