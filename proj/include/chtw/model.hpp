#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chtw/grid.hpp"

namespace chtw {

using Field = std::vector<double>;

struct ScheduleEntry {
  std::uint64_t start_step = 0;
  Field values;

  bool operator==(const ScheduleEntry&) const = default;
};

/// Piecewise-constant parameter field over steps. A single entry starting at
/// step 0 is a stationary parameter.
struct ScheduledField {
  std::vector<ScheduleEntry> entries;

  static ScheduledField constant(Field values) { return {{{0, std::move(values)}}}; }

  bool stationary() const noexcept { return entries.size() == 1; }
  bool operator==(const ScheduledField&) const = default;
};

/// Values of the entry with the greatest start_step <= k. Assumes the
/// schedule invariants hold (non-empty, first entry at 0, increasing).
std::span<const double> field_at_step(const ScheduledField& field, std::uint64_t k);

struct CBrane {
  std::string id;
  std::string space;
  Field initial;

  bool operator==(const CBrane&) const = default;
};

struct TBrane {
  std::string id;
  std::string space;
  ScheduledField rate;

  bool operator==(const TBrane&) const = default;
};

enum class CarrierKind { Normal, Blocking, Associative };

struct HCarrier {
  std::string id;
  CarrierKind kind = CarrierKind::Normal;
  std::string source;  // C-brane
  std::string target;  // T-brane
  ScheduledField threshold;

  bool operator==(const HCarrier&) const = default;
};

enum class WMode { Pointwise, Kernel };

/// Transformation carrier T -> C. In pointwise mode `weights` is a gain field
/// on the shared grid; in kernel mode it is a |source| x |target| row-major
/// matrix in target units per unit firing per unit source volume.
struct WCarrier {
  std::string id;
  std::string source;  // T-brane
  std::string target;  // C-brane
  WMode mode = WMode::Pointwise;
  ScheduledField weights;

  bool operator==(const WCarrier&) const = default;
};

/// The fivetuple (C, H, T, W, M) plus the registry of spaces. M is carried by
/// the initial fields of the C-branes. Containers keep declaration order,
/// which is the canonical brane order for matrices and exports.
class CHTWSystem {
 public:
  void add_space(Space space) { spaces_.push_back(std::move(space)); }
  void add_cbrane(CBrane brane) { cbranes_.push_back(std::move(brane)); }
  void add_tbrane(TBrane brane) { tbranes_.push_back(std::move(brane)); }
  void add_hcarrier(HCarrier carrier) { hcarriers_.push_back(std::move(carrier)); }
  void add_wcarrier(WCarrier carrier) { wcarriers_.push_back(std::move(carrier)); }

  const std::vector<Space>& spaces() const noexcept { return spaces_; }
  const std::vector<CBrane>& cbranes() const noexcept { return cbranes_; }
  const std::vector<TBrane>& tbranes() const noexcept { return tbranes_; }
  const std::vector<HCarrier>& hcarriers() const noexcept { return hcarriers_; }
  const std::vector<WCarrier>& wcarriers() const noexcept { return wcarriers_; }

  std::vector<CBrane>& mutable_cbranes() noexcept { return cbranes_; }
  std::vector<TBrane>& mutable_tbranes() noexcept { return tbranes_; }
  std::vector<HCarrier>& mutable_hcarriers() noexcept { return hcarriers_; }
  std::vector<WCarrier>& mutable_wcarriers() noexcept { return wcarriers_; }

  const Space* find_space(std::string_view id) const;
  const CBrane* find_cbrane(std::string_view id) const;
  const TBrane* find_tbrane(std::string_view id) const;
  std::optional<std::size_t> cbrane_index(std::string_view id) const;
  std::optional<std::size_t> tbrane_index(std::string_view id) const;

  bool empty() const noexcept {
    return spaces_.empty() && cbranes_.empty() && tbranes_.empty() && hcarriers_.empty() &&
           wcarriers_.empty();
  }

  bool operator==(const CHTWSystem&) const = default;

 private:
  std::vector<Space> spaces_;
  std::vector<CBrane> cbranes_;
  std::vector<TBrane> tbranes_;
  std::vector<HCarrier> hcarriers_;
  std::vector<WCarrier> wcarriers_;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::string location;

  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& diagnostics);

/// Structural checks: unique ids, resolvable endpoints, one shared space per
/// C -h-> T bundle (PROP3_VIOLATION), field and kernel shapes, schedule
/// ordering, finite and nonnegative parameters, nonnegative initial marks.
/// Never throws; every finding is returned.
Diagnostics validate_system(const CHTWSystem& system);

/// Volume-weighted integral of a mark over its grid.
double total_resource(std::span<const double> mark, const Grid& grid);

std::string_view to_string(CarrierKind kind) noexcept;
std::string_view to_string(WMode mode) noexcept;
std::string_view to_string(Severity severity) noexcept;

}  // namespace chtw
