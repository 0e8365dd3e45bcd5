#include "chtw/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "chtw/error.hpp"

namespace chtw {

std::span<const double> field_at_step(const ScheduledField& field, std::uint64_t k) {
  auto it = std::upper_bound(field.entries.begin(), field.entries.end(), k,
                             [](std::uint64_t step, const ScheduleEntry& e) { return step < e.start_step; });
  if (it == field.entries.begin()) {
    throw Error(ErrorCode::ShapeMismatch, "schedule has no entry at or before step " + std::to_string(k));
  }
  return std::prev(it)->values;
}

const Space* CHTWSystem::find_space(std::string_view id) const {
  auto it = std::find_if(spaces_.begin(), spaces_.end(), [&](const Space& s) { return s.id == id; });
  return it == spaces_.end() ? nullptr : &*it;
}

const CBrane* CHTWSystem::find_cbrane(std::string_view id) const {
  auto index = cbrane_index(id);
  return index ? &cbranes_[*index] : nullptr;
}

const TBrane* CHTWSystem::find_tbrane(std::string_view id) const {
  auto index = tbrane_index(id);
  return index ? &tbranes_[*index] : nullptr;
}

std::optional<std::size_t> CHTWSystem::cbrane_index(std::string_view id) const {
  for (std::size_t i = 0; i < cbranes_.size(); ++i) {
    if (cbranes_[i].id == id) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> CHTWSystem::tbrane_index(std::string_view id) const {
  for (std::size_t i = 0; i < tbranes_.size(); ++i) {
    if (tbranes_[i].id == id) return i;
  }
  return std::nullopt;
}

bool has_errors(const Diagnostics& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

double total_resource(std::span<const double> mark, const Grid& grid) {
  double sum = 0.0;
  for (double v : mark) sum += v;
  return sum * grid.cell_volume();
}

std::string_view to_string(CarrierKind kind) noexcept {
  switch (kind) {
    case CarrierKind::Normal: return "normal";
    case CarrierKind::Blocking: return "blocking";
    case CarrierKind::Associative: return "associative";
  }
  return "normal";
}

std::string_view to_string(WMode mode) noexcept {
  return mode == WMode::Kernel ? "kernel" : "pointwise";
}

std::string_view to_string(Severity severity) noexcept {
  return severity == Severity::Error ? "error" : "warning";
}

namespace {

class Validator {
 public:
  explicit Validator(const CHTWSystem& system) : system_(system) {}

  Diagnostics run() {
    check_spaces();
    check_ids();
    for (const auto& c : system_.cbranes()) check_cbrane(c);
    for (const auto& t : system_.tbranes()) check_tbrane(t);
    for (const auto& h : system_.hcarriers()) check_hcarrier(h);
    for (const auto& w : system_.wcarriers()) check_wcarrier(w);
    check_duplicate_pairs();
    return std::move(out_);
  }

 private:
  void error(std::string code, std::string message, std::string location) {
    out_.push_back({Severity::Error, std::move(code), std::move(message), std::move(location)});
  }

  void check_spaces() {
    for (const auto& space : system_.spaces()) {
      try {
        grids_.emplace(space.id, build_grid(space));
      } catch (const Error& e) {
        error("INVALID_AXIS", e.what(), "space " + space.id);
      }
    }
  }

  void check_ids() {
    auto unique = [this](const auto& items, std::string_view kind) {
      std::set<std::string> seen;
      for (const auto& item : items) {
        if (!seen.insert(item.id).second) {
          error("DUPLICATE_ID", std::string(kind) + " id '" + item.id + "' declared more than once",
                std::string(kind) + " " + item.id);
        }
      }
    };
    unique(system_.spaces(), "space");
    // Branes and carriers share one namespace so matrix exports stay unambiguous.
    std::set<std::string> seen;
    auto shared = [&](const auto& items, std::string_view kind) {
      for (const auto& item : items) {
        if (!seen.insert(item.id).second) {
          error("DUPLICATE_ID", "id '" + item.id + "' declared more than once",
                std::string(kind) + " " + item.id);
        }
      }
    };
    shared(system_.cbranes(), "cbrane");
    shared(system_.tbranes(), "tbrane");
    shared(system_.hcarriers(), "hcarrier");
    shared(system_.wcarriers(), "wcarrier");
  }

  const Grid* grid_of(const std::string& space_id, const std::string& location) {
    auto it = grids_.find(space_id);
    if (it != grids_.end()) return &it->second;
    if (!system_.find_space(space_id)) {
      error("UNKNOWN_REFERENCE", "space '" + space_id + "' is not declared", location);
    }
    return nullptr;
  }

  void check_values(std::span<const double> values, std::size_t expected, bool nonnegative,
                    const std::string& what, const std::string& location) {
    if (values.size() != expected) {
      error("FIELD_SHAPE_MISMATCH",
            what + " has " + std::to_string(values.size()) + " values, expected " + std::to_string(expected),
            location);
      return;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i])) {
        error("NON_FINITE_VALUE", what + " is not finite at cell " + std::to_string(i), location);
        return;
      }
      if (nonnegative && values[i] < 0.0) {
        error("NEGATIVE_PARAMETER", what + " is negative at cell " + std::to_string(i), location);
        return;
      }
    }
  }

  void check_schedule(const ScheduledField& field, std::size_t expected, const std::string& what,
                      const std::string& location) {
    if (field.entries.empty() || field.entries.front().start_step != 0) {
      error("INVALID_SCHEDULE", what + " schedule must start at step 0", location);
    }
    for (std::size_t e = 1; e < field.entries.size(); ++e) {
      if (field.entries[e].start_step <= field.entries[e - 1].start_step) {
        error("INVALID_SCHEDULE", what + " schedule steps must strictly increase", location);
        break;
      }
    }
    for (const auto& entry : field.entries) {
      check_values(entry.values, expected, true, what, location);
    }
  }

  void check_cbrane(const CBrane& c) {
    const std::string loc = "cbrane " + c.id;
    const Grid* grid = grid_of(c.space, loc);
    if (!grid) return;
    if (c.initial.size() != grid->total_cells()) {
      check_values(c.initial, grid->total_cells(), false, "initial mark", loc);
      return;
    }
    for (std::size_t i = 0; i < c.initial.size(); ++i) {
      if (!std::isfinite(c.initial[i])) {
        error("NON_FINITE_VALUE", "initial mark is not finite at cell " + std::to_string(i), loc);
        return;
      }
      if (c.initial[i] < 0.0) {
        error("NEGATIVE_INITIAL_MARK", "initial mark is negative at cell " + std::to_string(i), loc);
        return;
      }
    }
  }

  void check_tbrane(const TBrane& t) {
    const std::string loc = "tbrane " + t.id;
    if (const Grid* grid = grid_of(t.space, loc)) {
      check_schedule(t.rate, grid->total_cells(), "rate", loc);
    }
  }

  void check_hcarrier(const HCarrier& h) {
    const std::string loc = "hcarrier " + h.id;
    const CBrane* source = system_.find_cbrane(h.source);
    const TBrane* target = system_.find_tbrane(h.target);
    if (!source) error("UNKNOWN_REFERENCE", "source C-brane '" + h.source + "' is not declared", loc);
    if (!target) error("UNKNOWN_REFERENCE", "target T-brane '" + h.target + "' is not declared", loc);
    if (!source || !target) return;
    if (source->space != target->space) {
      error("PROP3_VIOLATION",
            "C-brane '" + source->id + "' on space '" + source->space + "' and T-brane '" + target->id +
                "' on space '" + target->space + "' must share one space",
            loc);
    }
    auto it = grids_.find(source->space);
    if (it != grids_.end()) check_schedule(h.threshold, it->second.total_cells(), "threshold", loc);
  }

  void check_wcarrier(const WCarrier& w) {
    const std::string loc = "wcarrier " + w.id;
    const TBrane* source = system_.find_tbrane(w.source);
    const CBrane* target = system_.find_cbrane(w.target);
    if (!source) error("UNKNOWN_REFERENCE", "source T-brane '" + w.source + "' is not declared", loc);
    if (!target) error("UNKNOWN_REFERENCE", "target C-brane '" + w.target + "' is not declared", loc);
    if (!source || !target) return;
    auto src = grids_.find(source->space);
    auto dst = grids_.find(target->space);
    if (src == grids_.end() || dst == grids_.end()) return;
    if (w.mode == WMode::Pointwise) {
      if (source->space != target->space) {
        error("POINTWISE_SPACE_MISMATCH",
              "pointwise W-carrier needs identical spaces, got '" + source->space + "' and '" + target->space +
                  "'",
              loc);
        return;
      }
      check_schedule(w.weights, src->second.total_cells(), "gain", loc);
    } else {
      check_schedule(w.weights, src->second.total_cells() * dst->second.total_cells(), "kernel", loc);
    }
  }

  void check_duplicate_pairs() {
    std::set<std::pair<std::string, std::string>> h_pairs;
    for (const auto& h : system_.hcarriers()) {
      if (!h_pairs.emplace(h.source, h.target).second) {
        error("DUPLICATE_CARRIER", "more than one H-carrier runs " + h.source + " -> " + h.target,
              "hcarrier " + h.id);
      }
    }
    std::set<std::pair<std::string, std::string>> w_pairs;
    for (const auto& w : system_.wcarriers()) {
      if (!w_pairs.emplace(w.source, w.target).second) {
        error("DUPLICATE_CARRIER", "more than one W-carrier runs " + w.source + " -> " + w.target,
              "wcarrier " + w.id);
      }
    }
  }

  const CHTWSystem& system_;
  std::map<std::string, Grid> grids_;
  Diagnostics out_;
};

}  // namespace

Diagnostics validate_system(const CHTWSystem& system) { return Validator(system).run(); }

}  // namespace chtw
