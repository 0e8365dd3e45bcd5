#include "chtw/dynamics.hpp"

#include <map>
#include <sstream>

#include "chtw/error.hpp"
#include "chtw/kernels.hpp"

namespace chtw {

ValidatedSystem ValidatedSystem::from(CHTWSystem system) {
  const Diagnostics diagnostics = validate_system(system);
  if (has_errors(diagnostics)) {
    std::ostringstream message;
    message << "system has validation errors:";
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::Error) message << " [" << d.code << " at " << d.location << "]";
    }
    throw Error(ErrorCode::UnvalidatedSystem, message.str());
  }
  return ValidatedSystem(std::move(system));
}

ValidatedSystem::ValidatedSystem(CHTWSystem system) : system_(std::move(system)) {
  std::map<std::string, std::size_t, std::less<>> by_space;
  for (const auto& space : system_.spaces()) {
    by_space.emplace(space.id, grids_.size());
    grids_.push_back(build_grid(space));
  }
  for (const auto& c : system_.cbranes()) cbrane_grid_.push_back(by_space.at(c.space));
  for (const auto& t : system_.tbranes()) tbrane_grid_.push_back(by_space.at(t.space));
  inputs_.resize(system_.tbranes().size());
  for (std::size_t h = 0; h < system_.hcarriers().size(); ++h) {
    const auto& carrier = system_.hcarriers()[h];
    const std::size_t t = *system_.tbrane_index(carrier.target);
    inputs_[t].push_back(hlinks_.size());
    hlinks_.push_back({h, *system_.cbrane_index(carrier.source), t, carrier.kind});
  }
  for (std::size_t w = 0; w < system_.wcarriers().size(); ++w) {
    const auto& carrier = system_.wcarriers()[w];
    wlinks_.push_back({w, *system_.tbrane_index(carrier.source), *system_.cbrane_index(carrier.target)});
  }
}

const Grid& ValidatedSystem::grid(std::string_view space_id) const {
  for (const auto& g : grids_) {
    if (g.space().id == space_id) return g;
  }
  throw Error(ErrorCode::InvalidArgument, "no space '" + std::string(space_id) + "'");
}

StepParameters parameters_at(const ValidatedSystem& system, std::uint64_t k) {
  StepParameters params;
  const auto& s = system.system();
  for (const auto& h : s.hcarriers()) params.thresholds.push_back(field_at_step(h.threshold, k));
  for (const auto& t : s.tbranes()) params.rates.push_back(field_at_step(t.rate, k));
  for (const auto& w : s.wcarriers()) params.weights.push_back(field_at_step(w.weights, k));
  return params;
}

SystemState initial_state(const ValidatedSystem& system) {
  SystemState state;
  for (const auto& c : system.system().cbranes()) state.marks.push_back(c.initial);
  return state;
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::ShapeMismatch, message);
}

void check_parameters(const ValidatedSystem& system, const StepParameters& params) {
  const auto& s = system.system();
  require(params.thresholds.size() == s.hcarriers().size(), "threshold count does not match H-carriers");
  require(params.rates.size() == s.tbranes().size(), "rate count does not match T-branes");
  require(params.weights.size() == s.wcarriers().size(), "weight count does not match W-carriers");
  for (const auto& link : system.hlinks()) {
    require(params.thresholds[link.carrier].size() == system.tbrane_grid(link.tbrane).total_cells(),
            "threshold of '" + s.hcarriers()[link.carrier].id + "' has the wrong length");
  }
  for (std::size_t t = 0; t < s.tbranes().size(); ++t) {
    require(params.rates[t].size() == system.tbrane_grid(t).total_cells(),
            "rate of '" + s.tbranes()[t].id + "' has the wrong length");
  }
  for (const auto& link : system.wlinks()) {
    const auto& carrier = s.wcarriers()[link.carrier];
    const std::size_t want = carrier.mode == WMode::Pointwise
                                 ? system.tbrane_grid(link.tbrane).total_cells()
                                 : system.tbrane_grid(link.tbrane).total_cells() *
                                       system.cbrane_grid(link.cbrane).total_cells();
    require(params.weights[link.carrier].size() == want, "weights of '" + carrier.id + "' have the wrong length");
  }
}

void check_state(const ValidatedSystem& system, const SystemState& state) {
  require(state.marks.size() == system.cbrane_count(), "state has the wrong number of marks");
  for (std::size_t c = 0; c < state.marks.size(); ++c) {
    require(state.marks[c].size() == system.cbrane_grid(c).total_cells(),
            "mark of '" + system.system().cbranes()[c].id + "' has the wrong length");
  }
}

double weighted_sum(std::span<const double> values, double volume) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * volume;
}

}  // namespace

std::vector<FiringField> compute_firing(const ValidatedSystem& system, const SystemState& state,
                                        const StepParameters& params) {
  const auto& k = kernels::active();
  std::vector<FiringField> firing;
  firing.reserve(system.tbrane_count());
  for (std::size_t t = 0; t < system.tbrane_count(); ++t) {
    const std::size_t cells = system.tbrane_grid(t).total_cells();
    FiringField d{system.system().tbranes()[t].id, Field(cells, 1.0)};
    Field partial(cells);
    for (std::size_t input : system.inputs_of(t)) {
      const auto& link = system.hlinks()[input];
      const auto& m = state.marks[link.cbrane];
      const auto threshold = params.thresholds[link.carrier];
      switch (link.kind) {
        case CarrierKind::Normal: k.firing_normal(m, threshold, params.rates[t], partial); break;
        case CarrierKind::Blocking: k.firing_blocking(m, threshold, partial); break;
        case CarrierKind::Associative: k.firing_associative(m, threshold, partial); break;
      }
      k.multiply_into(d.values, partial);
    }
    firing.push_back(std::move(d));
  }
  return firing;
}

Field apply_w(const WCarrier& carrier, std::span<const double> d, std::span<const double> weights,
              const Grid& source, const Grid& target) {
  require(d.size() == source.total_cells(), "firing field of '" + carrier.source + "' has the wrong length");
  Field out(target.total_cells(), 0.0);
  const auto& k = kernels::active();
  if (carrier.mode == WMode::Pointwise) {
    require(source == target, "pointwise W-carrier '" + carrier.id + "' needs identical spaces");
    require(weights.size() == d.size(), "gain of '" + carrier.id + "' has the wrong length");
    k.add_product(out, weights, d);
  } else {
    require(weights.size() == source.total_cells() * target.total_cells(),
            "kernel of '" + carrier.id + "' has the wrong shape");
    k.add_kernel_product(out, weights, d, source.cell_volume());
  }
  return out;
}

Field apply_w(const ValidatedSystem& system, std::size_t wcarrier, const FiringField& d, std::uint64_t k) {
  const auto& link = system.wlinks()[wcarrier];
  const auto& carrier = system.system().wcarriers()[wcarrier];
  return apply_w(carrier, d.values, field_at_step(carrier.weights, k), system.tbrane_grid(link.tbrane),
                 system.cbrane_grid(link.cbrane));
}

std::pair<SystemState, StepReport> step(const ValidatedSystem& system, const SystemState& state) {
  return step(system, state, parameters_at(system, state.step));
}

std::pair<SystemState, StepReport> step(const ValidatedSystem& system, const SystemState& state,
                                        const StepParameters& params) {
  check_state(system, state);
  check_parameters(system, params);
  const auto& k = kernels::active();
  const auto& s = system.system();

  StepReport report;
  report.firing = compute_firing(system, state, params);
  report.consumed.assign(system.cbrane_count(), 0.0);
  report.produced.assign(system.cbrane_count(), 0.0);

  SystemState next{state.step + 1, state.marks};

  Field scratch;
  for (const auto& link : system.hlinks()) {
    if (link.kind != CarrierKind::Normal) continue;
    const auto& d = report.firing[link.tbrane].values;
    const auto rate = params.rates[link.tbrane];
    k.subtract_product(next.marks[link.cbrane], rate, d);
    scratch.assign(d.size(), 0.0);
    k.add_product(scratch, rate, d);
    report.consumed[link.cbrane] += weighted_sum(scratch, system.cbrane_grid(link.cbrane).cell_volume());
  }
  for (const auto& link : system.wlinks()) {
    const Field contribution =
        apply_w(s.wcarriers()[link.carrier], report.firing[link.tbrane].values, params.weights[link.carrier],
                system.tbrane_grid(link.tbrane), system.cbrane_grid(link.cbrane));
    auto& mark = next.marks[link.cbrane];
    for (std::size_t i = 0; i < mark.size(); ++i) mark[i] += contribution[i];
    report.produced[link.cbrane] += weighted_sum(contribution, system.cbrane_grid(link.cbrane).cell_volume());
  }

  for (std::size_t c = 0; c < next.marks.size(); ++c) {
    const auto& mark = next.marks[c];
    for (std::size_t i = 0; i < mark.size(); ++i) {
      if (mark[i] < 0.0) {
        report.negative.push_back({c, i, mark[i]});
        std::ostringstream message;
        message.precision(12);
        message << "mark of '" << s.cbranes()[c].id << "' is " << mark[i] << " at cell " << i << " after step "
                << state.step;
        report.diagnostics.push_back({Severity::Warning, "NEGATIVE_RESOURCE", message.str(),
                                      "cbrane " + s.cbranes()[c].id + " cell " + std::to_string(i) +
                                          " step " + std::to_string(next.step)});
      }
    }
  }
  return {std::move(next), std::move(report)};
}

std::vector<double> brane_totals(const ValidatedSystem& system, const SystemState& state) {
  std::vector<double> totals;
  totals.reserve(state.marks.size());
  for (std::size_t c = 0; c < state.marks.size(); ++c) {
    totals.push_back(total_resource(state.marks[c], system.cbrane_grid(c)));
  }
  return totals;
}

Trace run(const ValidatedSystem& system, const RunOptions& options) {
  if (options.sample_every == 0) throw Error(ErrorCode::InvalidArgument, "sample_every must be at least 1");
  Trace trace;
  auto record = [&](SystemState state, std::optional<StepReport> report) {
    TraceRecord r{std::move(state), {}, 0.0, std::move(report)};
    r.brane_totals = brane_totals(system, r.state);
    for (double v : r.brane_totals) r.total += v;
    trace.records.push_back(std::move(r));
  };

  SystemState current = initial_state(system);
  for (std::uint64_t k = 0; k < options.steps; ++k) {
    auto [next, report] = step(system, current);
    trace.diagnostics.insert(trace.diagnostics.end(), report.diagnostics.begin(), report.diagnostics.end());
    const bool negative = !report.negative.empty();
    if (current.step % options.sample_every == 0) record(std::move(current), std::move(report));
    current = std::move(next);
    if (negative && options.strict) {
      trace.aborted = true;
      break;
    }
  }
  record(std::move(current), std::nullopt);
  return trace;
}

}  // namespace chtw
