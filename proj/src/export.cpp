#include "chtw/export.hpp"

#include <cstdio>
#include <cstdlib>

#include "chtw/matrix_view.hpp"

namespace chtw {

std::string format_value(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

double round_value(double value) { return std::strtod(format_value(value).c_str(), nullptr); }

namespace {

bool point(const Grid& grid) { return grid.dimension() == 0; }

Json axes_json(const Space& space) {
  Json axes = Json::array();
  for (const auto& a : space.axes) {
    axes.push_back({{"name", a.name}, {"min", a.min}, {"max", a.max}, {"cells", a.cells}});
  }
  return axes;
}

}  // namespace

Json matrices_to_json(const ValidatedSystem& system) {
  const auto& s = system.system();
  const auto conn = connectivity_matrices(system);
  const auto r_s = uptake_matrix(system, 0);
  const auto w = w_matrix(system);

  Json out;
  out["c_order"] = conn.c_order;
  out["t_order"] = conn.t_order;
  out["step"] = 0;
  out["S_H"] = conn.s_h;
  out["S_W"] = conn.s_w;

  Json rs = Json::array();
  for (std::size_t c = 0; c < r_s.entries.size(); ++c) {
    Json row = Json::array();
    for (const auto& entry : r_s.entries[c]) {
      if (!entry.nonzero()) {
        row.push_back(0);
      } else if (point(system.tbrane_grid(*entry.tbrane))) {
        row.push_back(round_value(entry.rate.front()));
      } else {
        row.push_back({{"rate_of", s.tbranes()[*entry.tbrane].id}});
      }
    }
    rs.push_back(std::move(row));
  }
  out["R_s"] = std::move(rs);

  auto w_entry = [&](const std::optional<std::size_t>& carrier) -> Json {
    if (!carrier) return 0;
    const auto& link = system.wlinks()[*carrier];
    const auto& wc = s.wcarriers()[*carrier];
    const Grid& src = system.tbrane_grid(link.tbrane);
    if (point(src) && point(system.cbrane_grid(link.cbrane))) {
      // 1x1 kernel or single gain; source cell volume is 1.
      return round_value(field_at_step(wc.weights, 0).front());
    }
    return {{"carrier", wc.id}, {"mode", std::string(to_string(wc.mode))}};
  };
  Json wm = Json::array();
  for (const auto& row : w.entries) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(w_entry(e));
    wm.push_back(std::move(r));
  }
  Json wt = Json::array();
  for (const auto& row : w.transpose()) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(w_entry(e));
    wt.push_back(std::move(r));
  }
  out["W"] = std::move(wm);
  out["W_T"] = std::move(wt);
  return out;
}

void write_trace_csv(std::ostream& out, const ValidatedSystem& system, const Trace& trace) {
  const auto& cbranes = system.system().cbranes();
  out << "step,brane,cell_index,value\n";
  for (const auto& record : trace.records) {
    for (std::size_t c = 0; c < cbranes.size(); ++c) {
      const auto& mark = record.state.marks[c];
      for (std::size_t i = 0; i < mark.size(); ++i) {
        out << record.state.step << ',' << cbranes[c].id << ',' << i << ',' << format_value(mark[i]) << '\n';
      }
    }
  }
}

Json diagnostic_to_json(const Diagnostic& d) {
  return {{"severity", std::string(to_string(d.severity))},
          {"code", d.code},
          {"message", d.message},
          {"location", d.location}};
}

Json summary_to_json(const ValidatedSystem& system, const Trace& trace, const RunOptions& options) {
  const auto& s = system.system();
  Json out;
  out["steps"] = options.steps;
  out["sample_every"] = options.sample_every;
  out["strict"] = options.strict;
  out["aborted"] = trace.aborted;

  Json cbranes = Json::array();
  for (std::size_t c = 0; c < s.cbranes().size(); ++c) {
    const Grid& g = system.cbrane_grid(c);
    cbranes.push_back({{"id", s.cbranes()[c].id},
                       {"space", g.space().id},
                       {"cells", g.total_cells()},
                       {"axes", axes_json(g.space())}});
  }
  out["cbranes"] = std::move(cbranes);
  Json tbranes = Json::array();
  for (const auto& t : s.tbranes()) tbranes.push_back(t.id);
  out["tbranes"] = std::move(tbranes);

  Json records = Json::array();
  for (const auto& record : trace.records) {
    Json r;
    r["step"] = record.state.step;
    r["M"] = round_value(record.total);
    Json per_brane = Json::object();
    for (std::size_t c = 0; c < s.cbranes().size(); ++c) per_brane[s.cbranes()[c].id] = round_value(record.brane_totals[c]);
    r["brane_M"] = std::move(per_brane);
    if (record.report) {
      Json firing = Json::object();
      for (const auto& d : record.report->firing) firing[d.tbrane] = d.firing_cells();
      r["firing_cells"] = std::move(firing);
      Json consumed = Json::object();
      Json produced = Json::object();
      for (std::size_t c = 0; c < s.cbranes().size(); ++c) {
        consumed[s.cbranes()[c].id] = round_value(record.report->consumed[c]);
        produced[s.cbranes()[c].id] = round_value(record.report->produced[c]);
      }
      r["consumed"] = std::move(consumed);
      r["produced"] = std::move(produced);
    }
    records.push_back(std::move(r));
  }
  out["records"] = std::move(records);

  Json diagnostics = Json::array();
  for (const auto& d : trace.diagnostics) diagnostics.push_back(diagnostic_to_json(d));
  out["diagnostics"] = std::move(diagnostics);
  return out;
}

}  // namespace chtw
