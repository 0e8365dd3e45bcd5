#include "chtw/matrix_view.hpp"

namespace chtw {

ConnectivityMatrices connectivity_matrices(const ValidatedSystem& system) {
  const auto& s = system.system();
  ConnectivityMatrices out;
  for (const auto& c : s.cbranes()) out.c_order.push_back(c.id);
  for (const auto& t : s.tbranes()) out.t_order.push_back(t.id);
  out.s_h.assign(s.cbranes().size(), std::vector<int>(s.tbranes().size(), 0));
  out.s_w.assign(s.tbranes().size(), std::vector<int>(s.cbranes().size(), 0));
  for (const auto& link : system.hlinks()) out.s_h[link.cbrane][link.tbrane] = 1;
  for (const auto& link : system.wlinks()) out.s_w[link.tbrane][link.cbrane] = 1;
  return out;
}

UptakeMatrix uptake_matrix(const ValidatedSystem& system, std::uint64_t k) {
  const auto& s = system.system();
  UptakeMatrix out;
  out.step = k;
  out.entries.assign(s.cbranes().size(), std::vector<UptakeEntry>(s.tbranes().size()));
  for (const auto& link : system.hlinks()) {
    if (link.kind != CarrierKind::Normal) continue;
    out.entries[link.cbrane][link.tbrane] = {link.tbrane, field_at_step(s.tbranes()[link.tbrane].rate, k)};
  }
  return out;
}

std::vector<std::vector<std::optional<std::size_t>>> WMatrix::transpose() const {
  const std::size_t rows = entries.size();
  const std::size_t cols = rows ? entries.front().size() : 0;
  std::vector<std::vector<std::optional<std::size_t>>> out(cols, std::vector<std::optional<std::size_t>>(rows));
  for (std::size_t t = 0; t < rows; ++t) {
    for (std::size_t c = 0; c < cols; ++c) out[c][t] = entries[t][c];
  }
  return out;
}

WMatrix w_matrix(const ValidatedSystem& system) {
  WMatrix out;
  out.entries.assign(system.tbrane_count(), std::vector<std::optional<std::size_t>>(system.cbrane_count()));
  for (const auto& link : system.wlinks()) out.entries[link.tbrane][link.cbrane] = link.carrier;
  return out;
}

SystemState matrix_step(const ValidatedSystem& system, const SystemState& state) {
  const auto params = parameters_at(system, state.step);
  const auto d = compute_firing(system, state, params);
  const UptakeMatrix r_s = uptake_matrix(system, state.step);
  const auto w_t = w_matrix(system).transpose();

  SystemState next{state.step + 1, state.marks};
  for (std::size_t c = 0; c < system.cbrane_count(); ++c) {
    auto& mark = next.marks[c];
    for (std::size_t t = 0; t < system.tbrane_count(); ++t) {
      const auto& d_t = d[t].values;
      if (const auto& entry = r_s.entries[c][t]; entry.nonzero()) {
        for (std::size_t i = 0; i < mark.size(); ++i) mark[i] -= entry.rate[i] * d_t[i];
      }
      if (const auto& w = w_t[c][t]) {
        const Field produced = apply_w(system, *w, d[t], state.step);
        for (std::size_t i = 0; i < mark.size(); ++i) mark[i] += produced[i];
      }
    }
  }
  return next;
}

}  // namespace chtw
