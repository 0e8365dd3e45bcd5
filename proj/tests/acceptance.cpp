// Acceptance suite. `acceptance` runs every criterion; `acceptance --criterion N`
// runs one. Each criterion prints a single PASS/FAIL line and the process exits
// nonzero if any selected criterion failed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chtw/cli.hpp"
#include "chtw/dsl.hpp"
#include "chtw/dynamics.hpp"
#include "chtw/firing.hpp"
#include "chtw/kernels.hpp"
#include "chtw/matrix_view.hpp"
#include "support/models.hpp"
#include "support/oracle.hpp"
#include "support/random_system.hpp"

namespace fs = std::filesystem;
using namespace chtw;

namespace {

const fs::path kTests = CHTW_TEST_DATA;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<CHTWSystem> random_corpus(std::size_t count, std::uint64_t seed,
                                      const testing_support::RandomSystemOptions& options = {}) {
  std::mt19937_64 rng(seed);
  std::vector<CHTWSystem> corpus;
  while (corpus.size() < count) {
    auto s = random_system(rng, options);
    if (!has_errors(validate_system(s))) corpus.push_back(std::move(s));
  }
  return corpus;
}

double max_diff(const std::vector<Field>& a, const oracle::Marks& b) { return oracle::max_abs_difference(a, b); }

// 1 -------------------------------------------------------------------------

Outcome structure() {
  Outcome out;
  const BinaryMatrix expected_sh{{1, 0}, {0, 1}, {0, 1}, {0, 0}};
  const std::vector<std::pair<std::size_t, std::size_t>> w_nonzero{{0, 1}, {1, 0}, {3, 1}};  // (i,l) (j,p) (g,l)

  std::vector<std::pair<std::string, CHTWSystem>> cases{{"point", models::fig6_point()},
                                                        {"spatial", models::fig6_spatial()}};
  auto doc = dsl::parse_file(kTests / "models/fig6.chtw");
  if (!doc.ok()) {
    out.fail("fig6.chtw does not parse");
    return out;
  }
  cases.emplace_back("fig6.chtw", *doc.system);

  for (const auto& [name, system] : cases) {
    const auto sys = ValidatedSystem::from(system);
    const auto m = connectivity_matrices(sys);
    if (m.c_order != std::vector<std::string>{"i", "j", "q", "g"} || m.t_order != std::vector<std::string>{"p", "l"})
      out.fail(name + ": brane order");
    if (m.s_h != expected_sh) out.fail(name + ": S_H differs");

    const auto r = uptake_matrix(sys, 0);
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t t = 0; t < 2; ++t) {
        const bool want = expected_sh[c][t] == 1;
        const auto& e = r.entries[c][t];
        if (e.nonzero() != want) out.fail(name + fmt(": R_s[%zu][%zu] support", c, t));
        if (want) {
          const auto rate = field_at_step(system.tbranes()[t].rate, 0);
          if (*e.tbrane != t || !std::equal(e.rate.begin(), e.rate.end(), rate.begin(), rate.end()))
            out.fail(name + fmt(": R_s[%zu][%zu] is not r of column", c, t));
        }
      }
    if (name == "point") {
      const auto& e = r.entries;
      if (e[0][0].rate[0] != 2 || e[1][1].rate[0] != 1 || e[2][1].rate[0] != 1) out.fail("point: R_s values");
    }

    const auto wt = w_matrix(sys).transpose();  // [c][t]
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t t = 0; t < 2; ++t) {
        const bool want = std::find(w_nonzero.begin(), w_nonzero.end(), std::pair{c, t}) != w_nonzero.end();
        if (wt[c][t].has_value() != want) out.fail(name + fmt(": W^T[%zu][%zu] support", c, t));
      }
  }
  if (out.pass) out.detail = "S_H, R_s and W^T support match on point, spatial and DSL builds";
  return out;
}

// 2 -------------------------------------------------------------------------

Outcome fig6_dynamics() {
  Outcome out;
  std::vector<models::Fig6Parameters> sets{{}};
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.1, 6.0);
  for (int n = 0; n < 50; ++n) {
    models::Fig6Parameters p;
    p.m_i = u(rng), p.m_j = u(rng), p.m_q = u(rng), p.m_g = u(rng);
    p.r_p = u(rng) / 2, p.r_l = u(rng) / 2;
    p.h_ip = u(rng) / 3, p.h_jl = u(rng) / 3, p.h_ql = u(rng) / 3;
    p.w_pj = u(rng), p.w_li = u(rng), p.w_lg = u(rng);
    sets.push_back(p);
  }

  double worst = 0;
  std::size_t firings = 0;
  for (const auto& p : sets) {
    const auto sys = ValidatedSystem::from(models::fig6_point(p));
    auto state = initial_state(sys);
    double mi = p.m_i, mj = p.m_j, mq = p.m_q, mg = p.m_g;
    for (int k = 0; k < 5; ++k) {
      const double dp = (mi - p.h_ip > 0 && mi - p.r_p > 0) ? 1 : 0;
      const double dl = (mj - p.h_jl > 0 && mj - p.r_l > 0 && mq - p.h_ql > 0 && mq - p.r_l > 0) ? 1 : 0;
      firings += static_cast<std::size_t>(dp + dl);
      const double ni = mi - p.r_p * dp + p.w_li * dl;
      const double nj = mj - p.r_l * dl + p.w_pj * dp;
      const double nq = mq - p.r_l * dl;
      const double ng = mg + p.w_lg * dl;
      mi = ni, mj = nj, mq = nq, mg = ng;
      state = step(sys, state).first;
      const double got[4] = {state.marks[0][0], state.marks[1][0], state.marks[2][0], state.marks[3][0]};
      const double want[4] = {mi, mj, mq, mg};
      for (int c = 0; c < 4; ++c) worst = std::max(worst, std::abs(got[c] - want[c]));
    }
  }
  if (worst > 1e-9) out.fail(fmt("max deviation %.3g", worst));
  else out.detail = fmt("%zu parameter sets x 5 steps, %zu firings, max deviation %.3g", sets.size(), firings, worst);
  return out;
}

// 3, 4 ----------------------------------------------------------------------

Outcome oracle_equivalence() {
  Outcome out;
  const kernels::Isa previous = kernels::active().isa;
  const auto corpus = random_corpus(240, 3);
  double worst = 0;
  std::size_t cells = 0, fired = 0, cell_steps = 0;
  for (const kernels::Isa isa : {kernels::Isa::Scalar, kernels::Isa::Avx2}) {
    if (!kernels::select(isa)) continue;
    for (std::size_t n = 0; n < corpus.size(); ++n) {
      const auto sys = ValidatedSystem::from(corpus[n]);
      auto state = initial_state(sys);
      auto marks = oracle::initial(corpus[n]);
      for (std::uint64_t k = 0; k < 10; ++k) {
        const auto d_engine = compute_firing(sys, state, parameters_at(sys, k));
        const auto d_oracle = oracle::firing(corpus[n], marks, k);
        for (std::size_t t = 0; t < d_engine.size(); ++t) {
          if (d_engine[t].values != d_oracle[t]) out.fail(fmt("system %zu step %llu: firing differs", n, (unsigned long long)k));
          fired += d_engine[t].firing_cells();
          cell_steps += d_engine[t].values.size();
        }
        state = step(sys, state).first;
        marks = oracle::step(corpus[n], marks, k);
        const double diff = max_diff(state.marks, marks);
        worst = std::max(worst, diff);
        if (!(diff <= 1e-9)) out.fail(fmt("system %zu step %llu: deviation %.3g", n, (unsigned long long)k + 1, diff));
      }
      if (isa == kernels::Isa::Scalar)
        for (const auto& c : state.marks) cells += c.size();
    }
  }
  kernels::select(previous);
  if (out.pass)
    out.detail = fmt("%zu systems x 10 steps (%zu C-cells, %.0f%% of T-cells firing), max deviation %.3g, kernels: %s",
                     corpus.size(), cells, 100.0 * fired / std::max<std::size_t>(cell_steps, 1), worst,
                     kernels::avx2() ? "scalar+avx2" : "scalar");
  return out;
}

Outcome matrix_agreement() {
  Outcome out;
  const auto corpus = random_corpus(240, 3);
  double worst = 0;
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    const auto sys = ValidatedSystem::from(corpus[n]);
    auto direct = initial_state(sys);
    auto via_matrix = direct;
    for (int k = 0; k < 10; ++k) {
      // advance both from the same state so deviations cannot compound
      const auto a = step(sys, direct).first;
      const auto b = matrix_step(sys, direct);
      if (a.step != b.step) out.fail(fmt("system %zu: step counter", n));
      oracle::Marks bm(b.marks.begin(), b.marks.end());
      const double diff = max_diff(a.marks, bm);
      worst = std::max(worst, diff);
      if (!(diff <= 1e-9)) out.fail(fmt("system %zu step %d: deviation %.3g", n, k + 1, diff));
      via_matrix = matrix_step(sys, via_matrix);
      direct = a;
    }
    oracle::Marks vm(via_matrix.marks.begin(), via_matrix.marks.end());
    const double diff = max_diff(direct.marks, vm);
    worst = std::max(worst, diff);
    if (!(diff <= 1e-9)) out.fail(fmt("system %zu: 10-step trajectories deviate by %.3g", n, diff));
  }
  if (out.pass) out.detail = fmt("%zu systems x 10 steps, max deviation %.3g", corpus.size(), worst);
  return out;
}

// 5 -------------------------------------------------------------------------

struct Net {
  std::vector<long> marks;                      // per place
  std::vector<long> weight;                     // per transition: tokens taken from each input place
  std::vector<std::vector<std::size_t>> input;  // per transition, disjoint across transitions
  std::vector<std::vector<std::pair<std::size_t, long>>> output;  // per transition
};

Net random_net(std::mt19937_64& rng) {
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  Net net;
  const auto places = static_cast<std::size_t>(pick(1, 5));
  const auto transitions = static_cast<std::size_t>(pick(1, 4));
  for (std::size_t p = 0; p < places; ++p) net.marks.push_back(pick(0, 8));
  net.input.resize(transitions);
  net.output.resize(transitions);
  for (std::size_t t = 0; t < transitions; ++t) net.weight.push_back(pick(1, 3));
  // no place feeds two transitions, so maximal-parallel firing never conflicts
  for (std::size_t p = 0; p < places; ++p) {
    const long owner = pick(-1, static_cast<long>(transitions) - 1);
    if (owner >= 0) net.input[static_cast<std::size_t>(owner)].push_back(p);
  }
  for (std::size_t t = 0; t < transitions; ++t)
    for (std::size_t p = 0; p < places; ++p)
      if (pick(0, 2) == 0) net.output[t].emplace_back(p, pick(1, 3));
  return net;
}

CHTWSystem net_to_system(const Net& net) {
  CHTWSystem s;
  s.add_space({"pt", {}});
  for (std::size_t p = 0; p < net.marks.size(); ++p)
    s.add_cbrane({"P" + std::to_string(p), "pt", {static_cast<double>(net.marks[p])}});
  for (std::size_t t = 0; t < net.weight.size(); ++t) {
    const auto tid = "T" + std::to_string(t);
    const double r = static_cast<double>(net.weight[t]);
    s.add_tbrane({tid, "pt", ScheduledField::constant({r})});
    for (const auto p : net.input[t])
      s.add_hcarrier({"h" + std::to_string(t) + "_" + std::to_string(p), CarrierKind::Normal, "P" + std::to_string(p),
                      tid, ScheduledField::constant({r - 0.5})});
    for (const auto& [p, w] : net.output[t])
      s.add_wcarrier({"w" + std::to_string(t) + "_" + std::to_string(p), tid, "P" + std::to_string(p),
                      WMode::Pointwise, ScheduledField::constant({static_cast<double>(w)})});
  }
  return s;
}

// Reference token game: t is enabled when every input place holds at least
// weight(t) tokens; all enabled transitions fire together.
std::vector<long> token_game_step(const Net& net, const std::vector<long>& m, bool strict_enabling) {
  std::vector<long> next = m;
  for (std::size_t t = 0; t < net.weight.size(); ++t) {
    bool enabled = true;
    for (const auto p : net.input[t])
      enabled = enabled && (strict_enabling ? m[p] > net.weight[t] : m[p] >= net.weight[t]);
    if (!enabled) continue;
    for (const auto p : net.input[t]) next[p] -= net.weight[t];
    for (const auto& [p, w] : net.output[t]) next[p] += w;
  }
  return next;
}

Outcome petri_emulation() {
  Outcome out;
  std::mt19937_64 rng(5);
  const std::size_t nets = 200;
  std::size_t matched = 0, matched_strict = 0;
  std::string first_mismatch;
  for (std::size_t n = 0; n < nets; ++n) {
    const auto net = random_net(rng);
    const auto system = net_to_system(net);
    if (has_errors(validate_system(system))) {
      out.fail(fmt("net %zu does not validate", n));
      continue;
    }
    const auto sys = ValidatedSystem::from(system);
    auto state = initial_state(sys);
    auto classic = net.marks, strict = net.marks;
    bool same = true, same_strict = true;
    for (int k = 0; k < 20; ++k) {
      const auto before = classic;
      state = step(sys, state).first;
      classic = token_game_step(net, classic, false);
      strict = token_game_step(net, strict, true);
      for (std::size_t p = 0; p < classic.size(); ++p) {
        if (same && state.marks[p][0] != static_cast<double>(classic[p])) {
          same = false;
          if (first_mismatch.empty()) {
            std::string marks;
            for (const auto v : before) marks += std::to_string(v) + " ";
            first_mismatch = fmt("net %zu step %d: marks before [%s] place P%zu engine %g, token game %ld", n, k, marks.c_str(),
                                 p, state.marks[p][0], classic[p]);
          }
        }
        same_strict = same_strict && state.marks[p][0] == static_cast<double>(strict[p]);
      }
    }
    matched += same;
    matched_strict += same_strict;
  }
  const auto summary = fmt("%zu/%zu nets match the classical (m >= r) token game; %zu/%zu match a strict (m > r) game",
                           matched, nets, matched_strict, nets);
  if (matched != nets) out.fail(summary + "; first mismatch: " + first_mismatch +
                                ". Normal enabling also needs m - r > 0, so a place holding exactly r tokens never fires");
  else out.detail = summary;
  return out;
}

// 6 -------------------------------------------------------------------------

Outcome zero_row_rule() {
  Outcome out;
  testing_support::RandomSystemOptions options;
  options.require_passive = true;
  options.isolate_passive_sources = true;
  const auto corpus = random_corpus(200, 6, options);
  std::size_t passive_links = 0, checked_sources = 0;
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    const auto sys = ValidatedSystem::from(corpus[n]);
    std::vector<std::size_t> sources;
    for (std::uint64_t k : {0u, 3u, 9u}) {
      const auto r = uptake_matrix(sys, k);
      for (const auto& link : sys.hlinks()) {
        if (link.kind == CarrierKind::Normal) {
          if (!r.entries[link.cbrane][link.tbrane].nonzero()) out.fail(fmt("system %zu: normal link lost its rate", n));
          continue;
        }
        if (k == 0) {
          ++passive_links;
          sources.push_back(link.cbrane);
        }
        // a pair carries at most one carrier, so a passive link owns its entry
        if (r.entries[link.cbrane][link.tbrane].nonzero()) out.fail(fmt("system %zu: R_s entry of passive link", n));
      }
    }
    checked_sources += sources.size();
    auto state = initial_state(sys);
    const auto initial = state;
    for (int k = 0; k < 10; ++k) {
      state = step(sys, state).first;
      for (const auto c : sources)
        if (std::memcmp(state.marks[c].data(), initial.marks[c].data(), state.marks[c].size() * sizeof(double)) != 0)
          out.fail(fmt("system %zu: passive source changed at step %d", n, k + 1));
    }
    const auto matrix = matrix_step(sys, initial);
    for (const auto c : sources)
      if (matrix.marks[c] != initial.marks[c]) out.fail(fmt("system %zu: matrix_step moved passive source", n));
  }
  if (out.pass)
    out.detail = fmt("%zu systems, %zu blocking/associative links, sources unchanged over 10 steps", corpus.size(),
                     passive_links);
  (void)checked_sources;
  return out;
}

// 7 -------------------------------------------------------------------------

Outcome heaviside_boundary() {
  Outcome out;
  const kernels::Isa previous = kernels::active().isa;
  if (heaviside(0.0) != 0 || heaviside(-0.0) != 0 || heaviside(1e-300) != 1 || heaviside(-1e-300) != 0)
    out.fail("heaviside at 0");

  // One 1-D space with six cells; every carrier is evaluated cell by cell.
  const double h = 1.5, r = 0.5;
  const Field m{h, std::nextafter(h, 10.0), std::nextafter(h, -10.0), r, 7.25, 0.0};
  struct Case {
    CarrierKind kind;
    double threshold, rate;
    std::vector<double> want;
  };
  const std::vector<Case> cases{
      {CarrierKind::Normal, h, r, {0, 1, 0, 0, 1, 0}},       // m = h blocks; m = r < h also
      {CarrierKind::Normal, 0.25, r, {1, 1, 1, 0, 1, 0}},    // m = r exactly: delta = 0
      {CarrierKind::Blocking, h, r, {0, 0, 1, 1, 0, 1}},     // m = b exactly: blocked
      {CarrierKind::Associative, h, r, {0, 1, 0, 0, 1, 0}},  // m = h exactly: not enabled
  };
  std::size_t instances = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    CHTWSystem s;
    s.add_space({"X", {{"x", 0, 6, 6}}});
    s.add_cbrane({"C", "X", m});
    s.add_tbrane({"T", "X", ScheduledField::constant(Field(6, c.rate))});
    s.add_hcarrier({"h", c.kind, "C", "T", ScheduledField::constant(Field(6, c.threshold))});
    const auto sys = ValidatedSystem::from(s);
    const auto state = initial_state(sys);
    for (const kernels::Isa isa : {kernels::Isa::Scalar, kernels::Isa::Avx2}) {
      if (!kernels::select(isa)) continue;
      const auto d = compute_firing(sys, state, parameters_at(sys, 0));
      if (d[0].values != c.want) out.fail(fmt("case %zu (%s) firing differs", i, std::string(to_string(c.kind)).c_str()));
      const auto ref = oracle::firing(s, oracle::initial(s), 0);
      if (ref[0] != c.want) out.fail(fmt("case %zu oracle disagrees", i));
      const auto next = step(sys, state).first;
      for (std::size_t x = 0; x < 6; ++x) {
        const double expect = c.kind == CarrierKind::Normal ? m[x] - c.rate * c.want[x] : m[x];
        if (next.marks[0][x] != expect) out.fail(fmt("case %zu cell %zu mark after step", i, x));
      }
      instances += 6;
    }
  }
  kernels::select(previous);
  if (out.pass) out.detail = fmt("%zu boundary cell evaluations (m = h, m = r, m = b, one ulp either side)", instances);
  return out;
}

// 8 -------------------------------------------------------------------------

Outcome schedule_switch() {
  Outcome out;
  std::size_t runs = 0;
  for (std::uint64_t k0 = 1; k0 <= 12; ++k0) {
    CHTWSystem s;
    s.add_space({"X", {{"x", 0, 1, 3}, {"y", 0, 1, 2}}});
    s.add_cbrane({"C", "X", Field(6, 100.0)});
    s.add_cbrane({"D", "X", Field(6, 0.0)});
    s.add_tbrane({"T", "X", ScheduledField::constant(Field(6, 1.0))});
    s.add_hcarrier({"h", CarrierKind::Normal, "C", "T", {{{0, Field(6, 10.0)}, {k0, Field(6, 1000.0)}}}});
    s.add_wcarrier({"w", "T", "D", WMode::Pointwise, ScheduledField::constant(Field(6, 1.0))});
    if (has_errors(validate_system(s))) {
      out.fail("schedule system invalid");
      return out;
    }
    const auto sys = ValidatedSystem::from(s);
    auto state = initial_state(sys);
    auto marks = oracle::initial(s);
    for (std::uint64_t k = 0; k < 16; ++k) {
      const auto d = compute_firing(sys, state, parameters_at(sys, k))[0].values;
      const auto ref = oracle::firing(s, marks, k)[0];
      const Field want(6, k < k0 ? 1.0 : 0.0);
      if (d != want) out.fail(fmt("k0=%llu: engine firing wrong at k=%llu", (unsigned long long)k0, (unsigned long long)k));
      if (ref != want) out.fail(fmt("k0=%llu: oracle firing wrong at k=%llu", (unsigned long long)k0, (unsigned long long)k));
      state = step(sys, state).first;
      marks = oracle::step(s, marks, k);
      if (max_diff(state.marks, marks) > 1e-9) out.fail("marks deviate from oracle");
    }
    const double expected_c = 100.0 - static_cast<double>(k0);
    if (state.marks[0][0] != expected_c || state.marks[1][0] != static_cast<double>(k0))
      out.fail(fmt("k0=%llu: final marks", (unsigned long long)k0));
    ++runs;
  }
  if (out.pass) out.detail = fmt("switch step k0 = 1..%zu, 16 steps each, engine and oracle agree", runs);
  return out;
}

// 9 -------------------------------------------------------------------------

Outcome dsl_round_trip() {
  Outcome out;
  std::size_t models = 0, fixtures = 0, errors = 0;
  for (const auto& entry : fs::directory_iterator(kTests / "models")) {
    if (entry.path().extension() != ".chtw") continue;
    ++models;
    const auto name = entry.path().filename().string();
    const auto first = dsl::parse_file(entry.path());
    if (!first.ok()) {
      out.fail(name + " does not parse");
      continue;
    }
    const auto text = dsl::serialize(*first.system);
    const auto second = dsl::parse(text);
    if (!second.ok()) {
      out.fail(name + ": serialized form does not parse");
      continue;
    }
    if (!(*second.system == *first.system)) out.fail(name + ": round-trip changed the system");
    if (dsl::serialize(*second.system) != text) out.fail(name + ": serialization not stable");
  }
  for (const auto& entry : fs::directory_iterator(kTests / "fixtures/malformed")) {
    ++fixtures;
    const auto name = entry.path().filename().string();
    try {
      const auto doc = dsl::parse_file(entry.path());
      if (doc.ok() || doc.errors.empty()) out.fail(name + ": accepted");
      for (const auto& e : doc.errors) {
        ++errors;
        if (e.location.line == 0 || e.location.column == 0 || e.code.empty()) out.fail(name + ": unlocated error");
      }
    } catch (const std::exception& e) {
      out.fail(name + ": threw " + e.what());
    }
  }
  if (models < 10 || fixtures < 15) out.fail("gallery or fixture set incomplete");
  if (out.pass)
    out.detail = fmt("%zu gallery models round-trip; %zu malformed fixtures give %zu located errors", models, fixtures,
                     errors);
  return out;
}

// 10 ------------------------------------------------------------------------

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome out;
  const auto root = fs::temp_directory_path() / "chtw_acceptance_determinism";
  std::size_t compared = 0;
  for (const char* model : {"fig6.chtw", "diffusion2d.chtw", "nonstationary.chtw", "csv_fields.chtw", "blocking.chtw"}) {
    std::vector<std::pair<std::string, std::string>> outputs;
    for (int rep = 0; rep < 3; ++rep) {
      const auto dir = root / (std::string(model) + std::to_string(rep));
      fs::remove_all(dir);
      const auto command = std::string(CHTW_CLI_PATH) + " run " + (kTests / "models" / model).string() +
                           " --steps 25 --sample-every 3 --out " + dir.string() + " 2>/dev/null";
      if (std::system(command.c_str()) != 0) {
        out.fail(std::string(model) + ": run failed");
        break;
      }
      outputs.emplace_back(slurp(dir / "trace.csv"), slurp(dir / "summary.json"));
    }
    for (std::size_t i = 1; i < outputs.size(); ++i) {
      if (outputs[i].first != outputs[0].first) out.fail(std::string(model) + ": trace.csv differs");
      if (outputs[i].second != outputs[0].second) out.fail(std::string(model) + ": summary.json differs");
      ++compared;
    }
    if (!outputs.empty() && outputs[0].first.size() < 100) out.fail(std::string(model) + ": trace suspiciously small");
  }
  fs::remove_all(root);
  if (out.pass) out.detail = fmt("%zu repeated runs byte-identical across 5 models", compared);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"feedback example structure", structure},
      {"feedback example dynamics", fig6_dynamics},
      {"oracle equivalence", oracle_equivalence},
      {"matrix/direct agreement", matrix_agreement},
      {"classical Petri-net emulation", petri_emulation},
      {"zero-row rule", zero_row_rule},
      {"Heaviside boundary", heaviside_boundary},
      {"non-stationary schedules", schedule_switch},
      {"DSL round-trip", dsl_round_trip},
      {"determinism", determinism},
  };

  std::size_t only = 0;
  if (argc == 3 && std::string(argv[1]) == "--criterion") only = std::strtoul(argv[2], nullptr, 10);
  else if (argc != 1) {
    std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
    return 2;
  }
  if (only > criteria.size()) {
    std::fprintf(stderr, "no criterion %zu\n", only);
    return 2;
  }

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && only != i + 1) continue;
    Outcome result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] %2zu %s: %s\n", result.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, result.detail.c_str());
    failed += !result.pass;
  }
  return failed == 0 ? 0 : 1;
}
