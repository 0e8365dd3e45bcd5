#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "chtw/dsl.hpp"

namespace chtw::dsl {

namespace {

// Shortest representation that reads back to the same double.
std::string number(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

bool uniform(const Field& values) {
  return !values.empty() && std::all_of(values.begin(), values.end(), [&](double v) {
           return std::signbit(v) == std::signbit(values.front()) && v == values.front();
         });
}

std::string values_literal(const Field& values) {
  std::string out = "values [";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += number(values[i]);
  }
  return out + "]";
}

std::string plain(const Field& values, bool kernel) {
  if (uniform(values)) return (kernel ? "uniform " : "const ") + number(values.front());
  return values_literal(values);
}

std::string scheduled(const ScheduledField& field, bool kernel) {
  if (field.entries.size() == 1 && field.entries.front().start_step == 0) {
    return plain(field.entries.front().values, kernel);
  }
  std::string out = "schedule { ";
  for (std::size_t e = 0; e < field.entries.size(); ++e) {
    if (e) out += ", ";
    out += std::to_string(field.entries[e].start_step) + ": " + plain(field.entries[e].values, kernel);
  }
  return out + " }";
}

}  // namespace

std::string serialize(const CHTWSystem& system) {
  std::ostringstream out;
  for (const auto& space : system.spaces()) {
    out << "space " << space.id << " {";
    if (space.axes.empty()) {
      out << "}\n";
      continue;
    }
    out << "\n";
    for (const auto& axis : space.axes) {
      out << "  axis " << axis.name << " min " << number(axis.min) << " max " << number(axis.max) << " cells "
          << axis.cells << ";\n";
    }
    out << "}\n";
  }
  for (const auto& c : system.cbranes()) {
    out << "cbrane " << c.id << " on " << c.space << " {\n  init " << plain(c.initial, false) << ";\n}\n";
  }
  for (const auto& t : system.tbranes()) {
    out << "tbrane " << t.id << " on " << t.space << " {\n  rate " << scheduled(t.rate, false) << ";\n}\n";
  }
  for (const auto& h : system.hcarriers()) {
    out << "hcarrier " << h.id << " " << h.source << " -> " << h.target << " {\n  kind " << to_string(h.kind)
        << ";\n  threshold " << scheduled(h.threshold, false) << ";\n}\n";
  }
  for (const auto& w : system.wcarriers()) {
    const bool kernel = w.mode == WMode::Kernel;
    out << "wcarrier " << w.id << " " << w.source << " -> " << w.target << " {\n  mode " << to_string(w.mode)
        << ";\n  " << (kernel ? "kernel " : "gain ") << scheduled(w.weights, kernel) << ";\n}\n";
  }
  return out.str();
}

}  // namespace chtw::dsl
