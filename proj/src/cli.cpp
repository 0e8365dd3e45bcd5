#include "chtw/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "chtw/dsl.hpp"
#include "chtw/error.hpp"
#include "chtw/export.hpp"

namespace chtw::cli {

namespace {

void emit(std::ostream& err, const std::string& severity, const std::string& code, const std::string& message,
          const std::string& location) {
  err << Json{{"severity", severity}, {"code", code}, {"message", message}, {"location", location}}.dump() << '\n';
}

void emit(std::ostream& err, const Diagnostic& d) { err << diagnostic_to_json(d).dump() << '\n'; }

// Parses and validates; on failure prints diagnostics and sets `code`.
std::optional<ValidatedSystem> load(const std::filesystem::path& model, std::ostream& err, int& code) {
  dsl::ModelDocument doc;
  try {
    doc = dsl::parse_file(model);
  } catch (const Error& e) {
    emit(err, "error", "IO_ERROR", e.what(), model.string());
    code = kIoError;
    return std::nullopt;
  }
  for (const auto& e : doc.errors) {
    emit(err, "error", e.code, e.message,
         model.string() + ":" + std::to_string(e.location.line) + ":" + std::to_string(e.location.column));
  }
  if (!doc.ok()) {
    code = kModelError;
    return std::nullopt;
  }
  const Diagnostics diagnostics = validate_system(*doc.system);
  for (auto d : diagnostics) {
    d.location = model.string() + ":" + dsl::locate(doc, d.location);
    emit(err, d);
  }
  if (has_errors(diagnostics)) {
    code = kModelError;
    return std::nullopt;
  }
  code = kOk;
  return ValidatedSystem::from(std::move(*doc.system));
}

bool write_file(const std::filesystem::path& path, const std::string& content, std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) {
    emit(err, "error", "IO_ERROR", "cannot write '" + path.string() + "'", path.string());
    return false;
  }
  return true;
}

}  // namespace

int cmd_validate(const std::filesystem::path& model, std::ostream& err) {
  int code = kOk;
  load(model, err, code);
  return code;
}

int cmd_run(const std::filesystem::path& model, const RunCommand& options, std::ostream& err) {
  if (options.sample_every == 0) {
    emit(err, "error", "INVALID_ARGUMENT", "--sample-every must be at least 1", "");
    return kIoError;
  }
  int code = kOk;
  auto system = load(model, err, code);
  if (!system) return code;

  const RunOptions run_options{options.steps, options.strict, options.sample_every};
  const Trace trace = run(*system, run_options);
  for (const auto& d : trace.diagnostics) emit(err, d);

  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) {
    emit(err, "error", "IO_ERROR", "cannot create '" + options.out_dir.string() + "': " + ec.message(),
         options.out_dir.string());
    return kIoError;
  }
  std::ostringstream csv;
  write_trace_csv(csv, *system, trace);
  if (!write_file(options.out_dir / "trace.csv", csv.str(), err)) return kIoError;
  const std::string summary = summary_to_json(*system, trace, run_options).dump(2) + "\n";
  if (!write_file(options.out_dir / "summary.json", summary, err)) return kIoError;

  const bool negative = !trace.diagnostics.empty() &&
                        std::any_of(trace.diagnostics.begin(), trace.diagnostics.end(),
                                    [](const Diagnostic& d) { return d.code == "NEGATIVE_RESOURCE"; });
  return options.strict && negative ? kNegativeResource : kOk;
}

int cmd_matrices(const std::filesystem::path& model, const std::optional<std::filesystem::path>& out_file,
                 std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto system = load(model, err, code);
  if (!system) return code;
  const std::string text = matrices_to_json(*system).dump(2) + "\n";
  if (out_file) return write_file(*out_file, text, err) ? kOk : kIoError;
  out << text;
  return kOk;
}

namespace {

struct BraneGeometry {
  std::vector<Axis> axes;
  std::size_t cells = 1;
};

std::optional<Json> read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    return Json::parse(in);
  } catch (const Json::exception&) {
    return std::nullopt;
  }
}

}  // namespace

int cmd_plotdata(const std::filesystem::path& trace, const std::string& brane, std::uint64_t step,
                 const std::optional<std::filesystem::path>& out_file, std::ostream& out, std::ostream& err) {
  std::ifstream in(trace);
  if (!in) {
    emit(err, "error", "IO_ERROR", "cannot read trace '" + trace.string() + "'", trace.string());
    return kIoError;
  }
  const auto summary_path = trace.parent_path() / "summary.json";
  const auto summary = read_json(summary_path);
  if (!summary || !summary->contains("cbranes")) {
    emit(err, "error", "IO_ERROR", "cannot read grid geometry from '" + summary_path.string() + "'",
         summary_path.string());
    return kIoError;
  }

  std::optional<BraneGeometry> geometry;
  try {
    for (const auto& c : (*summary)["cbranes"]) {
      if (c.at("id").get<std::string>() != brane) continue;
      BraneGeometry g;
      for (const auto& a : c.at("axes")) {
        g.axes.push_back({a.at("name").get<std::string>(), a.at("min").get<double>(), a.at("max").get<double>(),
                          a.at("cells").get<std::size_t>()});
      }
      g.cells = c.at("cells").get<std::size_t>();
      geometry = std::move(g);
    }
  } catch (const Json::exception& e) {
    emit(err, "error", "IO_ERROR", std::string("malformed summary: ") + e.what(), summary_path.string());
    return kIoError;
  }
  if (!geometry) {
    emit(err, "error", "UNKNOWN_BRANE", "brane '" + brane + "' is not in the trace", trace.string());
    return kModelError;
  }

  std::map<std::size_t, std::string> values;
  std::string line;
  std::getline(in, line);  // header
  const std::string step_text = std::to_string(step);
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string s, b, cell, value;
    if (!std::getline(row, s, ',') || !std::getline(row, b, ',') || !std::getline(row, cell, ',') ||
        !std::getline(row, value)) {
      continue;
    }
    if (s == step_text && b == brane) values[std::stoull(cell)] = value;
  }
  if (values.empty()) {
    emit(err, "error", "UNKNOWN_STEP", "step " + step_text + " of brane '" + brane + "' is not in the trace",
         trace.string());
    return kModelError;
  }
  if (values.size() != geometry->cells) {
    emit(err, "error", "IO_ERROR", "trace has " + std::to_string(values.size()) + " cells for '" + brane +
                                       "', expected " + std::to_string(geometry->cells),
         trace.string());
    return kIoError;
  }

  const Grid grid(Space{brane, geometry->axes});
  std::ostringstream text;
  std::vector<std::size_t> previous;
  for (const auto& [index, value] : values) {
    const auto multi = grid.multi_index(index);
    // gnuplot scan lines: a blank line whenever any axis but the last advances.
    if (!previous.empty() && multi.size() >= 2 &&
        !std::equal(multi.begin(), multi.end() - 1, previous.begin())) {
      text << '\n';
    }
    previous = multi;
    for (double x : grid.cell_center(index)) text << format_value(x) << ' ';
    text << value << '\n';
  }
  if (out_file) {
    std::ofstream file(*out_file, std::ios::binary);
    file << text.str();
    if (!file) {
      emit(err, "error", "IO_ERROR", "cannot write '" + out_file->string() + "'", out_file->string());
      return kIoError;
    }
    return kOk;
  }
  out << text.str();
  return kOk;
}

}  // namespace chtw::cli
