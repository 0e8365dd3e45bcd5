#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "chtw/dynamics.hpp"

namespace chtw {

using Json = nlohmann::ordered_json;

/// "%.12g" formatting used by every data file.
std::string format_value(double value);

/// Rounds to the value that format_value prints, so JSON numbers carry the
/// same 12 significant digits.
double round_value(double value);

/// Matrix export: brane orderings, S_H, S_W, R_s and W (with W^T). Zero
/// entries are 0; R_s entries are the scalar rate on point spaces and
/// {"rate_of": id} otherwise; W entries are the scalar gain on point spaces
/// and {"carrier": id, "mode": ...} otherwise. Parameters are taken at step 0.
Json matrices_to_json(const ValidatedSystem& system);

/// Rows "step,brane,cell_index,value" for every recorded state, C-branes in
/// declaration order, cells row-major.
void write_trace_csv(std::ostream& out, const ValidatedSystem& system, const Trace& trace);

Json summary_to_json(const ValidatedSystem& system, const Trace& trace, const RunOptions& options);

Json diagnostic_to_json(const Diagnostic& diagnostic);

}  // namespace chtw
