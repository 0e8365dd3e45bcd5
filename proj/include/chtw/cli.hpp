#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace chtw::cli {

// Process exit codes. No other values are returned.
inline constexpr int kOk = 0;
inline constexpr int kModelError = 1;
inline constexpr int kIoError = 2;
inline constexpr int kNegativeResource = 3;

struct RunCommand {
  std::uint64_t steps = 0;
  bool strict = false;
  std::uint64_t sample_every = 1;
  std::filesystem::path out_dir = ".";
};

// Diagnostics go to `err` as JSON lines.
int cmd_validate(const std::filesystem::path& model, std::ostream& err);
int cmd_run(const std::filesystem::path& model, const RunCommand& options, std::ostream& err);
// Writes to `out_file` when given, else to `out`.
int cmd_matrices(const std::filesystem::path& model, const std::optional<std::filesystem::path>& out_file,
                 std::ostream& out, std::ostream& err);
// Reads summary.json next to the trace for grid geometry.
int cmd_plotdata(const std::filesystem::path& trace, const std::string& brane, std::uint64_t step,
                 const std::optional<std::filesystem::path>& out_file, std::ostream& out, std::ostream& err);

}  // namespace chtw::cli
