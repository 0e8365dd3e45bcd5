#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chtw/model.hpp"

namespace chtw::dsl {

struct SourceLocation {
  std::size_t line = 0;  // 1-based
  std::size_t column = 0;

  bool operator==(const SourceLocation&) const = default;
};

struct ParseError {
  std::string code;  // SYNTAX_ERROR, UNKNOWN_REFERENCE, DUPLICATE_ID, FIELD_SHAPE_MISMATCH, ...
  std::string message;
  SourceLocation location;
};

/// Result of parsing a `.chtw` text. `system` is present only when `errors`
/// is empty. `declarations` maps "<kind> <id>" (the location strings used by
/// validate_system) to the position of the declared id.
struct ModelDocument {
  std::string source;
  std::optional<CHTWSystem> system;
  std::vector<ParseError> errors;
  std::map<std::string, SourceLocation> declarations;

  bool ok() const noexcept { return errors.empty() && system.has_value(); }
};

/// CSV paths inside the text resolve against `base_dir`.
ModelDocument parse(std::string_view text, const std::filesystem::path& base_dir = {});

/// Throws Error(ParseError) when the file cannot be read.
ModelDocument parse_file(const std::filesystem::path& path);

/// Canonical text: spaces, C-branes, T-branes, H-carriers, W-carriers, each
/// in declaration order; uniform fields as `const`, everything else inline.
std::string serialize(const CHTWSystem& system);

/// Reads a field in row-major order; values may be one per line or
/// comma-separated rows. Throws Error(LengthMismatch) or Error(ParseError).
Field load_field_csv(const std::filesystem::path& path, const Grid& grid);

/// Reads |source| rows of |target| comma-separated values.
Field load_kernel_csv(const std::filesystem::path& path, const Grid& source, const Grid& target);

/// Formats "line:col" for a validate_system location, or returns it as-is
/// when the declaration is unknown to the document.
std::string locate(const ModelDocument& document, const std::string& location);

}  // namespace chtw::dsl
