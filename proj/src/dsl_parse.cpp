#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include "chtw/dsl.hpp"
#include "chtw/error.hpp"
#include "dsl_lexer.hpp"

namespace chtw::dsl {

namespace {

using detail::Token;
using detail::TokenKind;

struct ConstExpr {
  double value;
};
struct BoxExpr {
  double lo, hi;
  std::string axis;
  SourceLocation axis_location;
  double inside, outside;
};
struct CsvExpr {
  std::string path;
};
struct ValuesExpr {
  std::vector<double> values;
};
struct UniformExpr {
  double value;
};

using PlainExpr = std::variant<ConstExpr, BoxExpr, CsvExpr, ValuesExpr, UniformExpr>;

struct FieldLiteral {
  struct Entry {
    std::uint64_t step;
    PlainExpr expr;
    SourceLocation location;
  };
  std::vector<Entry> entries;
  bool scheduled = false;
  SourceLocation location;
};

// Thrown after a syntax error has been recorded; the parser resynchronizes
// at the next declaration.
struct SyntaxFailure {};

const std::set<std::string, std::less<>> kDeclarationKeywords{"space", "cbrane", "tbrane", "hcarrier", "wcarrier"};

class Parser {
 public:
  Parser(std::string_view text, std::filesystem::path base_dir)
      : tokens_(detail::lex(text)), base_dir_(std::move(base_dir)) {
    doc_.source = std::string(text);
  }

  ModelDocument run() {
    while (peek().kind != TokenKind::End) {
      const std::size_t start = pos_;
      try {
        declaration();
      } catch (const SyntaxFailure&) {
        recover(start);
      }
    }
    if (doc_.errors.empty()) doc_.system = std::move(system_);
    return std::move(doc_);
  }

 private:
  // -- token helpers --------------------------------------------------------

  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::End) ++pos_;
    return t;
  }

  void error(std::string code, std::string message, SourceLocation at) {
    doc_.errors.push_back({std::move(code), std::move(message), at});
  }

  [[noreturn]] void fail(const std::string& expected) {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    if (t.kind == TokenKind::Invalid && t.text == "unterminated string") found = "unterminated string";
    error("SYNTAX_ERROR", "expected " + expected + ", found " + found, t.location);
    throw SyntaxFailure{};
  }

  const Token& expect(TokenKind kind) {
    if (peek().kind != kind) fail(std::string(detail::describe(kind)));
    return take();
  }

  const Token& expect_keyword(std::string_view word) {
    if (peek().kind != TokenKind::Ident || peek().text != word) fail("'" + std::string(word) + "'");
    return take();
  }

  const Token& ident(const std::string& what) {
    if (peek().kind != TokenKind::Ident) fail(what);
    return take();
  }

  double number() {
    if (peek().kind != TokenKind::Number) fail("number");
    const Token& t = peek();
    std::string_view s = t.text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || end != s.data() + s.size()) {
      error("SYNTAX_ERROR", "malformed number '" + t.text + "'", t.location);
      throw SyntaxFailure{};
    }
    take();
    return value;
  }

  std::uint64_t integer(const std::string& what) {
    if (peek().kind != TokenKind::Number) fail(what);
    const Token& t = peek();
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || end != t.text.data() + t.text.size()) {
      error("SYNTAX_ERROR", "expected " + what + ", found '" + t.text + "'", t.location);
      throw SyntaxFailure{};
    }
    take();
    return value;
  }

  void recover(std::size_t start) {
    pos_ = start;
    take();
    int depth = 0;
    bool opened = false;
    for (;;) {
      const Token& t = peek();
      if (t.kind == TokenKind::End) return;
      if (depth == 0 && t.kind == TokenKind::Ident && kDeclarationKeywords.contains(t.text)) return;
      take();
      if (t.kind == TokenKind::LBrace) {
        ++depth;
        opened = true;
      } else if (t.kind == TokenKind::RBrace && depth > 0) {
        if (--depth == 0 && opened) {
          if (peek().kind == TokenKind::Semicolon) take();
          return;
        }
      }
    }
  }

  // -- declarations ---------------------------------------------------------

  void declaration() {
    const Token& keyword = peek();
    if (keyword.kind != TokenKind::Ident || !kDeclarationKeywords.contains(keyword.text)) {
      fail("declaration (space, cbrane, tbrane, hcarrier, wcarrier)");
    }
    const std::string kind = take().text;
    if (kind == "space") space();
    else if (kind == "cbrane") cbrane();
    else if (kind == "tbrane") tbrane();
    else if (kind == "hcarrier") hcarrier();
    else wcarrier();
    if (peek().kind == TokenKind::Semicolon) take();
  }

  // Returns false (after recording DUPLICATE_ID) when the id is taken.
  bool claim(const Token& id, const std::string& kind, std::set<std::string>& ids) {
    if (!ids.insert(id.text).second) {
      error("DUPLICATE_ID", kind + " id '" + id.text + "' is already declared", id.location);
      return false;
    }
    doc_.declarations[kind + " " + id.text] = id.location;
    return true;
  }

  void space() {
    const Token& id = ident("space id");
    Space space{id.text, {}};
    std::vector<SourceLocation> axis_locations;
    expect(TokenKind::LBrace);
    while (peek().kind != TokenKind::RBrace) {
      expect_keyword("axis");
      const Token& name = ident("axis name");
      Axis axis{name.text, 0.0, 0.0, 0};
      expect_keyword("min");
      axis.min = number();
      expect_keyword("max");
      axis.max = number();
      expect_keyword("cells");
      axis.cells = integer("positive cell count");
      expect(TokenKind::Semicolon);
      space.axes.push_back(std::move(axis));
      axis_locations.push_back(name.location);
    }
    take();
    if (!claim(id, "space", space_ids_)) return;
    try {
      grids_.emplace(space.id, build_grid(space));
    } catch (const Error& e) {
      SourceLocation at = id.location;
      for (std::size_t a = 0; a < space.axes.size(); ++a) {
        if (!(space.axes[a].max > space.axes[a].min) || space.axes[a].cells < 1) {
          at = axis_locations[a];
          break;
        }
      }
      error("INVALID_AXIS", e.what(), at);
      return;
    }
    system_.add_space(std::move(space));
  }

  const Grid* space_ref(const Token& ref) {
    auto it = grids_.find(ref.text);
    if (it != grids_.end()) return &it->second;
    if (space_ids_.contains(ref.text)) return nullptr;  // declared but invalid; already reported
    error("UNKNOWN_REFERENCE", "space '" + ref.text + "' is not declared", ref.location);
    return nullptr;
  }

  void cbrane() {
    const Token& id = ident("C-brane id");
    expect_keyword("on");
    const Token& space_token = ident("space id");
    expect(TokenKind::LBrace);
    expect_keyword("init");
    FieldLiteral init = field(false);
    expect(TokenKind::Semicolon);
    expect(TokenKind::RBrace);

    const bool fresh = claim(id, "cbrane", brane_ids_);
    const Grid* grid = space_ref(space_token);
    if (fresh) cbrane_spaces_[id.text] = space_token.text;
    if (!fresh || !grid) return;
    auto values = evaluate(init, *grid, nullptr, "init");
    if (!values) return;
    system_.add_cbrane({id.text, space_token.text, std::move(values->entries.front().values)});
  }

  void tbrane() {
    const Token& id = ident("T-brane id");
    expect_keyword("on");
    const Token& space_token = ident("space id");
    expect(TokenKind::LBrace);
    expect_keyword("rate");
    FieldLiteral rate = field(true);
    expect(TokenKind::Semicolon);
    expect(TokenKind::RBrace);

    const bool fresh = claim(id, "tbrane", brane_ids_);
    const Grid* grid = space_ref(space_token);
    if (fresh) tbrane_spaces_[id.text] = space_token.text;
    if (!fresh || !grid) return;
    auto values = evaluate(rate, *grid, nullptr, "rate");
    if (!values) return;
    system_.add_tbrane({id.text, space_token.text, std::move(*values)});
  }

  // Looks up the space of a previously declared brane; records
  // UNKNOWN_REFERENCE at the token otherwise.
  const std::string* brane_ref(const Token& ref, const std::map<std::string, std::string>& branes,
                               const std::string& kind) {
    auto it = branes.find(ref.text);
    if (it != branes.end()) return &it->second;
    error("UNKNOWN_REFERENCE", kind + " '" + ref.text + "' is not declared", ref.location);
    return nullptr;
  }

  void hcarrier() {
    const Token& id = ident("H-carrier id");
    const Token& source = ident("C-brane id");
    expect(TokenKind::Arrow);
    const Token& target = ident("T-brane id");
    expect(TokenKind::LBrace);
    CarrierKind kind = CarrierKind::Normal;
    std::optional<FieldLiteral> threshold;
    bool seen_kind = false;
    while (peek().kind != TokenKind::RBrace) {
      const Token& statement = ident("'kind' or 'threshold'");
      if (statement.text == "kind" && !seen_kind) {
        const Token& value = ident("normal, blocking or associative");
        if (value.text == "normal") kind = CarrierKind::Normal;
        else if (value.text == "blocking") kind = CarrierKind::Blocking;
        else if (value.text == "associative") kind = CarrierKind::Associative;
        else {
          --pos_;
          fail("normal, blocking or associative");
        }
        seen_kind = true;
      } else if (statement.text == "threshold" && !threshold) {
        threshold = field(true);
      } else {
        --pos_;
        fail(seen_kind ? "'threshold'" : "'kind' or 'threshold'");
      }
      expect(TokenKind::Semicolon);
    }
    const SourceLocation close = take().location;
    if (!threshold) {
      error("SYNTAX_ERROR", "H-carrier '" + id.text + "' needs a threshold", close);
      return;
    }

    const bool fresh = claim(id, "hcarrier", brane_ids_);
    const std::string* c_space = brane_ref(source, cbrane_spaces_, "C-brane");
    const std::string* t_space = brane_ref(target, tbrane_spaces_, "T-brane");
    if (!fresh || !c_space || !t_space) return;
    auto grid = grids_.find(*c_space);
    if (grid == grids_.end()) return;
    auto values = evaluate(*threshold, grid->second, nullptr, "threshold");
    if (!values) return;
    system_.add_hcarrier({id.text, kind, source.text, target.text, std::move(*values)});
  }

  void wcarrier() {
    const Token& id = ident("W-carrier id");
    const Token& source = ident("T-brane id");
    expect(TokenKind::Arrow);
    const Token& target = ident("C-brane id");
    expect(TokenKind::LBrace);
    std::optional<WMode> mode;
    std::optional<FieldLiteral> weights;
    bool weights_are_kernel = false;
    SourceLocation weights_location;
    while (peek().kind != TokenKind::RBrace) {
      const Token& statement = ident("'mode', 'gain' or 'kernel'");
      if (statement.text == "mode" && !mode) {
        const Token& value = ident("pointwise or kernel");
        if (value.text == "pointwise") mode = WMode::Pointwise;
        else if (value.text == "kernel") mode = WMode::Kernel;
        else {
          --pos_;
          fail("pointwise or kernel");
        }
      } else if ((statement.text == "gain" || statement.text == "kernel") && !weights) {
        weights_are_kernel = statement.text == "kernel";
        weights_location = statement.location;
        weights = weights_are_kernel ? kernel_field() : field(true);
      } else {
        --pos_;
        fail("'mode', 'gain' or 'kernel'");
      }
      expect(TokenKind::Semicolon);
    }
    const SourceLocation close = take().location;
    if (!mode) {
      error("SYNTAX_ERROR", "W-carrier '" + id.text + "' needs a mode", close);
      return;
    }
    if (!weights) {
      error("SYNTAX_ERROR", "W-carrier '" + id.text + "' needs a " +
                                (*mode == WMode::Kernel ? "kernel" : "gain"), close);
      return;
    }
    if (weights_are_kernel != (*mode == WMode::Kernel)) {
      error("SYNTAX_ERROR",
            *mode == WMode::Kernel ? "kernel mode takes 'kernel', not 'gain'" : "pointwise mode takes 'gain', not 'kernel'",
            weights_location);
      return;
    }

    const bool fresh = claim(id, "wcarrier", brane_ids_);
    const std::string* t_space = brane_ref(source, tbrane_spaces_, "T-brane");
    const std::string* c_space = brane_ref(target, cbrane_spaces_, "C-brane");
    if (!fresh || !t_space || !c_space) return;
    auto src = grids_.find(*t_space);
    auto dst = grids_.find(*c_space);
    if (src == grids_.end() || dst == grids_.end()) return;
    auto values = *mode == WMode::Pointwise ? evaluate(*weights, src->second, nullptr, "gain")
                                            : evaluate(*weights, src->second, &dst->second, "kernel");
    if (!values) return;
    system_.add_wcarrier({id.text, source.text, target.text, *mode, std::move(*values)});
  }

  // -- field literals -------------------------------------------------------

  PlainExpr plain_field() {
    const Token& head = ident("field literal (const, box, csv, values)");
    if (head.text == "const") return ConstExpr{number()};
    if (head.text == "values") return ValuesExpr{number_list()};
    if (head.text == "csv") return CsvExpr{expect(TokenKind::String).text};
    if (head.text == "box") {
      BoxExpr box{};
      expect(TokenKind::LBracket);
      box.lo = number();
      expect(TokenKind::Comma);
      box.hi = number();
      expect(TokenKind::RBracket);
      expect_keyword("axis");
      const Token& axis = ident("axis name");
      box.axis = axis.text;
      box.axis_location = axis.location;
      expect_keyword("inside");
      box.inside = number();
      expect_keyword("outside");
      box.outside = number();
      return box;
    }
    --pos_;
    fail("field literal (const, box, csv, values)");
  }

  PlainExpr plain_kernel() {
    const Token& head = ident("kernel literal (uniform, csv, values)");
    if (head.text == "uniform") return UniformExpr{number()};
    if (head.text == "values") return ValuesExpr{number_list()};
    if (head.text == "csv") return CsvExpr{expect(TokenKind::String).text};
    --pos_;
    fail("kernel literal (uniform, csv, values)");
  }

  std::vector<double> number_list() {
    std::vector<double> values;
    expect(TokenKind::LBracket);
    if (peek().kind != TokenKind::RBracket) {
      values.push_back(number());
      while (peek().kind == TokenKind::Comma) {
        take();
        values.push_back(number());
      }
    }
    expect(TokenKind::RBracket);
    return values;
  }

  template <class Plain>
  FieldLiteral scheduled_or_plain(bool allow_schedule, Plain plain) {
    FieldLiteral literal;
    literal.location = peek().location;
    if (peek().kind == TokenKind::Ident && peek().text == "schedule") {
      if (!allow_schedule) fail("field literal without schedule (initial marks are fixed at step 0)");
      take();
      literal.scheduled = true;
      expect(TokenKind::LBrace);
      do {
        if (!literal.entries.empty()) take();
        const SourceLocation at = peek().location;
        const std::uint64_t k = integer("nonnegative step");
        expect(TokenKind::Colon);
        literal.entries.push_back({k, (this->*plain)(), at});
      } while (peek().kind == TokenKind::Comma);
      expect(TokenKind::RBrace);
    } else {
      literal.entries.push_back({0, (this->*plain)(), literal.location});
    }
    return literal;
  }

  FieldLiteral field(bool allow_schedule) { return scheduled_or_plain(allow_schedule, &Parser::plain_field); }
  FieldLiteral kernel_field() { return scheduled_or_plain(true, &Parser::plain_kernel); }

  std::optional<Field> evaluate_plain(const PlainExpr& expr, SourceLocation at, const Grid& grid,
                                      const Grid* target, const std::string& what) {
    const std::size_t cells = target ? grid.total_cells() * target->total_cells() : grid.total_cells();
    return std::visit(
        [&](const auto& e) -> std::optional<Field> {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, ConstExpr> || std::is_same_v<T, UniformExpr>) {
            return Field(cells, e.value);
          } else if constexpr (std::is_same_v<T, ValuesExpr>) {
            if (e.values.size() != cells) {
              error("FIELD_SHAPE_MISMATCH",
                    what + " lists " + std::to_string(e.values.size()) + " values, grid needs " + std::to_string(cells),
                    at);
              return std::nullopt;
            }
            return e.values;
          } else if constexpr (std::is_same_v<T, CsvExpr>) {
            const auto path = base_dir_.empty() ? std::filesystem::path(e.path) : base_dir_ / e.path;
            try {
              return target ? load_kernel_csv(path, grid, *target) : load_field_csv(path, grid);
            } catch (const Error& err) {
              error(err.code() == ErrorCode::LengthMismatch ? "FIELD_SHAPE_MISMATCH" : "PARSE_ERROR", err.what(), at);
              return std::nullopt;
            }
          } else {
            std::size_t axis = grid.dimension();
            for (std::size_t a = 0; a < grid.dimension(); ++a) {
              if (grid.space().axes[a].name == e.axis) axis = a;
            }
            if (axis == grid.dimension()) {
              error("UNKNOWN_REFERENCE", "axis '" + e.axis + "' is not an axis of space '" + grid.space().id + "'",
                    e.axis_location);
              return std::nullopt;
            }
            Field out(cells);
            for (std::size_t i = 0; i < cells; ++i) {
              const double x = grid.cell_center(i)[axis];
              out[i] = (x >= e.lo && x <= e.hi) ? e.inside : e.outside;
            }
            return out;
          }
        },
        expr);
  }

  std::optional<ScheduledField> evaluate(const FieldLiteral& literal, const Grid& grid, const Grid* target,
                                         const std::string& what) {
    ScheduledField out;
    bool ok = true;
    for (std::size_t e = 0; e < literal.entries.size(); ++e) {
      const auto& entry = literal.entries[e];
      if (e == 0 && entry.step != 0) {
        error("INVALID_SCHEDULE", what + " schedule must start at step 0", entry.location);
        ok = false;
      } else if (e > 0 && entry.step <= literal.entries[e - 1].step) {
        error("INVALID_SCHEDULE", what + " schedule steps must strictly increase", entry.location);
        ok = false;
      }
      auto values = evaluate_plain(entry.expr, entry.location, grid, target, what);
      if (!values) {
        ok = false;
        continue;
      }
      out.entries.push_back({entry.step, std::move(*values)});
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::filesystem::path base_dir_;
  ModelDocument doc_;
  CHTWSystem system_;
  std::map<std::string, Grid> grids_;
  std::set<std::string> space_ids_;
  std::set<std::string> brane_ids_;  // branes and carriers share one namespace
  std::map<std::string, std::string> cbrane_spaces_;
  std::map<std::string, std::string> tbrane_spaces_;
};

}  // namespace

ModelDocument parse(std::string_view text, const std::filesystem::path& base_dir) {
  return Parser(text, base_dir).run();
}

ModelDocument parse_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read model file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.parent_path());
}

std::string locate(const ModelDocument& document, const std::string& location) {
  auto it = document.declarations.find(location);
  if (it == document.declarations.end()) return location;
  return std::to_string(it->second.line) + ":" + std::to_string(it->second.column);
}

}  // namespace chtw::dsl
