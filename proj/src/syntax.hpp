#pragma once

// Shared lexical and type-expression machinery for the skeleton DSL and the
// type-expression parser.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fractal/skeleton.hpp"
#include "fractal/term.hpp"

namespace fractal::detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const noexcept { return pos_; }
  bool at_end();
  char peek();                 // after skipping whitespace; '\0' at end
  char peek_raw() const;       // without skipping whitespace
  bool consume(char c);
  bool consume_keyword(std::string_view kw);
  bool at_keyword(std::string_view kw);
  void expect(char c);
  std::string identifier();
  void advance() { ++pos_; }
  std::string_view rest() const { return text_.substr(pos_); }

  [[noreturn]] void fail(const std::string& expected);

 private:
  void skip_ws();

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct TypeExpr;

struct ArgExpr {
  enum class Kind { Wildcard, Extends, Super, Exact, Range };
  Kind kind = Kind::Wildcard;
  std::vector<TypeExpr> terms;  // 0, 1 or 2 (Range: lo, hi)
  std::size_t pos = 0;
};

struct TypeExpr {
  std::string name;
  std::size_t pos = 0;
  bool has_args = false;
  std::vector<ArgExpr> args;
};

bool is_keyword(std::string_view word);

TypeExpr parse_type_expr(Cursor& cursor);

// Class names referenced anywhere in the expression.
void collect_names(const TypeExpr& expr, std::vector<std::string>& out);

// Resolves against the table into a canonical, well-formed term.
TypeTerm resolve(const ClassTable& table, const TypeExpr& expr);

}  // namespace fractal::detail
