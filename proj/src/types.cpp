#include "fractal/types.hpp"

#include <algorithm>

#include "fractal/error.hpp"
#include "fractal/subtyping.hpp"
#include "syntax.hpp"

namespace fractal {

TypeTerm parse_type(const ClassTable& table, std::string_view text) {
  detail::Cursor cursor(text);
  detail::TypeExpr expr = detail::parse_type_expr(cursor);
  if (!cursor.at_end()) cursor.fail("end of type expression");
  return detail::resolve(table, expr);
}

namespace {

void render_into(const ClassTable& table, const TypeTerm& term, Style style, std::string& out);

void render_arg(const ClassTable& table, const TypeParam& param, const Interval& iv, Style style,
                std::string& out) {
  auto range = [&] {
    out += '[';
    render_into(table, iv.lo, style, out);
    out += '-';
    render_into(table, iv.hi, style, out);
    out += ']';
  };
  if (style == Style::Interval) {
    range();
    return;
  }
  if (iv == param.bound()) {
    out += '?';
  } else if (iv.lo == iv.hi) {
    render_into(table, iv.lo, style, out);
  } else if (iv.lo == param.lower) {
    out += style == Style::Java ? "? extends " : "?x";
    render_into(table, iv.hi, style, out);
  } else if (iv.hi == param.upper) {
    out += style == Style::Java ? "? super " : "?s";
    render_into(table, iv.lo, style, out);
  } else {
    range();
  }
}

void render_into(const ClassTable& table, const TypeTerm& term, Style style, std::string& out) {
  out += term.head();
  if (term.is_ground()) return;
  const ClassDecl& decl = table.at(term.head());
  out += '<';
  const auto args = term.args();
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (k > 0) out += ", ";
    render_arg(table, decl.params.at(k), args[k], style, out);
  }
  out += '>';
}

}  // namespace

std::string render(const ClassTable& table, const TypeTerm& term, Style style) {
  std::string out;
  render_into(table, term, style, out);
  return out;
}

int rank(const ClassTable& table, const TypeTerm& term) {
  if (term.is_ground()) {
    table.at(term.head());
    return 0;
  }
  const ClassDecl& decl = table.at(term.head());
  if (decl.arity() != term.args().size()) {
    throw Error(ErrorKind::IllFormedTerm, "arity mismatch for '" + term.head() + "'");
  }
  int deepest = -1;
  const auto args = term.args();
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == decl.params[k].bound()) continue;
    deepest = std::max({deepest, rank(table, args[k].lo), rank(table, args[k].hi)});
  }
  return deepest + 1;
}

bool is_expressible(const ClassTable& table, const TypeTerm& term) {
  if (term.is_ground()) return !term.is_null();
  const ClassDecl& decl = table.at(term.head());
  const auto args = term.args();
  for (std::size_t k = 0; k < args.size(); ++k) {
    const TypeParam& p = decl.params.at(k);
    const Interval& iv = args[k];
    if (iv == p.bound()) continue;
    if (iv.lo == iv.hi || iv.lo == p.lower) {
      if (!is_expressible(table, iv.hi)) return false;
    } else if (iv.hi == p.upper) {
      if (!is_expressible(table, iv.lo)) return false;
    } else {
      return false;
    }
  }
  return true;
}

void check_well_formed(const ClassTable& table, const TypeTerm& term) {
  const ClassDecl& decl = table.at(term.head());
  if (decl.arity() != term.args().size()) {
    throw Error(ErrorKind::IllFormedTerm,
                "class '" + term.head() + "' takes " + std::to_string(decl.arity()) +
                    " type argument(s), got " + std::to_string(term.args().size()));
  }
  const auto args = term.args();
  for (std::size_t k = 0; k < args.size(); ++k) {
    check_well_formed(table, args[k].lo);
    check_well_formed(table, args[k].hi);
    if (!is_subtype(table, args[k].lo, args[k].hi)) {
      throw Error(ErrorKind::IllFormedTerm, "inverted interval in argument of '" + term.head() + "'");
    }
    if (!interval_contains(table, decl.params[k].bound(), args[k])) {
      throw Error(ErrorKind::IllFormedTerm, "argument outside bounds in '" + term.head() + "'");
    }
  }
}

const char* to_string(Style style) {
  switch (style) {
    case Style::Java: return "java";
    case Style::Short: return "short";
    case Style::Interval: return "interval";
  }
  return "java";
}

Style parse_style(std::string_view name) {
  if (name == "java") return Style::Java;
  if (name == "short") return Style::Short;
  if (name == "interval") return Style::Interval;
  throw Error(ErrorKind::UnknownFormat, "unknown rendering style '" + std::string(name) + "'");
}

}  // namespace fractal
