#include "syntax.hpp"

#include <cctype>

#include "fractal/error.hpp"
#include "fractal/subtyping.hpp"

namespace fractal::detail {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string describe(std::string_view rest) {
  if (rest.empty()) return "end of input";
  std::size_t n = 1;
  if (ident_char(rest[0])) {
    while (n < rest.size() && ident_char(rest[n])) ++n;
  }
  return "'" + std::string(rest.substr(0, n)) + "'";
}

}  // namespace

void Cursor::skip_ws() {
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos_;
    } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
      while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    } else {
      break;
    }
  }
}

bool Cursor::at_end() {
  skip_ws();
  return pos_ >= text_.size();
}

char Cursor::peek() {
  skip_ws();
  return pos_ < text_.size() ? text_[pos_] : '\0';
}

char Cursor::peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

bool Cursor::consume(char c) {
  if (peek() != c) return false;
  ++pos_;
  return true;
}

bool Cursor::at_keyword(std::string_view kw) {
  skip_ws();
  if (text_.substr(pos_, kw.size()) != kw) return false;
  std::size_t end = pos_ + kw.size();
  return end >= text_.size() || !ident_char(text_[end]);
}

bool Cursor::consume_keyword(std::string_view kw) {
  if (!at_keyword(kw)) return false;
  pos_ += kw.size();
  return true;
}

void Cursor::expect(char c) {
  if (!consume(c)) fail(std::string("'") + c + "'");
}

std::string Cursor::identifier() {
  skip_ws();
  if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("identifier");
  std::size_t start = pos_;
  while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
  return std::string(text_.substr(start, pos_ - start));
}

void Cursor::fail(const std::string& expected) {
  skip_ws();
  throw Error(ErrorKind::Syntax,
              "expected " + expected + " at offset " + std::to_string(pos_) + ", found " +
                  describe(text_.substr(pos_)),
              pos_);
}

bool is_keyword(std::string_view word) {
  return word == "class" || word == "extends" || word == "super";
}

namespace {

ArgExpr parse_arg(Cursor& cursor) {
  ArgExpr arg;
  arg.pos = [&] {
    cursor.peek();
    return cursor.pos();
  }();
  if (cursor.consume('?')) {
    // Short forms `?xT` / `?sT` must follow the `?` immediately. `?super T`
    // (keyword then whitespace) is still the long form.
    std::string_view rest = cursor.rest();
    bool long_super = rest.starts_with("super") && rest.size() > 5 &&
                      std::isspace(static_cast<unsigned char>(rest[5]));
    bool long_extends = rest.starts_with("extends") &&
                        (rest.size() == 7 || !ident_char(rest[7]));
    char c = cursor.peek_raw();
    if (!long_super && !long_extends && (c == 'x' || c == 's')) {
      cursor.advance();
      arg.kind = c == 'x' ? ArgExpr::Kind::Extends : ArgExpr::Kind::Super;
      arg.terms.push_back(parse_type_expr(cursor));
    } else if (cursor.consume_keyword("extends")) {
      arg.kind = ArgExpr::Kind::Extends;
      arg.terms.push_back(parse_type_expr(cursor));
    } else if (cursor.consume_keyword("super")) {
      arg.kind = ArgExpr::Kind::Super;
      arg.terms.push_back(parse_type_expr(cursor));
    } else {
      arg.kind = ArgExpr::Kind::Wildcard;
    }
    return arg;
  }
  if (cursor.consume('[')) {
    arg.kind = ArgExpr::Kind::Range;
    arg.terms.push_back(parse_type_expr(cursor));
    cursor.expect('-');
    arg.terms.push_back(parse_type_expr(cursor));
    cursor.expect(']');
    return arg;
  }
  arg.kind = ArgExpr::Kind::Exact;
  arg.terms.push_back(parse_type_expr(cursor));
  return arg;
}

}  // namespace

TypeExpr parse_type_expr(Cursor& cursor) {
  TypeExpr expr;
  cursor.peek();
  expr.pos = cursor.pos();
  expr.name = cursor.identifier();
  if (is_keyword(expr.name)) {
    throw Error(ErrorKind::Syntax,
                "expected class name at offset " + std::to_string(expr.pos) + ", found '" +
                    expr.name + "'",
                expr.pos);
  }
  if (cursor.consume('<')) {
    expr.has_args = true;
    do {
      expr.args.push_back(parse_arg(cursor));
    } while (cursor.consume(','));
    cursor.expect('>');
  }
  return expr;
}

void collect_names(const TypeExpr& expr, std::vector<std::string>& out) {
  out.push_back(expr.name);
  for (const auto& arg : expr.args) {
    for (const auto& t : arg.terms) collect_names(t, out);
  }
}

TypeTerm resolve(const ClassTable& table, const TypeExpr& expr) {
  const ClassDecl* decl = table.find(expr.name);
  if (decl == nullptr) {
    throw Error(ErrorKind::UnknownClass, "unknown class '" + expr.name + "'", expr.pos);
  }
  if (!expr.has_args) {
    if (decl->is_generic()) {
      throw Error(ErrorKind::ArityMismatch,
                  "generic class '" + expr.name + "' needs " +
                      std::to_string(decl->arity()) + " type argument(s)",
                  expr.pos);
    }
    return TypeTerm::ground(expr.name);
  }
  if (expr.args.size() != decl->arity()) {
    throw Error(ErrorKind::ArityMismatch,
                "class '" + expr.name + "' takes " + std::to_string(decl->arity()) +
                    " type argument(s), got " + std::to_string(expr.args.size()),
                expr.pos);
  }
  std::vector<Interval> args;
  args.reserve(expr.args.size());
  for (std::size_t k = 0; k < expr.args.size(); ++k) {
    const ArgExpr& arg = expr.args[k];
    const Interval bound = decl->params[k].bound();
    Interval iv = bound;
    switch (arg.kind) {
      case ArgExpr::Kind::Wildcard:
        break;
      case ArgExpr::Kind::Extends:
        iv.hi = resolve(table, arg.terms[0]);
        break;
      case ArgExpr::Kind::Super:
        iv.lo = resolve(table, arg.terms[0]);
        break;
      case ArgExpr::Kind::Exact:
        iv.lo = iv.hi = resolve(table, arg.terms[0]);
        break;
      case ArgExpr::Kind::Range:
        iv.lo = resolve(table, arg.terms[0]);
        iv.hi = resolve(table, arg.terms[1]);
        break;
    }
    if (!is_subtype(table, iv.lo, iv.hi)) {
      throw Error(ErrorKind::InvertedInterval,
                  "argument " + std::to_string(k + 1) + " of '" + expr.name +
                      "' has a lower bound that is not a subtype of its upper bound",
                  arg.pos);
    }
    if (!interval_contains(table, bound, iv)) {
      throw Error(ErrorKind::BoundViolation,
                  "argument " + std::to_string(k + 1) + " of '" + expr.name +
                      "' is outside the declared bounds of parameter '" +
                      decl->params[k].name + "'",
                  arg.pos);
    }
    args.push_back(std::move(iv));
  }
  return TypeTerm::apply(expr.name, std::move(args));
}

}  // namespace fractal::detail
