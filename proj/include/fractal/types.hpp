#pragma once

#include <string>
#include <string_view>

#include "fractal/skeleton.hpp"
#include "fractal/term.hpp"

namespace fractal {

enum class Style {
  Java,      // C<?>, C<? extends T>, C<? super S>, C<T>
  Short,     // C<?>, C<?xT>, C<?sT>, C<T>
  Interval,  // C<[Null-Object]>, always explicit intervals
};

// Parses a closed type expression into its canonical term:
//
//   typeexpr := IDENT ("<" arg ("," arg)* ">")?
//   arg      := "?" | "?" "extends" typeexpr | "?" "super" typeexpr
//             | typeexpr | "[" typeexpr "-" typeexpr "]"
//
// with `?xT` and `?sT` accepted for the extends/super forms. Wildcards are
// read against the parameter's declared bounds <L,U>: `?` is [L,U],
// `? extends T` is [L,T] and `? super S` is [S,U].
TypeTerm parse_type(const ClassTable& table, std::string_view text);

// Renders a well-formed term. Java and short styles pick the wildcard
// spelling from the interval; an interval with neither endpoint at the
// declared bound falls back to the explicit [S-T] form.
std::string render(const ClassTable& table, const TypeTerm& term, Style style = Style::Java);

// First construction level at which the term appears: ground types are 0,
// K<args> is one more than its deepest argument, and an argument equal to
// its parameter's default contributes nothing.
int rank(const ClassTable& table, const TypeTerm& term);

// False when the Java rendering would need Null (e.g. C<Null>) or an
// explicit interval.
bool is_expressible(const ClassTable& table, const TypeTerm& term);

// Throws unless every class exists, arities match, intervals are ordered and
// every argument is within its parameter's bounds.
void check_well_formed(const ClassTable& table, const TypeTerm& term);

const char* to_string(Style style);
Style parse_style(std::string_view name);

}  // namespace fractal
