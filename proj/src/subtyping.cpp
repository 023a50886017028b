#include "fractal/subtyping.hpp"

#include "fractal/error.hpp"

namespace fractal {

namespace {

void check_shape(const ClassTable& table, const TypeTerm& t) {
  const ClassDecl& decl = table.at(t.head());
  if (t.args().size() != decl.arity()) {
    throw Error(ErrorKind::IllFormedTerm,
                "term headed by '" + t.head() + "' has " + std::to_string(t.args().size()) +
                    " argument(s), class takes " + std::to_string(decl.arity()));
  }
}

}  // namespace

bool is_subtype(const ClassTable& table, const TypeTerm& s, const TypeTerm& t) {
  check_shape(table, s);
  check_shape(table, t);
  if (t.is_object() || s.is_null()) return true;
  if (t.is_ground()) return table.subclass_of(s.head(), t.head());
  // Generic classes only extend non-generic ones, so a parameterized
  // supertype must share the head class.
  if (s.is_ground() || s.head() != t.head()) return false;
  const auto sa = s.args();
  const auto ta = t.args();
  for (std::size_t k = 0; k < ta.size(); ++k) {
    if (!interval_contains(table, ta[k], sa[k])) return false;
  }
  return true;
}

bool interval_contains(const ClassTable& table, const Interval& outer, const Interval& inner) {
  return is_subtype(table, outer.lo, inner.lo) && is_subtype(table, inner.hi, outer.hi);
}

bool interval_precedes(const ClassTable& table, const Interval& first, const Interval& second) {
  return is_subtype(table, first.hi, second.lo);
}

}  // namespace fractal
