#pragma once

#include "fractal/skeleton.hpp"
#include "fractal/term.hpp"

namespace fractal {

// The subtyping judgment s <: t. Object is top and Null is bottom; a
// parameterized type is below the ground ancestors of its class; two
// parameterizations of the same generic class are related when each
// argument interval of t contains the corresponding one of s. This single
// containment rule covers covariance ([Null,S] <: [Null,T]), contravariance
// ([T,Object] <: [S,Object]) and invariance ([S,S] vs [T,T]).
bool is_subtype(const ClassTable& table, const TypeTerm& s, const TypeTerm& t);

// outer contains inner: outer.lo <: inner.lo and inner.hi <: outer.hi.
bool interval_contains(const ClassTable& table, const Interval& outer, const Interval& inner);

// first precedes second: first.hi <: second.lo.
bool interval_precedes(const ClassTable& table, const Interval& first, const Interval& second);

}  // namespace fractal
