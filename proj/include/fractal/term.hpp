#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace fractal {

struct Interval;

// A closed class type: either a ground (non-generic) class, or a generic
// class applied to one interval per type parameter. Terms are always kept in
// canonical form, so structural equality is type equality.
class TypeTerm {
 public:
  TypeTerm();  // Object

  static TypeTerm ground(std::string cls);
  static TypeTerm apply(std::string cls, std::vector<Interval> args);
  static TypeTerm object();
  static TypeTerm null();

  const std::string& head() const noexcept { return head_; }
  bool is_ground() const noexcept { return args_.empty(); }
  bool is_object() const noexcept;
  bool is_null() const noexcept;
  std::span<const Interval> args() const noexcept { return args_; }

  // Maximum nesting of type arguments; ground terms have depth 0.
  std::size_t depth() const noexcept;

  friend bool operator==(const TypeTerm& a, const TypeTerm& b);
  friend std::strong_ordering operator<=>(const TypeTerm& a, const TypeTerm& b);

 private:
  TypeTerm(std::string head, std::vector<Interval> args);

  std::string head_;
  std::vector<Interval> args_;
};

// A type argument [lo, hi] with lo <: hi. Every wildcard form is one of
// these: `?` is [Null, Object], `? extends T` is [Null, T], `? super S` is
// [S, Object] and a plain `T` is [T, T] (for unbounded parameters).
struct Interval {
  TypeTerm lo;
  TypeTerm hi;

  static Interval exact(const TypeTerm& t) { return {t, t}; }
  static Interval unbounded() { return {TypeTerm::null(), TypeTerm::object()}; }

  friend bool operator==(const Interval& a, const Interval& b);
  friend std::strong_ordering operator<=>(const Interval& a, const Interval& b);
};

inline constexpr const char* kObject = "Object";
inline constexpr const char* kNull = "Null";

}  // namespace fractal
