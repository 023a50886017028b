#include "fractal/term.hpp"

#include <algorithm>
#include <utility>

#include "fractal/error.hpp"

namespace fractal {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::UnknownClass: return "unknown class";
    case ErrorKind::DuplicateClass: return "duplicate class";
    case ErrorKind::UnknownSuperclass: return "unknown superclass";
    case ErrorKind::GenericSuperclass: return "generic superclass";
    case ErrorKind::CyclicExtends: return "cyclic extends";
    case ErrorKind::IllFormedBound: return "ill-formed bound";
    case ErrorKind::ArityMismatch: return "arity mismatch";
    case ErrorKind::BoundViolation: return "bound violation";
    case ErrorKind::InvertedInterval: return "inverted interval";
    case ErrorKind::IllFormedTerm: return "ill-formed term";
    case ErrorKind::CyclicOrder: return "cyclic order";
    case ErrorKind::InvertedWindow: return "inverted window";
    case ErrorKind::UnknownFormat: return "unknown format";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::BudgetExceeded: return "budget exceeded";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> position)
    : std::runtime_error(message), kind_(kind), position_(position) {}

TypeTerm::TypeTerm() : head_(kObject) {}

TypeTerm::TypeTerm(std::string head, std::vector<Interval> args)
    : head_(std::move(head)), args_(std::move(args)) {}

TypeTerm TypeTerm::ground(std::string cls) { return TypeTerm(std::move(cls), {}); }

TypeTerm TypeTerm::apply(std::string cls, std::vector<Interval> args) {
  return TypeTerm(std::move(cls), std::move(args));
}

TypeTerm TypeTerm::object() { return ground(kObject); }
TypeTerm TypeTerm::null() { return ground(kNull); }

bool TypeTerm::is_object() const noexcept { return is_ground() && head_ == kObject; }
bool TypeTerm::is_null() const noexcept { return is_ground() && head_ == kNull; }

std::size_t TypeTerm::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& arg : args_) {
    d = std::max({d, arg.lo.depth() + 1, arg.hi.depth() + 1});
  }
  return d;
}

bool operator==(const TypeTerm& a, const TypeTerm& b) {
  return a.head_ == b.head_ && a.args_ == b.args_;
}

std::strong_ordering operator<=>(const TypeTerm& a, const TypeTerm& b) {
  if (auto c = a.head_ <=> b.head_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(),
                                                b.args_.begin(), b.args_.end());
}

bool operator==(const Interval& a, const Interval& b) {
  return a.lo == b.lo && a.hi == b.hi;
}

std::strong_ordering operator<=>(const Interval& a, const Interval& b) {
  if (auto c = a.lo <=> b.lo; c != 0) return c;
  return a.hi <=> b.hi;
}

}  // namespace fractal
