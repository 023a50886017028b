#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace fractal {

enum class ErrorKind {
  Syntax,
  UnknownClass,
  DuplicateClass,
  UnknownSuperclass,
  GenericSuperclass,
  CyclicExtends,
  IllFormedBound,
  ArityMismatch,
  BoundViolation,
  InvertedInterval,
  IllFormedTerm,
  CyclicOrder,
  InvertedWindow,
  UnknownFormat,
  InvalidArgument,
  BudgetExceeded,
};

const char* to_string(ErrorKind kind);

// Every domain failure in the library is reported through this type. The
// position, when present, is a byte offset into the parsed text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> position_;
};

}  // namespace fractal
