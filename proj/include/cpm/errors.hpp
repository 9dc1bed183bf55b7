#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpm {

// Malformed input data (files, symbols, constraint text).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}

  InputError(const std::string& what, std::size_t line, std::size_t column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    std::string s = "line " + std::to_string(line);
    if (column != 0) s += ", column " + std::to_string(column);
    return s + ": " + what;
  }

  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

// An operation was called outside its domain (e.g. edge_itemize on a
// graph with repeated vertex labels).
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

// Two patterns (or a pattern and a constraint) of incompatible kinds.
class KindMismatch : public std::logic_error {
 public:
  explicit KindMismatch(const std::string& what) : std::logic_error(what) {}
};

// Exhaustive routines refuse inputs above their configured size.
class BoundExceeded : public std::runtime_error {
 public:
  explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cpm
