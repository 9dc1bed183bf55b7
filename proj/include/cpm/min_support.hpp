#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "cpm/errors.hpp"

namespace cpm {

// Frequency threshold, absolute (count) or relative (fraction of |D|).
class MinSupport {
 public:
  static MinSupport absolute(std::size_t count) {
    if (count == 0) throw InputError("minimum support must be positive");
    return MinSupport(false, static_cast<double>(count));
  }

  static MinSupport relative(double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw InputError("relative minimum support must lie in (0,1]");
    return MinSupport(true, fraction);
  }

  // "2" is absolute, "0.66" or "1.0" relative.
  static MinSupport parse(std::string_view text) {
    const bool decimal = text.find_first_of(".eE") != std::string_view::npos;
    if (!decimal) {
      std::size_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InputError("invalid minimum support '" + std::string(text) + "'");
      return absolute(v);
    }
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(std::string(text), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size()) throw InputError("invalid minimum support '" + std::string(text) + "'");
    return relative(v);
  }

  bool is_relative() const noexcept { return relative_; }
  double value() const noexcept { return value_; }

  // Absolute threshold for a database of n records: ceil(value * n), at least 1.
  std::size_t effective(std::size_t n) const {
    if (!relative_) return static_cast<std::size_t>(value_);
    // Tolerate representation error such as 0.7 * 10 = 7.000000000000001.
    const double scaled = value_ * static_cast<double>(n);
    const auto t = static_cast<std::size_t>(std::ceil(scaled - 1e-9));
    return std::max<std::size_t>(t, 1);
  }

 private:
  MinSupport(bool relative, double value) : relative_(relative), value_(value) {}

  bool relative_;
  double value_;
};

}  // namespace cpm
