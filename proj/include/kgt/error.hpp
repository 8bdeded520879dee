#pragma once

#include <stdexcept>
#include <string>

namespace kgt {

// Input/grammar violation, with 1-based position when known.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(prefix(line, column) + what), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  static std::string prefix(int line, int column) {
    if (line <= 0) return {};
    std::string p = "line " + std::to_string(line);
    if (column > 0) p += ", col " + std::to_string(column);
    return p + ": ";
  }

  int line_;
  int column_;
};

// A machine-checked construction invariant failed (certificate, peripheral
// pair, normal form). Signals a mathematical inconsistency, not a usage error.
class CheckError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace kgt
