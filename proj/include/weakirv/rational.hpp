#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace weakirv {

// Exact arbitrary-precision rational. All scores, weights, budgets and quotas
// use this type; floating point appears only in experiment aggregation.
using Rational = mpq_class;

// Thrown when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown by the text parsers; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownCandidate, DuplicateCandidate, BadWeight, Truncated, MissingRoster };

  ParseError(const std::string& what, std::size_t line = 0, Kind kind = Kind::Syntax)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line), kind_(kind) {}
  std::size_t line() const { return line_; }
  Kind kind() const { return kind_; }

 private:
  std::size_t line_;
  Kind kind_;
};

inline std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

// Parses "p", "p/q" or a finite decimal such as "0.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty number");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw ParseError("malformed number '" + s + "'");
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::string denom = "1" + std::string(s.size() - dot - 1, '0');
    s = digits + "/" + denom;
  }
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+'))
      throw ParseError("malformed number '" + std::string(text) + "'");
  }
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("malformed number '" + std::string(text) + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

}  // namespace weakirv
