#include "gclrip/rational.hpp"

#include <sstream>

#include "gclrip/errors.hpp"

namespace gclrip {

Integer floor_of(const Rational& value) {
  Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  if (num >= 0) return num / den;
  // Truncation rounds toward zero; shift negatives down.
  return -((-num + den - 1) / den);
}

bool is_integral(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

std::string to_string(const Integer& value) { return value.str(); }

std::string to_string(const Rational& value) {
  if (is_integral(value)) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

SyntaxError::SyntaxError(int line, int column, std::string message,
                         std::vector<std::string> expected)
    : Error([&] {
        std::ostringstream out;
        out << line << ":" << column << ": " << message;
        if (!expected.empty()) {
          out << " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) out << ", ";
            out << expected[i];
          }
          out << ")";
        }
        return out.str();
      }()),
      line_(line),
      column_(column),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

}  // namespace gclrip
