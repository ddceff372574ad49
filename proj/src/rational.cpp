#include "wino/rational.hpp"

#include "wino/error.hpp"

namespace wino {

std::string to_string(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(text));
    }
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) {
      throw Error("winograd_core", "zero denominator in rational '" + text + "'");
    }
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e) != nullptr) {
      throw;
    }
    throw Error("winograd_core", "cannot parse rational '" + text + "'");
  }
}

}  // namespace wino
