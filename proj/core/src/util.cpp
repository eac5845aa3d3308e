#include "cgk/util.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "cgk/rational.hpp"

namespace cgk {

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

std::string decimal_string(const Rational& r, int max_digits) {
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  Int whole = num / den;
  Int rem = num % den;
  std::string out = sign + whole.str();
  if (rem == 0) return out;
  out += ".";
  for (int i = 0; i < max_digits && rem != 0; ++i) {
    rem *= 10;
    out += Int(rem / den).str();
    rem %= den;
  }
  if (rem != 0) {
    // Round the last digit half-up.
    if (2 * rem >= den && out.back() != '9') out.back() = static_cast<char>(out.back() + 1);
  }
  return out;
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos) {
    return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  }
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    Int den = pow_int(10, static_cast<unsigned>(s.size() - dot - 1));
    return Rational(Int(digits), den);
  }
  return Rational(Int(s));
}

int thread_cap() {
  static int cap = [] {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("CGK_THREADS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v >= 1) return std::min<long>(v, hw) > 0 ? static_cast<int>(std::min<long>(v, hw)) : 1;
    }
    return hw;
  }();
  return cap;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) os << sep;
    os << parts[i];
  }
  return os.str();
}

}  // namespace cgk
