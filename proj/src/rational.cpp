#include "soccover/rational.hpp"

#include <stdexcept>

namespace soccover {

std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  const auto check_int = [](const std::string& part) {
    if (part.empty()) throw std::invalid_argument("malformed rational literal");
    size_t start = (part[0] == '+' || part[0] == '-') ? 1 : 0;
    if (start == part.size()) throw std::invalid_argument("malformed rational literal");
    for (size_t i = start; i < part.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(part[i])))
        throw std::invalid_argument("malformed rational literal: " + part);
  };
  if (slash == std::string::npos) {
    check_int(s);
    return Rat(BigInt(s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  check_int(num);
  check_int(den);
  const BigInt d(den);
  if (d == 0) throw std::invalid_argument("zero denominator");
  return Rat(BigInt(num), d);
}

bool is_integer(const Rat& r) { return denominator(r) == 1; }

bool perfect_square(const BigInt& v, BigInt* root) {
  if (v < 0) return false;
  const BigInt r = boost::multiprecision::sqrt(v);
  if (r * r != v) return false;
  if (root) *root = r;
  return true;
}

}  // namespace soccover
