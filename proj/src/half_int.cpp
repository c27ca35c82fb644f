#include "tavis/half_int.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace tavis {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

HalfInt parse_half_int(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = (s[0] == '-');
    s.erase(0, 1);
  }
  if (s.empty()) throw std::invalid_argument("half-integer: empty string");

  std::int64_t twice = 0;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("half-integer: bad fraction '" + text + "'");
    const std::int64_t p = std::strtoll(num.c_str(), nullptr, 10);
    const std::int64_t q = std::strtoll(den.c_str(), nullptr, 10);
    if (q == 1)
      twice = 2 * p;
    else if (q == 2)
      twice = p;
    else
      throw std::invalid_argument("half-integer: denominator must be 1 or 2 in '" + text + "'");
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    const std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    if (!all_digits(whole) && !whole.empty())
      throw std::invalid_argument("half-integer: bad number '" + text + "'");
    const std::int64_t w = whole.empty() ? 0 : std::strtoll(whole.c_str(), nullptr, 10);
    // Only .0 / .00... and .5 / .50... are exact half-integers.
    std::string trimmed = frac;
    while (trimmed.size() > 1 && trimmed.back() == '0') trimmed.pop_back();
    if (trimmed == "0" || trimmed.empty())
      twice = 2 * w;
    else if (trimmed == "5")
      twice = 2 * w + 1;
    else
      throw std::invalid_argument("half-integer: '" + text + "' is not an exact half-integer");
  } else {
    if (!all_digits(s)) throw std::invalid_argument("half-integer: bad number '" + text + "'");
    twice = 2 * std::strtoll(s.c_str(), nullptr, 10);
  }
  return HalfInt::from_doubled(negative ? -twice : twice);
}

std::string to_decimal_string(HalfInt h) {
  const std::int64_t d = h.doubled();
  if (d % 2 == 0) return std::to_string(d / 2);
  const std::int64_t whole = (d < 0 ? -((-d) / 2) : d / 2);
  std::string s = (d < 0 && whole == 0) ? "-0" : std::to_string(whole);
  return s + ".5";
}

std::string to_fraction_string(HalfInt h) {
  const std::int64_t d = h.doubled();
  if (d % 2 == 0) return std::to_string(d / 2);
  return std::to_string(d) + "/2";
}

}  // namespace tavis
