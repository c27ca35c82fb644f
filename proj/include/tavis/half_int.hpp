#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace tavis {

/// Integer or half-integer quantum number, stored as twice its value so that
/// r = 25/2 is exact and all equality/parity/range checks stay integral.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int whole) : doubled_(2 * static_cast<std::int64_t>(whole)) {}

  static constexpr HalfInt from_doubled(std::int64_t twice) {
    HalfInt h;
    h.doubled_ = twice;
    return h;
  }

  constexpr std::int64_t doubled() const { return doubled_; }
  constexpr double value() const { return 0.5 * static_cast<double>(doubled_); }
  constexpr bool is_integer() const { return doubled_ % 2 == 0; }

  constexpr HalfInt operator-() const { return from_doubled(-doubled_); }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
    return from_doubled(a.doubled_ + b.doubled_);
  }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
    return from_doubled(a.doubled_ - b.doubled_);
  }
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

 private:
  std::int64_t doubled_ = 0;
};

/// True when a - b is an integer (both integer or both half-odd).
constexpr bool same_parity(HalfInt a, HalfInt b) {
  return (a.doubled() - b.doubled()) % 2 == 0;
}

/// Parses "12.5", "-102.5", "3", "25/2" or "-205/2".
/// Throws std::invalid_argument for anything that is not an exact (half-)integer.
HalfInt parse_half_int(const std::string& text);

std::string to_decimal_string(HalfInt h);   // "12.5" or "3"
std::string to_fraction_string(HalfInt h);  // "25/2" or "3"

}  // namespace tavis
