#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

// Fixed-point unit discipline used throughout the library:
//   voltage  mV   (int, 0 is reserved for "gated")
//   time     ps
//   energy   fJ
//   power    nW
//   freq     kHz
// Derived quantities are computed in integer arithmetic with explicit
// rounding: floor for frequencies and latencies, half-up for energies.
// 1 fJ = 1e6 nW*ps, so energies accumulated at nW*ps resolution ("fine"
// units) are exact and only rounded once at the reporting boundary.

namespace powerflow {

using i32 = std::int32_t;
using i64 = std::int64_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i128 = __int128;

using Millivolt = i32;
using Kilohertz = i64;
using Picosecond = i64;
using Femtojoule = i64;
using Nanowatt = i64;

constexpr i64 kPpm = 1'000'000;          // fixed denominator for fractions
constexpr i64 kFinePerFj = 1'000'000;    // nW*ps per fJ

// Integer division helpers for non-negative numerators, positive denominators.
inline i64 floor_div(i128 a, i128 b) { return static_cast<i64>(a / b); }
inline i64 ceil_div(i128 a, i128 b) { return static_cast<i64>((a + b - 1) / b); }
inline i64 half_up_div(i128 a, i128 b) { return static_cast<i64>((2 * a + b) / (2 * b)); }

// Exact non-negative rational, normalized (gcd-reduced, den > 0).
struct Rational {
  i64 num = 0;
  i64 den = 1;

  Rational() = default;
  Rational(i64 n, i64 d) : num(n), den(d) { normalize(); }
  static Rational integer(i64 n) { return Rational(n, 1); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  bool is_zero() const { return num == 0; }

  // a <=> b via cross multiplication in 128-bit.
  friend int cmp(const Rational& a, const Rational& b) {
    i128 lhs = (i128)a.num * b.den;
    i128 rhs = (i128)b.num * a.den;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }

  // Exact midpoint (a+b)/2. Denominators stay bounded by the caller's
  // iteration cap, and 128-bit intermediates avoid overflow before gcd.
  static Rational midpoint(const Rational& a, const Rational& b) {
    i128 n = (i128)a.num * b.den + (i128)b.num * a.den;
    i128 d = (i128)2 * a.den * b.den;
    i128 g = gcd128(n < 0 ? -n : n, d);
    n /= g;
    d /= g;
    if (n > INT64_MAX || d > INT64_MAX)
      throw std::overflow_error("rational midpoint overflow");
    return Rational(static_cast<i64>(n), static_cast<i64>(d));
  }

  // width = b - a, compared against 1/2^bits without materializing tiny values.
  static bool width_below(const Rational& a, const Rational& b, int pow2_bits) {
    // (b - a) < 1/2^bits  <=>  (b.num*a.den - a.num*b.den) * 2^bits < a.den*b.den
    i128 diff = (i128)b.num * a.den - (i128)a.num * b.den;
    if (diff <= 0) return true;
    i128 denom = (i128)a.den * b.den;
    // Guard the shift; if diff is large the width is clearly not tiny.
    if (diff > (denom >> pow2_bits)) return false;
    return (diff << pow2_bits) < denom;
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

 private:
  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }
};

// Parses a non-negative decimal string ("30", "12.5", "0.125") to an exact
// rational. Throws std::invalid_argument on malformed input.
Rational parse_decimal_rational(const std::string& text);

// Formats num/den as a decimal with fixed `places` digits, half-up rounding.
// Deterministic (integer arithmetic only); used for CSV output.
std::string format_rational_decimal(i64 num, i64 den, int places);

}  // namespace powerflow
