#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace tentctl {

// Arbitrary-precision decimal floating point: value = mantissa * 10^exponent,
// rounded to a configurable number of significant decimal digits.
//
// Every arithmetic operation rounds once to the smaller of the operand
// precisions (round to nearest, ties to even), so the relative error of a
// single operation at precision P is at most 10^(1-P). Decimal radix keeps
// decimal thresholds like 1e-15 exactly representable. Comparisons are exact.
class HPReal {
 public:
  static constexpr int kMaxPrecision = 100000;

  // Exact zero; adopts the other operand's precision when combined.
  HPReal() : mant_(0), exp_(0), prec_(kMaxPrecision) {}

  HPReal(long value, int precision);

  // Decimal literal ("0.25", "-1.5e-3"). Exact when it has <= precision
  // significant digits. Throws std::invalid_argument on malformed input.
  static HPReal from_string(std::string_view text, int precision);

  // Nearest representable value at the given precision.
  static HPReal from_rational(const mpq_class& value, int precision);

  // 10^k, exact at any precision >= 1.
  static HPReal pow10(long k, int precision);

  // Exact value as a rational.
  mpq_class to_rational() const;

  // Decimal text with exactly precision() significant digits (positional for
  // moderate exponents, scientific otherwise). "0" for zero.
  std::string to_string() const;

  int precision() const { return prec_; }
  bool is_zero() const { return mant_ == 0; }
  int sign() const { return sgn(mant_); }

  HPReal operator-() const;
  HPReal abs() const;

  friend HPReal operator+(const HPReal& a, const HPReal& b);
  friend HPReal operator-(const HPReal& a, const HPReal& b);
  friend HPReal operator*(const HPReal& a, const HPReal& b);
  // Throws std::domain_error on division by zero.
  friend HPReal operator/(const HPReal& a, const HPReal& b);

  friend std::strong_ordering operator<=>(const HPReal& a, const HPReal& b) {
    int c = compare(a, b);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }
  friend bool operator==(const HPReal& a, const HPReal& b) {
    return compare(a, b) == 0;
  }

  // Exact three-way value comparison.
  static int compare(const HPReal& a, const HPReal& b);

 private:
  HPReal(mpz_class mant, long exp, int prec);

  void normalize();

  mpz_class mant_;  // |mant_| < 10^prec_ after normalize()
  long exp_;
  int prec_;
};

}  // namespace tentctl
