#include "tentctl/hpreal.hpp"

#include <algorithm>
#include <stdexcept>

#include "tentctl/rational.hpp"

namespace tentctl {

namespace {

void check_precision(int precision) {
  if (precision < 1 || precision > HPReal::kMaxPrecision)
    throw std::invalid_argument("precision must be in [1, " +
                                std::to_string(HPReal::kMaxPrecision) + "]");
}

// round(n / d) to nearest integer, ties to even; d > 0.
mpz_class round_quotient(const mpz_class& n, const mpz_class& d) {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  // 0 <= r < d; round up when 2r > d, or 2r == d and q is odd
  mpz_class twice = 2 * r;
  int c = cmp(twice, d);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
  return q;
}

}  // namespace

HPReal::HPReal(mpz_class mant, long exp, int prec)
    : mant_(std::move(mant)), exp_(exp), prec_(prec) {
  normalize();
}

HPReal::HPReal(long value, int precision) : mant_(value), exp_(0), prec_(precision) {
  check_precision(precision);
  normalize();
}

void HPReal::normalize() {
  if (mant_ == 0) {
    exp_ = 0;
    return;
  }
  int digits = decimal_digits(mant_);
  while (digits > prec_) {
    unsigned long shift = static_cast<unsigned long>(digits - prec_);
    mant_ = round_quotient(mant_, pow10_z(shift));
    exp_ += static_cast<long>(shift);
    if (mant_ == 0) {
      exp_ = 0;
      return;
    }
    digits = decimal_digits(mant_);  // rounding may carry (999.5 -> 1000)
  }
}

HPReal HPReal::from_string(std::string_view text, int precision) {
  check_precision(precision);
  if (text.find('/') != std::string_view::npos)
    throw std::invalid_argument("expected a decimal literal, got a fraction");
  auto q = parse_rational(text);
  if (!q) throw std::invalid_argument("malformed decimal literal: " + std::string(text));
  return from_rational(*q, precision);
}

HPReal HPReal::from_rational(const mpq_class& value, int precision) {
  check_precision(precision);
  if (value == 0) return HPReal(mpz_class(0), 0, precision);
  long e = decimal_exponent(value);
  long k = precision - 1 - e;
  mpz_class n = value.get_num();
  mpz_class d = value.get_den();
  if (k >= 0)
    n *= pow10_z(static_cast<unsigned long>(k));
  else
    d *= pow10_z(static_cast<unsigned long>(-k));
  bool neg = n < 0;
  if (neg) n = -n;
  mpz_class m = round_quotient(n, d);
  if (neg) m = -m;
  return HPReal(std::move(m), e - precision + 1, precision);
}

HPReal HPReal::pow10(long k, int precision) {
  check_precision(precision);
  return HPReal(mpz_class(1), k, precision);
}

mpq_class HPReal::to_rational() const {
  mpq_class q;
  if (exp_ >= 0)
    q = mpq_class(mant_ * pow10_z(static_cast<unsigned long>(exp_)));
  else
    q = mpq_class(mant_, pow10_z(static_cast<unsigned long>(-exp_)));
  q.canonicalize();
  return q;
}

HPReal HPReal::operator-() const {
  HPReal r = *this;
  r.mant_ = -r.mant_;
  return r;
}

HPReal HPReal::abs() const {
  HPReal r = *this;
  if (r.mant_ < 0) r.mant_ = -r.mant_;
  return r;
}

HPReal operator+(const HPReal& a, const HPReal& b) {
  int prec = std::min(a.prec_, b.prec_);
  if (a.mant_ == 0) return HPReal(b.mant_, b.exp_, prec);
  if (b.mant_ == 0) return HPReal(a.mant_, a.exp_, prec);
  long e = std::min(a.exp_, b.exp_);
  mpz_class ma = a.mant_ * pow10_z(static_cast<unsigned long>(a.exp_ - e));
  mpz_class mb = b.mant_ * pow10_z(static_cast<unsigned long>(b.exp_ - e));
  return HPReal(ma + mb, e, prec);
}

HPReal operator-(const HPReal& a, const HPReal& b) { return a + (-b); }

HPReal operator*(const HPReal& a, const HPReal& b) {
  int prec = std::min(a.prec_, b.prec_);
  return HPReal(a.mant_ * b.mant_, a.exp_ + b.exp_, prec);
}

HPReal operator/(const HPReal& a, const HPReal& b) {
  if (b.mant_ == 0) throw std::domain_error("HPReal division by zero");
  int prec = std::min(a.prec_, b.prec_);
  if (a.mant_ == 0) return HPReal(mpz_class(0), 0, prec);
  // quotient with 4 guard digits, then one more rounding in normalize()
  long shift = prec + 4 + std::max(0, decimal_digits(b.mant_) - decimal_digits(a.mant_));
  mpz_class n = a.mant_ * pow10_z(static_cast<unsigned long>(shift));
  bool neg = (n < 0) != (b.mant_ < 0);
  mpz_class an = ::abs(n), ad = ::abs(b.mant_);
  mpz_class q = round_quotient(an, ad);
  if (neg) q = -q;
  return HPReal(std::move(q), a.exp_ - b.exp_ - shift, prec);
}

int HPReal::compare(const HPReal& a, const HPReal& b) {
  int sa = sgn(a.mant_), sb = sgn(b.mant_);
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  long e = std::min(a.exp_, b.exp_);
  mpz_class ma = a.mant_ * pow10_z(static_cast<unsigned long>(a.exp_ - e));
  mpz_class mb = b.mant_ * pow10_z(static_cast<unsigned long>(b.exp_ - e));
  return cmp(ma, mb) < 0 ? -1 : cmp(ma, mb) > 0 ? 1 : 0;
}

std::string HPReal::to_string() const {
  if (mant_ == 0) return "0";
  mpz_class m = ::abs(mant_);
  int digits = decimal_digits(m);
  // pad to full precision so output width is stable
  long exp = exp_;
  if (digits < prec_ && prec_ < kMaxPrecision) {
    m *= pow10_z(static_cast<unsigned long>(prec_ - digits));
    exp -= prec_ - digits;
    digits = prec_;
  }
  std::string s = m.get_str();
  long exp10 = exp + digits - 1;  // decimal exponent of the leading digit
  std::string sign = mant_ < 0 ? "-" : "";
  if (exp10 >= -7 && exp10 <= 21) {
    if (exp10 >= digits - 1) {
      // integer, possibly with trailing zeros
      return sign + s + std::string(static_cast<size_t>(exp10 - digits + 1), '0');
    }
    if (exp10 >= 0) {
      return sign + s.substr(0, static_cast<size_t>(exp10 + 1)) + "." +
             s.substr(static_cast<size_t>(exp10 + 1));
    }
    return sign + "0." + std::string(static_cast<size_t>(-exp10 - 1), '0') + s;
  }
  // scientific, trailing zeros stripped
  std::string frac = s.substr(1);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string body = s.substr(0, 1);
  if (!frac.empty()) body += "." + frac;
  return sign + body + "e" + std::to_string(exp10);
}

}  // namespace tentctl
