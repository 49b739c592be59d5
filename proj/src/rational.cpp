#include "tentctl/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace tentctl {

mpz_class pow10_z(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10u, k);
  return r;
}

int decimal_digits(const mpz_class& z) {
  if (z == 0) return 1;
  mpz_class a = abs(z);
  // sizeinbase may overestimate by one for base 10
  int n = static_cast<int>(mpz_sizeinbase(a.get_mpz_t(), 10));
  if (n > 1 && a < pow10_z(static_cast<unsigned long>(n - 1))) --n;
  return n;
}

long decimal_exponent(const mpq_class& q) {
  mpz_class num = abs(q.get_num());
  mpz_class den = q.get_den();
  long e = decimal_digits(num) - decimal_digits(den);
  // e or e-1; settle by comparison: |q| >= 10^e  <=>  num >= den*10^e
  mpz_class lhs = num;
  mpz_class rhs = den;
  if (e >= 0)
    rhs *= pow10_z(static_cast<unsigned long>(e));
  else
    lhs *= pow10_z(static_cast<unsigned long>(-e));
  if (lhs < rhs) --e;
  return e;
}

namespace {

bool parse_integer(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  out = mpz_class(std::string(s), 10);
  return true;
}

// decimal form: [sign] digits [. digits] [ (e|E) [sign] digits ]
bool parse_decimal(std::string_view s, mpq_class& out) {
  bool neg = false;
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return false;
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      eneg = s[i] == '-';
      ++i;
    }
    if (i == s.size()) return false;
    long v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
      v = v * 10 + (s[i] - '0');
      if (v > 1000000) return false;
    }
    exp10 = eneg ? -v : v;
  }
  if (i != s.size()) return false;

  mpz_class mant(digits, 10);
  if (neg) mant = -mant;
  long e = exp10 - frac_digits;
  mpq_class q;
  if (e >= 0)
    q = mpq_class(mant * pow10_z(static_cast<unsigned long>(e)));
  else
    q = mpq_class(mant, pow10_z(static_cast<unsigned long>(-e)));
  q.canonicalize();
  out = q;
  return true;
}

}  // namespace

std::optional<mpq_class> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    mpz_class num, den;
    if (!parse_integer(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_integer(text.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  mpq_class q;
  if (!parse_decimal(text, q)) return std::nullopt;
  return q;
}

std::string rational_to_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace tentctl
