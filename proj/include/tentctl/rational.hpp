#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace tentctl {

// Parses "3/4", "-9/8", "0.25", "-0.4", "2", "1e-3" into an exact rational.
// Returns nullopt on malformed input; never rounds.
std::optional<mpq_class> parse_rational(std::string_view text);

// Canonical "num/den" text ("num" alone when den == 1).
std::string rational_to_string(const mpq_class& q);

// 10^k as an integer, k >= 0.
mpz_class pow10_z(unsigned long k);

// Number of decimal digits of |z|; 1 for z == 0.
int decimal_digits(const mpz_class& z);

// floor(log10(|q|)) for q != 0, i.e. the decimal exponent of the leading digit.
long decimal_exponent(const mpq_class& q);

}  // namespace tentctl
