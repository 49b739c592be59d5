#include "tentctl/control.hpp"

#include <stdexcept>

namespace tentctl {

namespace {

mpq_class rational_pow(const mpq_class& base, int k) {
  mpq_class r(1);
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace

RegimeOffset::RegimeOffset(mpq_class offset) : c(std::move(offset)) {
  if (::abs(c) >= 1) throw std::invalid_argument("regime offset |c| must be < 1");
}

mpq_class ThetaInterval::invariance_bound() const {
  return h_pow_t_ / (h_pow_t_ + 1);
}

bool ThetaInterval::invariance_guaranteed(const mpq_class& theta) const {
  if (regime != Regime::NegativeMultiplier) return false;
  return theta > lo && theta <= invariance_bound();
}

ThetaInterval theta_interval(const MapParams& params, int T, Regime regime) {
  if (T < 1) throw std::invalid_argument("target period T must be >= 1");
  if (params.H < 2) throw std::invalid_argument("tent map slope H must be >= 2");
  mpq_class ht = rational_pow(params.H, T);
  mpq_class inv_h = 1 / params.H;
  ThetaInterval iv;
  iv.regime = regime;
  iv.h_pow_t_ = ht;
  if (regime == Regime::PositiveMultiplier) {
    iv.lo = (ht - inv_h) / (ht - 1);
    iv.hi = (ht + inv_h) / (ht - 1);
    iv.hi_closed = true;  // Theorem-2-style boundedness holds up to hi
  } else {
    iv.lo = (ht - inv_h) / (ht + 1);
    iv.hi = (ht + inv_h) / (ht + 1);
    iv.hi_closed = false;
  }
  return iv;
}

mpq_class theta_from_offset(const MapParams& params, int T, Regime regime,
                            const RegimeOffset& offset) {
  mpq_class ht = rational_pow(params.H, T);
  mpq_class num = ht + offset.c / params.H;
  if (regime == Regime::PositiveMultiplier) return num / (ht - 1);
  return num / (ht + 1);
}

mpq_class controlled_multiplier(const mpq_class& mu, const mpq_class& theta, int T) {
  return mu * rational_pow(theta + (1 - theta) * mu, T);
}

bool is_locally_stable(const mpq_class& mu, const mpq_class& theta, int T) {
  return ::abs(controlled_multiplier(mu, theta, T)) < 1;
}

bool subcycle_stable(int T, int tau, Regime regime, int mu_tau_sign) {
  if (tau < 1 || T < 1 || T % tau != 0)
    throw std::invalid_argument("tau must be a positive divisor of T");
  if (mu_tau_sign != 1 && mu_tau_sign != -1)
    throw std::invalid_argument("multiplier sign must be +1 or -1");
  int p = T / tau;
  if (regime == Regime::PositiveMultiplier)
    return mu_tau_sign > 0 || p % 2 == 0;
  return mu_tau_sign < 0 && p % 2 == 1;
}

int mobius(long n) {
  if (n < 1) throw std::invalid_argument("mobius argument must be >= 1");
  int factors = 0;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;  // squared factor
      ++factors;
    }
  }
  if (n > 1) ++factors;
  return factors % 2 == 0 ? 1 : -1;
}

mpz_class count_cycles(int T) {
  if (T < 1 || T > 64) throw std::invalid_argument("cycle counting supports 1 <= T <= 64");
  mpz_class sum(0);
  for (int d = 1; d <= T; ++d) {
    if (T % d != 0) continue;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), 2u, static_cast<unsigned long>(T / d));
    sum += mobius(d) * pw;
  }
  return sum / T;
}

}  // namespace tentctl
