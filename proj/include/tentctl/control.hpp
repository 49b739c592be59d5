#pragma once

#include <gmpxx.h>

#include "tentctl/tentmap.hpp"

namespace tentctl {

// Admissible control-parameter interval for one multiplier sign.
//
// Positive regime: ((H^T - 1/H)/(H^T - 1), (H^T + 1/H)/(H^T - 1)), nested in
// (1, 5/2). Negative regime: ((H^T - 1/H)/(H^T + 1), (H^T + 1/H)/(H^T + 1)),
// nested in (1/2, 1). The lower endpoint is always open; hi_closed records
// whether the boundedness theorem for this regime closes the upper endpoint
// (it does for the positive regime). Stability itself is strict at both ends.
struct ThetaInterval {
  mpq_class lo;
  mpq_class hi;
  bool hi_closed = false;
  Regime regime = Regime::PositiveMultiplier;

  bool contains(const mpq_class& theta) const {
    return theta > lo && (hi_closed ? theta <= hi : theta < hi);
  }

  // Negative regime only: theta <= H^T/(H^T+1) keeps [0, H/2] invariant;
  // above it the invariant set breaks into a union of intervals.
  mpq_class invariance_bound() const;

  bool invariance_guaranteed(const mpq_class& theta) const;

 private:
  friend ThetaInterval theta_interval(const MapParams&, int, Regime);
  mpq_class h_pow_t_;  // cached H^T for the bound above
};

// Interior offset c in (-1, 1): theta = (H^T + c/H)/(H^T -+ 1) per regime.
struct RegimeOffset {
  mpq_class c;

  explicit RegimeOffset(mpq_class offset);
};

ThetaInterval theta_interval(const MapParams& params, int T, Regime regime);

// Strictly interior theta for the given offset.
mpq_class theta_from_offset(const MapParams& params, int T, Regime regime,
                            const RegimeOffset& offset);

// lambda = mu * (theta + (1 - theta) * mu)^T, the multiplier a T-cycle of the
// free map (multiplier mu) acquires in the controlled system.
mpq_class controlled_multiplier(const mpq_class& mu, const mpq_class& theta, int T);

// |lambda| < 1.
bool is_locally_stable(const mpq_class& mu, const mpq_class& theta, int T);

// Stability of a tau-cycle (tau | T, p = T/tau) inside the period-T scheme,
// by the sign of the tau-cycle's own multiplier:
//   positive regime: stable iff mu_tau > 0, or mu_tau < 0 and p even;
//   negative regime: stable iff mu_tau < 0 and p odd.
bool subcycle_stable(int T, int tau, Regime regime, int mu_tau_sign);

// Number of distinct proper T-cycles of the tent map for H > 2:
// (1/T) * sum_{d | T} mobius(d) * 2^(T/d); equals 2 for T = 1.
// Supported for 1 <= T <= 64.
mpz_class count_cycles(int T);

// Mobius function via trial division; n >= 1.
int mobius(long n);

}  // namespace tentctl
