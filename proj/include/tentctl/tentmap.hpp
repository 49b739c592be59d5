#pragma once

#include <gmpxx.h>

#include "tentctl/hpreal.hpp"

namespace tentctl {

enum class Regime { PositiveMultiplier, NegativeMultiplier };

// Slope of the tent map. H >= 2 enforced at construction.
struct MapParams {
  mpq_class H;

  explicit MapParams(mpq_class slope);
};

// One controlled-system instance: x_{n+1} = f(theta*x + (1-theta)*f^T(x)).
struct ControlConfig {
  MapParams params;
  int T = 1;
  Regime regime = Regime::PositiveMultiplier;
  mpq_class theta;

  ControlConfig(MapParams p, int period, Regime r, mpq_class th);
};

// f(x) = H*x for x <= 1/2, H*(1-x) otherwise. The branch boundary x = 1/2
// belongs to the left branch.
HPReal tent_eval(const HPReal& x, const MapParams& params);
mpq_class tent_eval(const mpq_class& x, const MapParams& params);

// f^(k); f^(0) is the identity.
HPReal tent_iterate(HPReal x, const MapParams& params, long k);
mpq_class tent_iterate(mpq_class x, const MapParams& params, long k);

// zeta(x) = theta*x + (1-theta)*f^(T)(x). The coefficients theta and 1-theta
// are formed exactly before rounding, so 1-theta keeps full relative accuracy
// even when theta is close to 1.
HPReal zeta_eval(const HPReal& x, const ControlConfig& cfg);
mpq_class zeta_eval(const mpq_class& x, const ControlConfig& cfg);

// F(x) = f(zeta(x)); agrees with f at every T-periodic point of f.
HPReal control_eval(const HPReal& x, const ControlConfig& cfg);
mpq_class control_eval(const mpq_class& x, const ControlConfig& cfg);

}  // namespace tentctl
