#include "tentctl/tentmap.hpp"

#include <stdexcept>

namespace tentctl {

MapParams::MapParams(mpq_class slope) : H(std::move(slope)) {
  if (H < 2) throw std::invalid_argument("tent map slope H must be >= 2");
}

ControlConfig::ControlConfig(MapParams p, int period, Regime r, mpq_class th)
    : params(std::move(p)), T(period), regime(r), theta(std::move(th)) {
  if (T < 1) throw std::invalid_argument("target period T must be >= 1");
}

HPReal tent_eval(const HPReal& x, const MapParams& params) {
  const int prec = x.precision();
  const HPReal half = HPReal::from_rational(mpq_class(1, 2), prec);
  const HPReal h = HPReal::from_rational(params.H, prec);
  if (x <= half) return h * x;
  return h * (HPReal(1, prec) - x);
}

mpq_class tent_eval(const mpq_class& x, const MapParams& params) {
  if (x <= mpq_class(1, 2)) return params.H * x;
  return params.H * (1 - x);
}

HPReal tent_iterate(HPReal x, const MapParams& params, long k) {
  if (k < 0) throw std::invalid_argument("iteration count must be >= 0");
  for (long i = 0; i < k; ++i) x = tent_eval(x, params);
  return x;
}

mpq_class tent_iterate(mpq_class x, const MapParams& params, long k) {
  if (k < 0) throw std::invalid_argument("iteration count must be >= 0");
  for (long i = 0; i < k; ++i) x = tent_eval(x, params);
  return x;
}

HPReal zeta_eval(const HPReal& x, const ControlConfig& cfg) {
  const int prec = x.precision();
  const HPReal theta = HPReal::from_rational(cfg.theta, prec);
  const HPReal one_minus_theta = HPReal::from_rational(1 - cfg.theta, prec);
  const HPReal ft = tent_iterate(x, cfg.params, cfg.T);
  return theta * x + one_minus_theta * ft;
}

mpq_class zeta_eval(const mpq_class& x, const ControlConfig& cfg) {
  return cfg.theta * x + (1 - cfg.theta) * tent_iterate(x, cfg.params, cfg.T);
}

HPReal control_eval(const HPReal& x, const ControlConfig& cfg) {
  return tent_eval(zeta_eval(x, cfg), cfg.params);
}

mpq_class control_eval(const mpq_class& x, const ControlConfig& cfg) {
  return tent_eval(zeta_eval(x, cfg), cfg.params);
}

}  // namespace tentctl
