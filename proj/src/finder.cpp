#include "tentctl/finder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tentctl/rational.hpp"

namespace tentctl {

int default_precision(const MapParams& params, int T) {
  double log_h = std::log10(mpq_class(params.H).get_d());
  return static_cast<int>(std::ceil(1.05 * T * log_h)) + 10;
}

SearchConfig make_search_config(const ControlConfig& cfg, const mpq_class& x0,
                                int precision, const FinderOptions& opts) {
  const int min_prec = default_precision(cfg.params, cfg.T);
  if (precision == 0) precision = min_prec;
  if (precision < min_prec)
    throw std::invalid_argument("precision " + std::to_string(precision) +
                                " below the required " + std::to_string(min_prec) +
                                " for this (H, T)");

  mpq_class threshold = opts.threshold;
  if (threshold == 0) {
    threshold = 1;
    threshold /= pow10_z(static_cast<unsigned long>(precision - 5));
  }
  if (threshold <= 0) throw std::invalid_argument("residual threshold must be positive");
  mpq_class theta_gap = ::abs(1 - cfg.theta);
  if (100 * threshold > theta_gap)
    throw std::invalid_argument(
        "residual threshold must sit at least two orders of magnitude below |1 - theta|");

  mpq_class divergence = opts.divergence;
  if (divergence == 0) divergence = 10 * cfg.params.H * cfg.params.H;

  SearchConfig s{cfg,
                 HPReal::from_rational(x0, precision),
                 opts.max_iters,
                 HPReal::from_rational(threshold, precision),
                 HPReal::from_rational(divergence, precision),
                 precision,
                 opts.window > 0 ? opts.window : cfg.T + 5};
  if (s.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  return s;
}

namespace {

// Constants of one controlled iteration, converted once per search.
struct IterationContext {
  HPReal h;
  HPReal half;
  HPReal one;
  HPReal theta;
  HPReal one_minus_theta;
  int T;

  IterationContext(const ControlConfig& cfg, int prec)
      : h(HPReal::from_rational(cfg.params.H, prec)),
        half(HPReal::from_rational(mpq_class(1, 2), prec)),
        one(1, prec),
        theta(HPReal::from_rational(cfg.theta, prec)),
        one_minus_theta(HPReal::from_rational(1 - cfg.theta, prec)),
        T(cfg.T) {}

  HPReal f(const HPReal& x) const {
    if (x <= half) return h * x;
    return h * (one - x);
  }

  HPReal zeta(const HPReal& x) const {
    HPReal ft = x;
    for (int i = 0; i < T; ++i) ft = f(ft);
    return theta * x + one_minus_theta * ft;
  }
};

}  // namespace

OrbitTrace iterate_controlled(const SearchConfig& search) {
  const IterationContext ctx(search.cfg, search.precision);
  const int T = search.cfg.T;
  OrbitTrace trace;
  trace.states.push_back(search.x0);

  int run = 0;
  long run_start = -1;
  for (long step = 0; step < search.max_iters; ++step) {
    const HPReal& x = trace.states.back();
    if (x.abs() > search.divergence_bound) {
      trace.verdict = {Verdict::Kind::Diverged, step};
      return trace;
    }
    HPReal fx = ctx.f(x);
    HPReal next = ctx.f(ctx.zeta(x));
    trace.residuals_U.push_back((next - fx).abs());
    trace.states.push_back(std::move(next));

    const long filled = static_cast<long>(trace.states.size()) - 1;  // last index
    if (filled >= T) {
      const long n = filled - T;
      HPReal uhat = (trace.states[static_cast<size_t>(n + T)] -
                     trace.states[static_cast<size_t>(n)])
                        .abs();
      bool ok = trace.residuals_U[static_cast<size_t>(n)] < search.residual_threshold &&
                uhat < search.residual_threshold;
      trace.residuals_Uhat.push_back(std::move(uhat));
      if (ok) {
        if (run == 0) run_start = n;
        ++run;
        if (run >= search.window) {
          trace.verdict = {Verdict::Kind::ConvergedToCycle, run_start};
          return trace;
        }
      } else {
        run = 0;
        run_start = -1;
      }
    }
  }
  trace.verdict = {Verdict::Kind::MaxItersExhausted, search.max_iters};
  return trace;
}

std::optional<NumericCycle> extract_cycle(const OrbitTrace& trace,
                                          const SearchConfig& search) {
  if (trace.verdict.kind != Verdict::Kind::ConvergedToCycle)
    throw std::invalid_argument("extract_cycle needs a converged trace");
  const int T = search.cfg.T;
  const long last = static_cast<long>(trace.states.size()) - 1;
  const long tail_begin = std::max<long>(0, last - (T + search.window) + 1);

  for (int tau = 1; tau <= T; ++tau) {
    if (T % tau != 0) continue;
    bool periodic = true;
    HPReal window_dev;
    for (long j = tail_begin; j + tau <= last && periodic; ++j) {
      HPReal dev = (trace.states[static_cast<size_t>(j + tau)] -
                    trace.states[static_cast<size_t>(j)])
                       .abs();
      if (!(dev < search.residual_threshold)) periodic = false;
      if (dev > window_dev) window_dev = dev;
    }
    if (!periodic) continue;

    std::vector<HPReal> pts(trace.states.end() - tau, trace.states.end());
    int min_idx = 0;
    for (int i = 1; i < tau; ++i)
      if (pts[static_cast<size_t>(i)] < pts[static_cast<size_t>(min_idx)]) min_idx = i;
    std::rotate(pts.begin(), pts.begin() + min_idx, pts.end());

    NumericCycle cycle;
    cycle.points = std::move(pts);
    cycle.proper_period = tau;
    cycle.target_period = T;
    cycle.max_residual = window_dev;
    for (int i = 0; i < tau; ++i) {
      HPReal fwd = control_eval(cycle.points[static_cast<size_t>(i)], search.cfg);
      HPReal res = (fwd - cycle.points[static_cast<size_t>((i + 1) % tau)]).abs();
      if (res > cycle.max_residual) cycle.max_residual = res;
    }
    return cycle;
  }
  return std::nullopt;
}

bool cycles_match(const NumericCycle& a, const NumericCycle& b, const HPReal& tol) {
  if (a.proper_period != b.proper_period) return false;
  const int tau = a.proper_period;
  for (int r = 0; r < tau; ++r) {
    bool close = true;
    for (int i = 0; i < tau && close; ++i) {
      HPReal dev = (a.points[static_cast<size_t>(i)] -
                    b.points[static_cast<size_t>((i + r) % tau)])
                       .abs();
      if (dev > tol) close = false;
    }
    if (close) return true;
  }
  return false;
}

namespace {

std::vector<NumericCycle> grid_search_impl(const ControlConfig& cfg, int grid_size,
                                           int precision, const FinderOptions& opts,
                                           bool parallel) {
  if (grid_size < 2) throw std::invalid_argument("grid size must be >= 2");
  if (!(opts.range_lo < opts.range_hi))
    throw std::invalid_argument("grid range must be non-empty");

  std::vector<std::optional<NumericCycle>> slots(static_cast<size_t>(grid_size));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int k = 1; k <= grid_size; ++k) {
    mpq_class step(k, grid_size + 1);
    step.canonicalize();
    mpq_class x0 = opts.range_lo + step * (opts.range_hi - opts.range_lo);
    SearchConfig search = make_search_config(cfg, x0, precision, opts);
    OrbitTrace trace = iterate_controlled(search);
    if (trace.verdict.kind == Verdict::Kind::ConvergedToCycle) {
      auto cycle = extract_cycle(trace, search);
      if (cycle) {
        cycle->seed = x0;
        slots[static_cast<size_t>(k - 1)] = std::move(cycle);
      }
    }
  }

  // deterministic merge in seed order
  const SearchConfig probe = make_search_config(cfg, 0, precision, opts);
  const HPReal tol = HPReal(10, probe.precision) * probe.residual_threshold;
  std::vector<NumericCycle> distinct;
  for (auto& slot : slots) {
    if (!slot) continue;
    bool known = false;
    for (const auto& c : distinct)
      if (cycles_match(c, *slot, tol)) {
        known = true;
        break;
      }
    if (!known) distinct.push_back(std::move(*slot));
  }
  std::sort(distinct.begin(), distinct.end(),
            [](const NumericCycle& a, const NumericCycle& b) {
              if (a.points.front() != b.points.front())
                return a.points.front() < b.points.front();
              return a.proper_period < b.proper_period;
            });
  return distinct;
}

}  // namespace

std::vector<NumericCycle> grid_search(const ControlConfig& cfg, int grid_size,
                                      int precision, const FinderOptions& opts) {
  return grid_search_impl(cfg, grid_size, precision, opts, true);
}

std::vector<NumericCycle> grid_search(const MapParams& params, int T, Regime regime,
                                      const RegimeOffset& offset, int grid_size,
                                      int precision, const FinderOptions& opts) {
  const ControlConfig cfg(params, T, regime, theta_from_offset(params, T, regime, offset));
  return grid_search_impl(cfg, grid_size, precision, opts, true);
}

std::vector<NumericCycle> grid_search_serial(const ControlConfig& cfg, int grid_size,
                                             int precision, const FinderOptions& opts) {
  return grid_search_impl(cfg, grid_size, precision, opts, false);
}

std::vector<NumericCycle> grid_search_serial(const MapParams& params, int T,
                                             Regime regime, const RegimeOffset& offset,
                                             int grid_size, int precision,
                                             const FinderOptions& opts) {
  const ControlConfig cfg(params, T, regime, theta_from_offset(params, T, regime, offset));
  return grid_search_impl(cfg, grid_size, precision, opts, false);
}

bool VerifyReport::all_found_matched() const {
  for (const auto& e : entries)
    if (e.oracle_index < 0) return false;
  return true;
}

VerifyReport verify_against_oracle(const std::vector<NumericCycle>& found,
                                   const std::vector<ExactCycle>& exact,
                                   const mpq_class& tol) {
  VerifyReport report;
  std::vector<int> claimed(exact.size(), 0);

  for (std::size_t fi = 0; fi < found.size(); ++fi) {
    const NumericCycle& nc = found[fi];
    VerifyEntry entry;
    entry.found_index = fi;
    entry.tau = nc.proper_period;
    entry.subcycle = nc.proper_period < nc.target_period;

    std::vector<mpq_class> pts;
    pts.reserve(nc.points.size());
    for (const auto& p : nc.points) pts.push_back(p.to_rational());

    mpq_class best_dev;
    std::ptrdiff_t best = -1;
    for (std::size_t oi = 0; oi < exact.size(); ++oi) {
      const ExactCycle& oc = exact[oi];
      if (oc.T != nc.proper_period) continue;
      const int tau = oc.T;
      // aligned max pointwise deviation, minimized over rotations
      mpq_class aligned = -1;
      for (int r = 0; r < tau; ++r) {
        mpq_class worst = 0;
        for (int i = 0; i < tau; ++i) {
          mpq_class d = ::abs(pts[static_cast<size_t>(i)] -
                              oc.points[static_cast<size_t>((i + r) % tau)]);
          if (d > worst) worst = d;
        }
        if (aligned < 0 || worst < aligned) aligned = worst;
      }
      if (aligned <= tol && (best < 0 || aligned < best_dev)) {
        best = static_cast<std::ptrdiff_t>(oi);
        best_dev = aligned;
      }
    }
    if (best >= 0) {
      entry.oracle_index = best;
      entry.deviation = best_dev;
      ++claimed[static_cast<size_t>(best)];
    }
    report.entries.push_back(std::move(entry));
  }

  for (auto& e : report.entries)
    if (e.oracle_index >= 0 && claimed[static_cast<size_t>(e.oracle_index)] > 1)
      e.ambiguous = true;
  for (std::size_t oi = 0; oi < exact.size(); ++oi)
    if (claimed[oi] == 0) report.missing_oracle.push_back(oi);
  return report;
}

}  // namespace tentctl
