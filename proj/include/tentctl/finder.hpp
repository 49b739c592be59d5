#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "tentctl/control.hpp"
#include "tentctl/hpreal.hpp"
#include "tentctl/oracle.hpp"
#include "tentctl/tentmap.hpp"

namespace tentctl {

// Working precision for a period-T search: ceil(1.05 * T * log10(H)) + 10.
// The 1.05*T*log10(H) part matches the growth of the cycle multiplier; the
// rest is working margin.
int default_precision(const MapParams& params, int T);

// Knobs shared by single-seed and grid searches. Zero-valued fields pick
// defaults at config time: window = T + 5, threshold = 10^(5-P) (five guard
// digits below the working precision), divergence bound = 10*H^2.
struct FinderOptions {
  long max_iters = 400;
  int window = 0;
  mpq_class threshold = 0;
  mpq_class divergence = 0;
  mpq_class range_lo = 0;  // grid seeds drawn from (range_lo, range_hi)
  mpq_class range_hi = 1;
};

struct SearchConfig {
  ControlConfig cfg;
  HPReal x0;
  long max_iters;
  HPReal residual_threshold;
  HPReal divergence_bound;
  int precision;
  int window;
};

// Validates the precision rule and the requirement that the threshold sit at
// least two orders of magnitude below |1 - theta|; throws on violation.
// precision == 0 picks default_precision(cfg.params, cfg.T).
SearchConfig make_search_config(const ControlConfig& cfg, const mpq_class& x0,
                                int precision = 0, const FinderOptions& opts = {});

struct Verdict {
  enum class Kind { ConvergedToCycle, Diverged, MaxItersExhausted };
  Kind kind = Kind::MaxItersExhausted;
  long index = -1;  // first in-threshold step (converged) / crossing step (diverged)
};

// Iteration record. states[n] = x_n; residuals_U[n] = |F(x_n) - f(x_n)|;
// residuals_Uhat[n] = |x_{n+T} - x_n| (available once n + T steps exist).
struct OrbitTrace {
  std::vector<HPReal> states;
  std::vector<HPReal> residuals_U;
  std::vector<HPReal> residuals_Uhat;
  Verdict verdict;
};

// Runs x_{n+1} = F(x_n) until both residual checkpoints stay below the
// threshold for `window` consecutive steps, the state crosses the divergence
// bound, or max_iters is reached. Divergence is a verdict, not an error.
OrbitTrace iterate_controlled(const SearchConfig& search);

struct NumericCycle {
  std::vector<HPReal> points;  // canonical rotation starting at smallest point
  int proper_period = 1;       // tau, smallest divisor of T that closes the tail
  int target_period = 1;
  HPReal max_residual;
  mpq_class seed;  // the seed that produced this cycle
};

// Extracts the proper period from a converged trace: smallest divisor tau of
// T whose tail window is tau-periodic under the threshold. nullopt when no
// divisor (T included) qualifies, signalling a false convergence flag.
std::optional<NumericCycle> extract_cycle(const OrbitTrace& trace,
                                          const SearchConfig& search);

// True when the two cycles have equal period and some rotation brings them
// pointwise within tol.
bool cycles_match(const NumericCycle& a, const NumericCycle& b, const HPReal& tol);

// Runs iterate_controlled from G seeds range_lo + k*(range_hi-range_lo)/(G+1),
// k = 1..G, collects converged cycles, deduplicates within 10*threshold and
// returns them sorted by smallest point. Seeds run independently (OpenMP);
// the merge is a deterministic sequential reduction in seed order.
std::vector<NumericCycle> grid_search(const ControlConfig& cfg, int grid_size,
                                      int precision = 0, const FinderOptions& opts = {});
std::vector<NumericCycle> grid_search(const MapParams& params, int T, Regime regime,
                                      const RegimeOffset& offset, int grid_size,
                                      int precision = 0, const FinderOptions& opts = {});

// Single-threaded references for the OpenMP paths above.
std::vector<NumericCycle> grid_search_serial(const ControlConfig& cfg, int grid_size,
                                             int precision = 0,
                                             const FinderOptions& opts = {});
std::vector<NumericCycle> grid_search_serial(const MapParams& params, int T,
                                             Regime regime, const RegimeOffset& offset,
                                             int grid_size, int precision = 0,
                                             const FinderOptions& opts = {});

struct VerifyEntry {
  std::size_t found_index = 0;
  int tau = 1;
  std::ptrdiff_t oracle_index = -1;  // -1: no oracle cycle within tolerance
  mpq_class deviation;               // aligned max pointwise deviation
  bool subcycle = false;             // tau < target period
  bool ambiguous = false;            // oracle cycle claimed by several found cycles
};

struct VerifyReport {
  std::vector<VerifyEntry> entries;
  std::vector<std::size_t> missing_oracle;  // oracle cycles no found cycle matched
  bool all_found_matched() const;
};

// Greedy nearest matching of found cycles against exact ones (compared only
// against oracle cycles of the same period, so subcycles need the caller to
// include divisor-period cycles in `exact`).
VerifyReport verify_against_oracle(const std::vector<NumericCycle>& found,
                                   const std::vector<ExactCycle>& exact,
                                   const mpq_class& tol);

}  // namespace tentctl
