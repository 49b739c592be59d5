#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "tentctl/finder.hpp"
#include "tentctl/tentmap.hpp"

namespace tentctl {

struct HistogramSpec {
  enum class Normalization { Counts, Density };
  int bins = 50;
  Normalization normalization = Normalization::Counts;
};

// Counts over [0,1]: bin i covers [i/B, (i+1)/B), last bin closed at 1.
struct Histogram {
  HistogramSpec spec;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  // count * B / total per bin; integrates to 1 over [0,1].
  mpq_class density(int bin) const;
};

// Bins are assigned by exact rational arithmetic, so gap/edge membership is
// never blurred by rounding. A point outside [0,1] throws std::domain_error
// naming its index.
Histogram histogram(const std::vector<mpq_class>& points, const HistogramSpec& spec);
Histogram histogram_serial(const std::vector<mpq_class>& points, const HistogramSpec& spec);

// Random points of the first type of the Cantor set: s = sum alpha_j * 2/3^j,
// j = 1..depth, alpha_j fair bits. The generator is counter-based (splitmix64
// finalizer over seed and point index), so samples are reproducible and
// independent per point.
struct FirstTypeSample {
  int depth = 1;
  long count = 1;
  std::uint64_t seed = 0;
  std::vector<mpq_class> points;
};

FirstTypeSample sample_first_type(int depth, long count, std::uint64_t seed);
FirstTypeSample sample_first_type_serial(int depth, long count, std::uint64_t seed);

// splitmix64 finalizer; the word stream for point i is
// mix(seed + golden * (i * words_per_point + b + 1)).
std::uint64_t sample_word(std::uint64_t seed, std::uint64_t counter);

struct CloudResult {
  std::vector<mpq_class> points;
  int cycles = 0;  // distinct cycles contributing
};

// Exact union of all proper T-cycle points (oracle route, T <= 24).
CloudResult cycle_point_cloud(const MapParams& params, int T);

// Finder route: one grid search per (regime, offset) scheme, pooling distinct
// cycles (subcycles included, matching what the controlled system
// stabilizes).
using ControlScheme = std::pair<Regime, RegimeOffset>;
CloudResult cycle_point_cloud(const MapParams& params, int T,
                              const std::vector<ControlScheme>& schemes,
                              int grid_size, int precision = 0,
                              const FinderOptions& opts = {});

// Bin indices whose closed span lies strictly inside a removed middle-third
// interval of level <= max_level. Meaningful when bins is a multiple of
// 3^max_level.
std::vector<int> middle_third_gap_bins(int bins, int max_level);

}  // namespace tentctl
