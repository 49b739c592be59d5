#include "tentctl/cantor.hpp"

#include <stdexcept>

#include "tentctl/oracle.hpp"
#include "tentctl/rational.hpp"

namespace tentctl {

mpq_class Histogram::density(int bin) const {
  if (total == 0) return 0;
  mpq_class d(counts[static_cast<size_t>(bin)] * static_cast<unsigned long>(spec.bins),
              total);
  d.canonicalize();
  return d;
}

namespace {

// -1 when x lies outside [0,1]
int bin_of(const mpq_class& x, int bins) {
  if (x < 0 || x > 1) return -1;
  if (x == 1) return bins - 1;  // last bin closed
  mpz_class idx = (x.get_num() * bins) / x.get_den();  // floor: operands >= 0
  return static_cast<int>(idx.get_si());
}

Histogram histogram_impl(const std::vector<mpq_class>& points,
                         const HistogramSpec& spec, bool parallel) {
  if (spec.bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  Histogram h;
  h.spec = spec;
  h.counts.assign(static_cast<size_t>(spec.bins), 0);
  h.total = points.size();
  const long n = static_cast<long>(points.size());
  long bad = -1;  // smallest offending index; exceptions cannot cross omp regions
#pragma omp parallel if (parallel)
  {
    std::vector<std::uint64_t> local(static_cast<size_t>(spec.bins), 0);
    long my_bad = -1;
#pragma omp for nowait
    for (long i = 0; i < n; ++i) {
      int b = bin_of(points[static_cast<size_t>(i)], spec.bins);
      if (b < 0) {
        if (my_bad < 0 || i < my_bad) my_bad = i;
        continue;
      }
      ++local[static_cast<size_t>(b)];
    }
#pragma omp critical
    {
      for (int b = 0; b < spec.bins; ++b)
        h.counts[static_cast<size_t>(b)] += local[static_cast<size_t>(b)];
      if (my_bad >= 0 && (bad < 0 || my_bad < bad)) bad = my_bad;
    }
  }
  if (bad >= 0)
    throw std::domain_error("point at index " + std::to_string(bad) +
                            " outside [0,1]");
  return h;
}

}  // namespace

Histogram histogram(const std::vector<mpq_class>& points, const HistogramSpec& spec) {
  return histogram_impl(points, spec, true);
}

Histogram histogram_serial(const std::vector<mpq_class>& points,
                           const HistogramSpec& spec) {
  return histogram_impl(points, spec, false);
}

std::uint64_t sample_word(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

FirstTypeSample sample_impl(int depth, long count, std::uint64_t seed, bool parallel) {
  if (depth < 1) throw std::invalid_argument("sample depth must be >= 1");
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  FirstTypeSample sample;
  sample.depth = depth;
  sample.count = count;
  sample.seed = seed;
  sample.points.resize(static_cast<size_t>(count));

  const int words = (depth + 63) / 64;
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 3u, static_cast<unsigned long>(depth));

#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < count; ++i) {
    // numerator of sum alpha_j * 2 * 3^(depth-j) built most-significant first
    mpz_class num(0);
    for (int j = 1; j <= depth; ++j) {
      const int b = (j - 1) / 64;
      const int bit = (j - 1) % 64;
      const std::uint64_t w = sample_word(
          seed, static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(words) +
                    static_cast<std::uint64_t>(b));
      num *= 3;
      if ((w >> bit) & 1u) num += 2;
    }
    mpq_class q(num, den);
    q.canonicalize();
    sample.points[static_cast<size_t>(i)] = std::move(q);
  }
  return sample;
}

}  // namespace

FirstTypeSample sample_first_type(int depth, long count, std::uint64_t seed) {
  return sample_impl(depth, count, seed, true);
}

FirstTypeSample sample_first_type_serial(int depth, long count, std::uint64_t seed) {
  return sample_impl(depth, count, seed, false);
}

CloudResult cycle_point_cloud(const MapParams& params, int T) {
  CloudResult cloud;
  auto cycles = enumerate_cycles(params, T);
  cloud.cycles = static_cast<int>(cycles.size());
  for (const auto& c : cycles)
    cloud.points.insert(cloud.points.end(), c.points.begin(), c.points.end());
  return cloud;
}

CloudResult cycle_point_cloud(const MapParams& params, int T,
                              const std::vector<ControlScheme>& schemes,
                              int grid_size, int precision,
                              const FinderOptions& opts) {
  CloudResult cloud;
  const int prec = precision == 0 ? default_precision(params, T) : precision;
  mpq_class thr = opts.threshold;
  if (thr == 0) {
    thr = 1;
    thr /= pow10_z(static_cast<unsigned long>(prec - 5));
  }
  const HPReal tol = HPReal::from_rational(10 * thr, prec);
  std::vector<NumericCycle> pool;
  for (const auto& [regime, offset] : schemes) {
    auto found = grid_search(params, T, regime, offset, grid_size, precision, opts);
    for (auto& c : found) {
      bool known = false;
      for (const auto& seen : pool)
        if (cycles_match(seen, c, tol)) {
          known = true;
          break;
        }
      if (!known) pool.push_back(std::move(c));
    }
  }
  cloud.cycles = static_cast<int>(pool.size());
  for (const auto& c : pool)
    for (const auto& p : c.points) cloud.points.push_back(p.to_rational());
  return cloud;
}

std::vector<int> middle_third_gap_bins(int bins, int max_level) {
  struct Gap {
    mpq_class lo, hi;
  };
  std::vector<Gap> gaps;
  // removed middle thirds, breadth-first over surviving intervals
  std::vector<Gap> level{{mpq_class(0), mpq_class(1)}};
  for (int l = 1; l <= max_level; ++l) {
    std::vector<Gap> next;
    for (const auto& seg : level) {
      mpq_class w = (seg.hi - seg.lo) / 3;
      gaps.push_back({seg.lo + w, seg.hi - w});
      next.push_back({seg.lo, seg.lo + w});
      next.push_back({seg.hi - w, seg.hi});
    }
    level = std::move(next);
  }
  std::vector<int> out;
  for (int i = 0; i < bins; ++i) {
    mpq_class left(i, bins), right(i + 1, bins);
    left.canonicalize();
    right.canonicalize();
    for (const auto& g : gaps)
      if (left > g.lo && right < g.hi) {
        out.push_back(i);
        break;
      }
  }
  return out;
}

}  // namespace tentctl
