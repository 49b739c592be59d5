// Times the OpenMP kernels against their serial references and checks that
// both produce identical results.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tentctl/cantor.hpp"
#include "tentctl/finder.hpp"
#include "tentctl/oracle.hpp"

using namespace tentctl;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n",
              name.c_str(), serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
              equal ? "outputs equal" : "OUTPUTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n\n", omp_get_max_threads());
  // spin the thread pool up once so the first timed kernel is not charged
  // for thread creation
  volatile long sink = 0;
#pragma omp parallel for reduction(+ : sink)
  for (long i = 0; i < 1000000; ++i) sink += i;
#else
  std::printf("built without OpenMP; both columns run serially\n\n");
#endif

  {
    MapParams params{mpq_class(3)};
    std::vector<ExactCycle> a, b;
    double ts = time_ms([&] { a = enumerate_cycles_serial(params, 20); });
    double tp = time_ms([&] { b = enumerate_cycles(params, 20); });
    bool equal = a.size() == b.size();
    for (size_t i = 0; equal && i < a.size(); ++i)
      equal = a[i].points == b[i].points && a[i].symbols.symbols == b[i].symbols.symbols;
    report("enumerate H=3 T=20", ts, tp, equal);
  }

  {
    MapParams params{mpq_class(4)};
    RegimeOffset offset{mpq_class(-2, 5)};
    std::vector<NumericCycle> a, b;
    double ts = time_ms([&] {
      a = grid_search_serial(params, 5, Regime::NegativeMultiplier, offset, 256, 18);
    });
    double tp = time_ms([&] {
      b = grid_search(params, 5, Regime::NegativeMultiplier, offset, 256, 18);
    });
    bool equal = a.size() == b.size();
    for (size_t i = 0; equal && i < a.size(); ++i) {
      equal = a[i].proper_period == b[i].proper_period &&
              a[i].points.size() == b[i].points.size();
      for (size_t j = 0; equal && j < a[i].points.size(); ++j)
        equal = a[i].points[j] == b[i].points[j];
    }
    report("grid_search H=4 T=5 G=256", ts, tp, equal);
  }

  {
    FirstTypeSample a, b;
    double ts = time_ms([&] { a = sample_first_type_serial(25, 500000, 1); });
    double tp = time_ms([&] { b = sample_first_type(25, 500000, 1); });
    report("sample_first_type M=5e5", ts, tp, a.points == b.points);
  }

  {
    FirstTypeSample sample = sample_first_type(25, 500000, 1);
    HistogramSpec spec;
    spec.bins = 81;
    Histogram a, b;
    double ts = time_ms([&] { a = histogram_serial(sample.points, spec); });
    double tp = time_ms([&] { b = histogram(sample.points, spec); });
    report("histogram M=5e5 B=81", ts, tp, a.counts == b.counts);
  }

  return 0;
}
