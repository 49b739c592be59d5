#include "tentctl/oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace tentctl {

SymbolSequence::SymbolSequence(std::string s) : symbols(std::move(s)) {
  if (symbols.empty()) throw std::invalid_argument("symbol sequence must be non-empty");
  for (char c : symbols)
    if (c != 'L' && c != 'R')
      throw std::invalid_argument("symbol sequence may contain only L and R");
}

int SymbolSequence::count_r() const {
  return static_cast<int>(std::count(symbols.begin(), symbols.end(), 'R'));
}

SymbolSequence SymbolSequence::rotated(int r) const {
  const int n = length();
  r = ((r % n) + n) % n;
  return SymbolSequence(symbols.substr(r) + symbols.substr(0, r));
}

bool SymbolSequence::is_primitive() const {
  const int n = length();
  for (int r = 1; r < n; ++r)
    if (rotated(r).symbols == symbols) return false;
  return true;
}

bool SymbolSequence::is_canonical() const {
  const int n = length();
  for (int r = 1; r < n; ++r)
    if (rotated(r).symbols < symbols) return false;
  return true;
}

std::vector<SymbolSequence> primitive_necklaces(int T) {
  if (T < 1 || T > 24)
    throw std::invalid_argument("necklace enumeration supports 1 <= T <= 24");
  // FKM generation over {0, 1}; p == T selects the aperiodic (Lyndon) words,
  // which are exactly the canonical rotations.
  std::vector<SymbolSequence> out;
  std::vector<int> a(static_cast<size_t>(T) + 1, 0);
  std::function<void(int, int)> db = [&](int t, int p) {
    if (t > T) {
      if (p == T) {
        std::string w(static_cast<size_t>(T), 'L');
        for (int i = 1; i <= T; ++i)
          if (a[static_cast<size_t>(i)]) w[static_cast<size_t>(i - 1)] = 'R';
        out.emplace_back(std::move(w));
      }
      return;
    }
    a[static_cast<size_t>(t)] = a[static_cast<size_t>(t - p)];
    db(t + 1, p);
    if (a[static_cast<size_t>(t - p)] == 0) {
      a[static_cast<size_t>(t)] = 1;
      db(t + 1, t);
    }
  };
  db(1, 1);
  return out;
}

AffineForm affine_compose(const SymbolSequence& seq, const MapParams& params) {
  AffineForm f{mpq_class(1), mpq_class(0)};
  for (char s : seq.symbols) {
    if (s == 'L') {
      f.a *= params.H;
      f.b *= params.H;
    } else {
      f.a *= -params.H;
      f.b = params.H * (1 - f.b);
    }
  }
  return f;
}

std::optional<ExactCycle> solve_cycle(const SymbolSequence& seq,
                                      const MapParams& params) {
  const int T = seq.length();
  const AffineForm f = affine_compose(seq, params);
  // |a| = H^T >= 2^T > 1, so 1 - a never vanishes
  mpq_class x = f.b / (1 - f.a);
  const mpq_class half(1, 2);

  std::vector<mpq_class> pts;
  pts.reserve(static_cast<size_t>(T));
  mpq_class cur = x;
  for (int i = 0; i < T; ++i) {
    const bool left = cur <= half;
    if (left != (seq.symbols[static_cast<size_t>(i)] == 'L')) return std::nullopt;
    pts.push_back(cur);
    cur = tent_eval(cur, params);
  }
  // degenerate orbits (possible at H = 2) are rejected
  for (int i = 0; i < T; ++i)
    for (int j = i + 1; j < T; ++j)
      if (pts[static_cast<size_t>(i)] == pts[static_cast<size_t>(j)]) return std::nullopt;

  int min_idx = 0;
  for (int i = 1; i < T; ++i)
    if (pts[static_cast<size_t>(i)] < pts[static_cast<size_t>(min_idx)]) min_idx = i;

  ExactCycle cycle{std::vector<mpq_class>(), seq.rotated(min_idx),
                   seq.count_r() % 2 == 0 ? 1 : -1, T};
  cycle.points.reserve(static_cast<size_t>(T));
  for (int i = 0; i < T; ++i)
    cycle.points.push_back(pts[static_cast<size_t>((min_idx + i) % T)]);
  return cycle;
}

namespace {

std::vector<ExactCycle> enumerate_impl(const MapParams& params, int T, bool parallel) {
  const std::vector<SymbolSequence> necklaces = primitive_necklaces(T);
  const long n = static_cast<long>(necklaces.size());
  std::vector<std::optional<ExactCycle>> slots(necklaces.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < n; ++i)
    slots[static_cast<size_t>(i)] = solve_cycle(necklaces[static_cast<size_t>(i)], params);
  std::vector<ExactCycle> out;
  out.reserve(necklaces.size());
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  std::sort(out.begin(), out.end(), [](const ExactCycle& a, const ExactCycle& b) {
    return a.points.front() < b.points.front();
  });
  return out;
}

}  // namespace

std::vector<ExactCycle> enumerate_cycles(const MapParams& params, int T) {
  return enumerate_impl(params, T, true);
}

std::vector<ExactCycle> enumerate_cycles_serial(const MapParams& params, int T) {
  return enumerate_impl(params, T, false);
}

}  // namespace tentctl
