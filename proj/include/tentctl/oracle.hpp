#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "tentctl/tentmap.hpp"

namespace tentctl {

// Branch word over {L, R}: L = left branch (x <= 1/2), R = right (x > 1/2).
struct SymbolSequence {
  std::string symbols;  // 'L' / 'R'

  explicit SymbolSequence(std::string s);

  int length() const { return static_cast<int>(symbols.size()); }
  int count_r() const;
  SymbolSequence rotated(int r) const;
  // No proper rotation equals the word itself (proper period == length).
  bool is_primitive() const;
  // Lexicographically smallest among all rotations (L < R).
  bool is_canonical() const;
};

// Composite affine map a*x + b for one branch word; |a| = H^T,
// sign(a) = (-1)^(#R).
struct AffineForm {
  mpq_class a;
  mpq_class b;
};

// One exact T-cycle: points in orbit order starting at the smallest point,
// symbols rotated to stay aligned with the points (points[i] <= 1/2 iff
// symbols[i] == 'L').
struct ExactCycle {
  std::vector<mpq_class> points;
  SymbolSequence symbols;
  int multiplier_sign = 1;  // (-1)^(#R)
  int T = 1;
};

// All canonical primitive binary necklaces of length T in lexicographic
// order; list length equals count_cycles(T). Supported for 1 <= T <= 24.
std::vector<SymbolSequence> primitive_necklaces(int T);

// Affine composition f_{s_T} o ... o f_{s_1} with f_L(x) = H*x,
// f_R(x) = H - H*x.
AffineForm affine_compose(const SymbolSequence& seq, const MapParams& params);

// Solves x = a*x + b exactly and validates every iterate against its
// symbol's branch condition (x <= 1/2 for L, x > 1/2 for R). Inconsistent
// words yield nullopt. Points are rotated to start at the smallest.
std::optional<ExactCycle> solve_cycle(const SymbolSequence& seq,
                                      const MapParams& params);

// All proper T-cycles, sorted by smallest point. For H > 2 the result has
// exactly count_cycles(T) entries; for H = 2 words whose orbit violates a
// branch condition or degenerates are dropped and the count may be smaller.
std::vector<ExactCycle> enumerate_cycles(const MapParams& params, int T);

// Single-threaded reference for the OpenMP path above.
std::vector<ExactCycle> enumerate_cycles_serial(const MapParams& params, int T);

}  // namespace tentctl
