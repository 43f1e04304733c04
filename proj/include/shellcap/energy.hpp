#pragma once

#include <complex>
#include <vector>

#include "shellcap/shell.hpp"

namespace shellcap {

using PointSet = std::vector<IntVec3>;

inline constexpr double kTupleGuard = 1e9;

/// Throws GuardError when n^r exceeds the tuple guard.
void check_tuple_guard(std::size_t n, int r);

/// Sparse table over Z^3 with keys sorted lexicographically.
template <class T>
struct SparseTable {
  std::vector<IntVec3> keys;
  std::vector<T> vals;
  std::size_t size() const { return keys.size(); }
};

/// Unit-weight table over a point set (points are deduplicated and sorted).
SparseTable<std::int64_t> unit_table(PointSet points);

template <class T>
SparseTable<T> convolve(const SparseTable<T>& a, const SparseTable<T>& b);

/// Streaming summary of a convolution: sum |c|^2 and the largest |c|
/// with its lexicographically least key.
template <class T>
struct ConvStats {
  long double sum_sq = 0;      // real weights
  __int128 sum_sq_exact = 0;   // integer weights
  double max_abs = 0;
  std::int64_t max_exact = 0;  // integer weights
  IntVec3 argmax{};
  std::size_t support = 0;
};

template <class T>
ConvStats<T> convolve_stats(const SparseTable<T>& a, const SparseTable<T>& b);

/// r-fold self-convolution statistics (r >= 1).
template <class T>
ConvStats<T> power_stats(const SparseTable<T>& base, int r);

/// Upper corona: points with n1 > |n2| + |n3|.
PointSet upper_part(const PointSet& points);
PointSet upper_shell(double lambda, double delta);

struct RepCountTable {
  int r = 1;
  std::size_t source_size = 0;
  SparseTable<std::int64_t> table;
};

RepCountTable rep_counts(const PointSet& A, int r);
std::int64_t additive_energy(const PointSet& A, int r);

struct ZMax {
  IntVec3 k_star{};
  std::int64_t Z = 0;
};

ZMax z_max(const PointSet& A, int r);

struct EnergyReport {
  double lambda = 0.0;
  double delta = 0.0;
  int r = 2;
  int p = 4;
  bool full_shell = false;
  std::size_t set_size = 0;
  std::int64_t E = 0;
  std::int64_t Z = 0;
  IntVec3 k_star{};
  double bound_E_point = 0.0;  // lambda^p delta^{p/2}
  double bound_E_cap = 0.0;    // lambda^{2p-3} delta^p
  double bound_E = 0.0;
  double bound_Z = 0.0;
  double ratio_E = 0.0;
  double ratio_Z = 0.0;
};

EnergyReport energy_conjecture_report(double lambda, double delta, int r, bool full_shell = false);

}  // namespace shellcap
