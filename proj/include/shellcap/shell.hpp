#pragma once

#include <vector>

#include "shellcap/linalg.hpp"

namespace shellcap {

/// Integer points with |sqrt(Q(x)) - lambda| < delta, sorted lexicographically.
struct ShellPointSet {
  QuadraticForm form;
  double lambda = 0.0;
  double delta = 0.0;
  std::vector<IntVec3> points;
  // Real forms only: points whose distance to the boundary fell inside the
  // 1e-12 guard band. Always 0 for rational forms.
  std::size_t guard_band_hits = 0;
};

/// Strict shell membership. Rational forms compare integers against
/// precomputed thresholds; real forms use long double.
class ShellTest {
 public:
  ShellTest(const QuadraticForm& Q, double lambda, double delta);

  bool contains(const IntVec3& x) const;
  bool contains(const IntVec3& x, bool& near_boundary) const;
  bool exact() const { return exact_; }

 private:
  bool exact_ = false;
  std::array<std::array<__int128, 3>, 3> B_{};  // denominator-cleared A
  __int128 n_min_ = 0, n_max_ = 0;
  Mat3 A_{};
  long double lambda_ = 0, delta_ = 0;
};

ShellPointSet enumerate_shell(const QuadraticForm& Q, double lambda, double delta);

struct ShellCensus {
  std::size_t count = 0;
  double volume_proxy = 0.0;  // lambda^2 delta
  double ratio = 0.0;
};

ShellCensus shell_census(const ShellPointSet& shell);

/// Box [-R_i, R_i] containing the ellipsoid Q(x) <= r^2.
std::array<std::int64_t, 3> bounding_box(const QuadraticForm& Q, double r);

}  // namespace shellcap
