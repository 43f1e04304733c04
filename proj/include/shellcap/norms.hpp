#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "shellcap/caps.hpp"

namespace shellcap {

/// f(x) = sum_n a_n e(n.x), support sorted lexicographically.
struct CoefficientVector {
  std::vector<IntVec3> support;
  std::vector<std::complex<double>> weights;

  bool integer_weights() const;
  std::int64_t max_frequency() const;  // max |n_i|
};

enum class QuasimodeKind { Point, Cap };
std::string kind_name(QuasimodeKind k);

CoefficientVector make_point_quasimode(const ShellPointSet& shell);
CoefficientVector make_cap_quasimode(const Cap& cap);

/// ||f||_2 by Parseval.
double l2_norm(const CoefficientVector& f);

struct EvenNorm {
  double norm = 0.0;               // ||f||_{2r}
  long double power = 0;           // ||f||_{2r}^{2r}
  std::optional<std::int64_t> exact;  // set for integer weights
};

/// ||f||_{2r} through r-fold representation sums.
EvenNorm lp_norm_even(const CoefficientVector& f, int r);

int default_grid_size(double lambda);  // smallest power of two > 4 lambda

/// (N^{-3} sum_grid |f|^p)^{1/p} for each p, one FFT pass.
std::vector<double> lp_norm_grid_multi(const CoefficientVector& f, const std::vector<double>& ps, int N);
double lp_norm_grid(const CoefficientVector& f, double p, int N);

struct GridEstimate {
  double value = 0.0;
  double error = 0.0;  // |value(N) - value(2N)|
  int N = 0;
};

GridEstimate lp_norm_grid_with_error(const CoefficientVector& f, double p, int N);

/// p = +infinity is accepted.
struct ConjecturedBound {
  double cap_term = 0.0;    // (lambda delta)^{1/2 - 1/p}
  double point_term = 0.0;  // lambda^{1 - 3/p} delta^{1/2}
  double total = 0.0;
};

ConjecturedBound conjectured_bound(double lambda, double delta, double p);

enum class Regime { PointFocusing, GeodesicFocusing, Boundary };
std::string regime_name(Regime r);

/// PointFocusing when the point term dominates, i.e. delta > lambda^{2 - p/2}.
Regime regime_classify(double lambda, double delta, double p);

/// delta within a factor `factor` of lambda^{2 - p/2}.
bool near_regime_boundary(double lambda, double delta, double p, double factor = 2.0);

struct RegionValue {
  double exponent = 0.0;
  std::optional<Rational> exact;  // rational p only
  int piece = 0;                  // 1..6
  bool at_breakpoint = false;
  bool continuous = true;         // left and right pieces agree here
  double left = 0.0;              // limits from either side at a breakpoint
  double right = 0.0;
};

/// Exponent e(p) of the proven region delta > lambda^{e(p)}.
RegionValue proven_region_threshold(const Rational& p);
RegionValue proven_region_threshold(double p);  // accepts +infinity
/// Exact value of a single piece at p, ignoring its interval.
Rational region_piece(int piece, const Rational& p);

struct FewManyMasks {
  std::vector<bool> few;
  std::vector<bool> many;
};

inline constexpr double kFewManyConstant = 4.0;

/// Point is "few" when its cap holds at most 4 (lambda delta^2 + 1) points.
FewManyMasks split_few_many(const ShellPointSet& shell, const std::vector<Cap>& cover);

struct NormEstimate {
  double p = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
  double ratio = 0.0;  // ||f||_p / ||f||_2
  double bound = 0.0;
  Regime regime = Regime::Boundary;
  std::string method;  // even-exact | grid
  QuasimodeKind kind = QuasimodeKind::Point;
};

/// ||f||_p / ||f||_2 for even p, exact when the tuple guard allows, grid otherwise.
NormEstimate estimate_ratio(const CoefficientVector& f, double lambda, double delta, int p);

struct WitnessRow {
  int p = 0;
  NormEstimate point;
  NormEstimate best_cap;
  QuasimodeKind winner = QuasimodeKind::Point;
  double bound = 0.0;
  Regime regime = Regime::Boundary;
  bool exempt = false;  // near the regime boundary
};

/// Point quasimode against every cap quasimode, for each even p.
std::vector<WitnessRow> quasimode_witnesses(const ShellPointSet& shell, const std::vector<Cap>& cover,
                                            const std::vector<int>& ps);

}  // namespace shellcap
