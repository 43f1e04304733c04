#pragma once

#include <string>
#include <vector>

#include "shellcap/caps.hpp"

namespace shellcap {

enum class CurveKind { Circle, Parabola, Hyperbola, Linear };

CurveKind parse_curve(const std::string& name);
std::string curve_name(CurveKind k);

/// {(x,y) in Z^2 : x in [0,X], |y - Y G(x/X)| <= delta}
struct CurveSpec {
  CurveKind kind = CurveKind::Parabola;
  double X = 1.0;
  double Y = 1.0;
  double delta = 0.0;
};

double curve_value(const CurveSpec& spec, std::int64_t x);  // Y G(x/X)
std::int64_t count_near_curve(const CurveSpec& spec);

/// F_k(t) = sum_{|j|<=k} (1-|j|/k) e(jt) = (1/k) (sin(pi k t)/sin(pi t))^2.
double fejer_kernel(int k, double t);
int max_admissible_k(double delta);  // floor(1/(2 pi delta))
double fejer_majorant(const CurveSpec& spec, int k);

/// q(x,y) = q1 x^2 + 2 q2 x y + q3 y^2
struct BinaryForm {
  double q1 = 1.0;
  double q2 = 0.0;
  double q3 = 1.0;
};

/// #{(a,b) : |q(a/A, b/B) - 1| < eta}
std::int64_t count_annulus(const BinaryForm& q, double A, double B, double eta);

struct AnnulusReport {
  std::int64_t count = 0;
  double bound_third = 0.0;    // eta A B + (A B)^{1/3}
  double bound_huxley = 0.0;   // eta A B + (A B)^{131/416}
  bool huxley_window = false;  // B^{147/253} <= A <= B^{253/147}
  bool lemma_window = false;   // B^{147/181} <= A <= B^{181/147}
};

AnnulusReport annulus_report(const BinaryForm& q, double A, double B, double eta);

enum class BoundId { Rank2Cubic, Rank2Improved, Rank2Incidence, Rank1Improved, Rank1Simple };

BoundId parse_bound(const std::string& name);
std::string bound_name(BoundId id);
int bound_rank(BoundId id);
const std::vector<BoundId>& all_bounds();

double bound_value(BoundId id, double lambda, double delta, int s);

struct BoundRatioRow {
  int s = 0;
  double observed = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct BoundRatioReport {
  BoundId id = BoundId::Rank2Cubic;
  double lambda = 0.0;
  double delta = 0.0;
  std::vector<BoundRatioRow> rows;
  double max_ratio = 0.0;
};

/// Rows for every dyadic s with 2^{s+1} > max(1, lambda delta^2), up to the
/// largest populated bin.
BoundRatioReport bound_ratio_report(const CapCensus& census, BoundId id);

}  // namespace shellcap
