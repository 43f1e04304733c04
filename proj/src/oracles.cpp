#include "shellcap/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shellcap/errors.hpp"

namespace shellcap {

CurveKind parse_curve(const std::string& name) {
  if (name == "circle") return CurveKind::Circle;
  if (name == "parabola") return CurveKind::Parabola;
  if (name == "hyperbola") return CurveKind::Hyperbola;
  if (name == "linear") return CurveKind::Linear;
  throw ConfigError("curve: unknown catalog entry '" + name + "'");
}

std::string curve_name(CurveKind k) {
  switch (k) {
    case CurveKind::Circle: return "circle";
    case CurveKind::Parabola: return "parabola";
    case CurveKind::Hyperbola: return "hyperbola";
    case CurveKind::Linear: return "linear";
  }
  return "?";
}

double curve_value(const CurveSpec& s, std::int64_t x) {
  const double xd = static_cast<double>(x);
  switch (s.kind) {
    case CurveKind::Circle: return s.Y * std::sqrt(1.0 - xd * xd / (4.0 * s.X * s.X));
    case CurveKind::Parabola: return s.Y * xd * xd / (s.X * s.X);
    case CurveKind::Hyperbola: return s.Y * s.X / (s.X + xd);
    case CurveKind::Linear: return s.Y * xd / s.X;
  }
  return 0.0;
}

std::int64_t count_near_curve(const CurveSpec& spec) {
  if (!(spec.X >= 1)) throw DomainError("X must be at least 1");
  const auto xmax = static_cast<std::int64_t>(std::floor(spec.X));
  std::int64_t total = 0;
#pragma omp parallel for reduction(+ : total)
  for (std::int64_t x = 0; x <= xmax; ++x) {
    double t = curve_value(spec, x);
    auto hi = static_cast<std::int64_t>(std::floor(t + spec.delta));
    auto lo = static_cast<std::int64_t>(std::ceil(t - spec.delta));
    if (hi >= lo) total += hi - lo + 1;
  }
  return total;
}

double fejer_kernel(int k, double t) {
  double u = t - std::round(t);
  if (u == 0.0) return k;
  double r = std::sin(std::numbers::pi * k * u) / std::sin(std::numbers::pi * u);
  return r * r / k;
}

int max_admissible_k(double delta) {
  if (!(delta > 0)) return 0;
  return static_cast<int>(std::floor(1.0 / (2.0 * std::numbers::pi * delta)));
}

double fejer_majorant(const CurveSpec& spec, int k) {
  if (k < 1 || !(spec.delta > 0) || k > 1.0 / (2.0 * std::numbers::pi * spec.delta))
    throw DomainError("majorant invalid for this k");
  if (!(spec.X >= 1)) throw DomainError("X must be at least 1");
  const auto xmax = static_cast<std::int64_t>(std::floor(spec.X));
  double sum = 0;
  for (std::int64_t x = 0; x <= xmax; ++x) sum += fejer_kernel(k, curve_value(spec, x));
  return 3.0 / k * sum;
}

namespace {

void check_binary(const BinaryForm& q) {
  if (!(q.q1 > 0) || !(q.q1 * q.q3 - q.q2 * q.q2 > 0)) throw DomainError("binary form is not positive definite");
}

// Strict |N - A^2 B^2| < eta A^2 B^2 with N = A^2 B^2 q(a/A, b/B).
struct AnnulusTest {
  long double q1, q2, q3, A, B, AB2, tol;
  bool operator()(std::int64_t a, std::int64_t b) const {
    long double n = q1 * a * a * B * B + 2 * q2 * a * b * A * B + q3 * b * b * A * A;
    return std::fabs(n - AB2) < tol;
  }
};

}  // namespace

std::int64_t count_annulus(const BinaryForm& q, double A, double B, double eta) {
  check_binary(q);
  if (!(A >= 1) || !(B >= 1) || !(eta > 0)) throw DomainError("annulus needs A, B >= 1 and eta > 0");
  const long double AB = static_cast<long double>(A) * B;
  AnnulusTest test{q.q1, q.q2, q.q3, A, B, AB * AB, static_cast<long double>(eta) * AB * AB};
  const double D = q.q1 * q.q3 - q.q2 * q.q2;
  const double outer = 1 + eta, inner = 1 - eta;
  const auto amax = static_cast<std::int64_t>(std::floor(A * std::sqrt(outer * q.q3 / D))) + 1;

  std::int64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(dynamic)
  for (std::int64_t a = -amax; a <= amax; ++a) {
    // In y = b/B: q3 y^2 + 2 q2 x y + q1 x^2 - c <= 0
    const double x = static_cast<double>(a) / A;
    auto roots = [&](double c, double& lo, double& hi) {
      double disc = q.q2 * q.q2 * x * x - q.q3 * (q.q1 * x * x - c);
      if (disc < 0) return false;
      double s = std::sqrt(disc);
      lo = (-q.q2 * x - s) / q.q3 * B;
      hi = (-q.q2 * x + s) / q.q3 * B;
      return true;
    };
    double olo, ohi;
    if (!roots(outer, olo, ohi)) {
      // Boundary rows: fall back to a short scan around the vertex.
      olo = ohi = -q.q2 * x / q.q3 * B;
    }
    std::int64_t lo = static_cast<std::int64_t>(std::floor(olo)) - 1;
    std::int64_t hi = static_cast<std::int64_t>(std::ceil(ohi)) + 1;
    std::int64_t skip_lo = 1, skip_hi = 0;
    double ilo, ihi;
    if (inner > 0 && roots(inner, ilo, ihi)) {
      skip_lo = static_cast<std::int64_t>(std::ceil(ilo)) + 1;
      skip_hi = static_cast<std::int64_t>(std::floor(ihi)) - 1;
    }
    for (std::int64_t b = lo; b <= hi; ++b) {
      if (b >= skip_lo && b <= skip_hi) {
        b = skip_hi;
        continue;
      }
      if (test(a, b)) ++total;
    }
  }
  return total;
}

AnnulusReport annulus_report(const BinaryForm& q, double A, double B, double eta) {
  AnnulusReport r;
  r.count = count_annulus(q, A, B, eta);
  const double AB = A * B;
  r.bound_third = eta * AB + std::cbrt(AB);
  r.bound_huxley = eta * AB + std::pow(AB, 131.0 / 416.0);
  r.huxley_window = std::pow(B, 147.0 / 253.0) <= A && A <= std::pow(B, 253.0 / 147.0);
  r.lemma_window = std::pow(B, 147.0 / 181.0) <= A && A <= std::pow(B, 181.0 / 147.0);
  return r;
}

BoundId parse_bound(const std::string& name) {
  for (auto id : all_bounds())
    if (bound_name(id) == name) return id;
  throw ConfigError("bound_id: unknown bound '" + name + "'");
}

std::string bound_name(BoundId id) {
  switch (id) {
    case BoundId::Rank2Cubic: return "rank2_cubic";
    case BoundId::Rank2Improved: return "rank2_improved";
    case BoundId::Rank2Incidence: return "rank2_incidence";
    case BoundId::Rank1Improved: return "rank1_improved";
    case BoundId::Rank1Simple: return "rank1_simple";
  }
  return "?";
}

int bound_rank(BoundId id) {
  return (id == BoundId::Rank1Improved || id == BoundId::Rank1Simple) ? 1 : 2;
}

const std::vector<BoundId>& all_bounds() {
  static const std::vector<BoundId> ids{BoundId::Rank2Cubic, BoundId::Rank2Improved, BoundId::Rank2Incidence,
                                        BoundId::Rank1Improved, BoundId::Rank1Simple};
  return ids;
}

double bound_value(BoundId id, double lambda, double delta, int s) {
  const double ld = lambda * delta;
  const double two_s = std::ldexp(1.0, s);
  const double x = ld / two_s;
  const double tail = std::pow(lambda, 1903.0 / 832.0) * std::pow(delta, 1379.0 / 832.0);
  switch (id) {
    case BoundId::Rank2Cubic: return x * x * x;
    case BoundId::Rank2Improved: return x * x + delta * x * x * x * x;
    case BoundId::Rank2Incidence:
      return ld * ld * ld * std::pow(2.0, -2.5 * s) + tail * std::pow(2.0, -1795.0 * s / 832.0);
    case BoundId::Rank1Improved:
      return ld * ld * ld * std::pow(2.0, -4.0 * s) + tail * std::pow(2.0, -1379.0 * s / 416.0);
    case BoundId::Rank1Simple:
      return std::pow(lambda, 7.0 / 3.0) * std::pow(delta, 5.0 / 3.0) * std::pow(2.0, -10.0 * s / 3.0);
  }
  throw DomainError("unknown bound id");
}

BoundRatioReport bound_ratio_report(const CapCensus& census, BoundId id) {
  BoundRatioReport rep;
  rep.id = id;
  rep.lambda = census.lambda;
  rep.delta = census.delta;
  const int rank = bound_rank(id);
  const double floor_n = std::max(1.0, census.lambda * census.delta * census.delta);
  int smax = 0;
  for (const auto& [key, count] : census.bins) smax = std::max(smax, key.second);
  for (int s = 0; s <= smax; ++s) {
    if (!(std::ldexp(1.0, s + 1) > floor_n)) continue;
    auto it = census.bins.find({rank, s});
    BoundRatioRow row;
    row.s = s;
    row.observed = it == census.bins.end() ? 0.0 : static_cast<double>(it->second);
    row.bound = bound_value(id, census.lambda, census.delta, s);
    row.ratio = row.observed / row.bound;
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace shellcap
