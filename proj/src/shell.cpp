#include "shellcap/shell.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>

#include "shellcap/errors.hpp"

namespace shellcap {

namespace mp = boost::multiprecision;

namespace {

__int128 to_i128(const mp::cpp_int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw GuardError("shell threshold exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

mp::cpp_int floor_div(const mp::cpp_rational& r) {
  mp::cpp_int n = mp::numerator(r), d = mp::denominator(r);
  mp::cpp_int q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

mp::cpp_int ceil_div(const mp::cpp_rational& r) { return -floor_div(-r); }

void check_args(double lambda, double delta) {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
  if (!(delta > 0) || !(delta < lambda)) throw DomainError("delta must lie in (0, lambda)");
}

}  // namespace

ShellTest::ShellTest(const QuadraticForm& Q, double lambda, double delta)
    : A_(Q.A), lambda_(lambda), delta_(delta) {
  check_args(lambda, delta);
  if (!Q.exact) return;
  exact_ = true;
  const RatMat3& R = *Q.exact;
  std::int64_t D = 1;
  for (const auto& row : R)
    for (const auto& e : row) D = std::lcm(D, e.denominator());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) B_[i][j] = static_cast<__int128>(R[i][j].numerator()) * (D / R[i][j].denominator());
  // Doubles convert to their exact dyadic values.
  mp::cpp_rational lam(lambda), del(delta);
  mp::cpp_rational lo = (lam - del) * (lam - del) * D, hi = (lam + del) * (lam + del) * D;
  n_min_ = to_i128(floor_div(lo) + 1);
  n_max_ = to_i128(ceil_div(hi) - 1);
}

bool ShellTest::contains(const IntVec3& x) const {
  bool unused;
  return contains(x, unused);
}

bool ShellTest::contains(const IntVec3& x, bool& near_boundary) const {
  near_boundary = false;
  if (exact_) {
    __int128 n = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) n += B_[i][j] * x[i] * x[j];
    return n >= n_min_ && n <= n_max_;
  }
  long double q = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q += static_cast<long double>(A_[i][j]) * x[i] * x[j];
  long double d = std::fabs(std::sqrt(q) - lambda_);
  if (std::fabs(d - delta_) < 1e-12L * std::max<long double>(1, lambda_)) near_boundary = true;
  return d < delta_;
}

std::array<std::int64_t, 3> bounding_box(const QuadraticForm& Q, double r) {
  std::array<std::int64_t, 3> R{};
  for (int i = 0; i < 3; ++i) R[i] = static_cast<std::int64_t>(std::floor(r * std::sqrt(Q.A_ad[i][i] / Q.det_A))) + 1;
  return R;
}

namespace {

struct Interval {
  bool empty = true;
  double lo = 0, hi = 0;
};

// Real roots of a t^2 + b t + c = 0 (a > 0), as the solution interval of <= 0.
Interval solve(double a, double b, double c) {
  double disc = b * b - 4 * a * c;
  double scale = b * b + std::fabs(4 * a * c);
  if (disc < -1e-9 * scale) return {};
  double s = std::sqrt(std::max(disc, 0.0));
  return {false, (-b - s) / (2 * a), (-b + s) / (2 * a)};
}

}  // namespace

ShellPointSet enumerate_shell(const QuadraticForm& Q, double lambda, double delta) {
  ShellTest test(Q, lambda, delta);
  ShellPointSet out;
  out.form = Q;
  out.lambda = lambda;
  out.delta = delta;

  const double ro = lambda + delta, ri = lambda - delta;
  const auto R = bounding_box(Q, ro);
  const Mat3& A = Q.A;
  const std::int64_t n0 = 2 * R[0] + 1;
  std::vector<std::vector<IntVec3>> chunks(n0);
  std::vector<std::size_t> hits(n0, 0);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i0 = 0; i0 < n0; ++i0) {
    const std::int64_t x0 = i0 - R[0];
    auto& chunk = chunks[i0];
    for (std::int64_t x1 = -R[1]; x1 <= R[1]; ++x1) {
      double a = A[2][2];
      double b = 2 * (A[0][2] * x0 + A[1][2] * x1);
      double c = A[0][0] * x0 * x0 + 2 * A[0][1] * x0 * x1 + A[1][1] * x1 * x1;
      Interval outer = solve(a, b, c - ro * ro);
      if (outer.empty) continue;
      Interval inner = solve(a, b, c - ri * ri);
      auto lo = static_cast<std::int64_t>(std::floor(outer.lo)) - 1;
      auto hi = static_cast<std::int64_t>(std::ceil(outer.hi)) + 1;
      std::int64_t skip_lo = 1, skip_hi = 0;
      if (!inner.empty) {
        skip_lo = static_cast<std::int64_t>(std::ceil(inner.lo)) + 1;
        skip_hi = static_cast<std::int64_t>(std::floor(inner.hi)) - 1;
      }
      for (std::int64_t x2 = lo; x2 <= hi; ++x2) {
        if (x2 >= skip_lo && x2 <= skip_hi) {
          x2 = skip_hi;
          continue;
        }
        IntVec3 x{x0, x1, x2};
        bool near = false;
        if (test.contains(x, near)) chunk.push_back(x);
        if (near) ++hits[i0];
      }
    }
  }
  std::size_t total = 0;
  for (const auto& c : chunks) total += c.size();
  out.points.reserve(total);
  for (std::int64_t i0 = 0; i0 < n0; ++i0) {
    out.points.insert(out.points.end(), chunks[i0].begin(), chunks[i0].end());
    out.guard_band_hits += hits[i0];
  }
  return out;
}

ShellCensus shell_census(const ShellPointSet& shell) {
  ShellCensus c;
  c.count = shell.points.size();
  c.volume_proxy = shell.lambda * shell.lambda * shell.delta;
  c.ratio = c.volume_proxy > 0 ? static_cast<double>(c.count) / c.volume_proxy : 0.0;
  return c;
}

}  // namespace shellcap
