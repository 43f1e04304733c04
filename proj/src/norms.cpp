#include "shellcap/norms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "shellcap/energy.hpp"
#include "shellcap/errors.hpp"

namespace shellcap {

bool CoefficientVector::integer_weights() const {
  for (const auto& w : weights)
    if (w.imag() != 0.0 || w.real() != std::round(w.real()) || std::fabs(w.real()) > 1e6) return false;
  return true;
}

std::int64_t CoefficientVector::max_frequency() const {
  std::int64_t m = 0;
  for (const auto& n : support)
    for (auto c : n) m = std::max(m, c < 0 ? -c : c);
  return m;
}

std::string kind_name(QuasimodeKind k) { return k == QuasimodeKind::Point ? "point" : "cap"; }

CoefficientVector make_point_quasimode(const ShellPointSet& shell) {
  if (shell.points.empty()) throw DomainError("quasimode has empty support");
  CoefficientVector f;
  f.support = shell.points;
  f.weights.assign(f.support.size(), 1.0);
  return f;
}

CoefficientVector make_cap_quasimode(const Cap& cap) {
  if (cap.members.empty()) throw DomainError("quasimode has empty support");
  CoefficientVector f;
  f.support = cap.members;
  std::sort(f.support.begin(), f.support.end());
  f.weights.assign(f.support.size(), 1.0);
  return f;
}

double l2_norm(const CoefficientVector& f) {
  long double s = 0;
  for (const auto& w : f.weights) s += std::norm(w);
  return static_cast<double>(std::sqrt(s));
}

namespace {

template <class T>
SparseTable<T> table_of(const CoefficientVector& f) {
  std::vector<std::size_t> order(f.support.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return f.support[a] < f.support[b]; });
  SparseTable<T> t;
  for (auto i : order) {
    if (!t.keys.empty() && t.keys.back() == f.support[i]) throw DomainError("duplicate frequency in support");
    t.keys.push_back(f.support[i]);
    if constexpr (std::is_integral_v<T>)
      t.vals.push_back(static_cast<T>(f.weights[i].real()));
    else
      t.vals.push_back(f.weights[i]);
  }
  return t;
}

}  // namespace

EvenNorm lp_norm_even(const CoefficientVector& f, int r) {
  if (r < 1) throw DomainError("fold count must be positive");
  EvenNorm out;
  if (f.support.empty()) return out;
  if (f.integer_weights()) {
    auto s = power_stats(table_of<std::int64_t>(f), r);
    if (s.sum_sq_exact > std::numeric_limits<std::int64_t>::max()) throw GuardError("norm power exceeds 64-bit range");
    out.exact = static_cast<std::int64_t>(s.sum_sq_exact);
    out.power = static_cast<long double>(*out.exact);
  } else {
    out.power = power_stats(table_of<std::complex<double>>(f), r).sum_sq;
  }
  out.norm = static_cast<double>(std::pow(out.power, 1.0L / (2 * r)));
  return out;
}

int default_grid_size(double lambda) {
  int N = 1;
  while (!(N > 4 * lambda)) N *= 2;
  return N;
}

std::vector<double> lp_norm_grid_multi(const CoefficientVector& f, const std::vector<double>& ps, int N) {
  if (N < 1 || static_cast<std::int64_t>(N) <= 2 * f.max_frequency())
    throw DomainError("grid too coarse: N must exceed twice the largest frequency");
  for (double p : ps)
    if (!(p >= 1)) throw DomainError("grid norm needs p >= 1");
  const std::size_t n2 = static_cast<std::size_t>(N) * N;
  const std::size_t np = ps.size();

  std::vector<std::complex<double>> phase(N);
  for (int m = 0; m < N; ++m) phase[m] = std::polar(1.0, 2.0 * std::numbers::pi * m / N);
  std::vector<std::size_t> cell(f.support.size());
  std::vector<int> n0(f.support.size());
  for (std::size_t i = 0; i < f.support.size(); ++i) {
    const auto& n = f.support[i];
    auto mod = [N](std::int64_t v) { return static_cast<std::size_t>(((v % N) + N) % N); };
    cell[i] = mod(n[1]) * N + mod(n[2]);
    n0[i] = static_cast<int>(mod(n[0]));
  }

  fftw_complex* probe = fftw_alloc_complex(n2);
  fftw_plan plan = fftw_plan_dft_2d(N, N, probe, probe, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(probe);

  // Plane sums, reduced afterwards in plane order.
  std::vector<long double> partial(static_cast<std::size_t>(N) * np, 0.0L);
  std::vector<int> even(np, 0);
  for (std::size_t k = 0; k < np; ++k)
    if (ps[k] == std::round(ps[k]) && static_cast<int>(ps[k]) % 2 == 0) even[k] = static_cast<int>(ps[k]) / 2;

#pragma omp parallel
  {
    fftw_complex* buf = fftw_alloc_complex(n2);
    auto* z = reinterpret_cast<std::complex<double>*>(buf);
#pragma omp for schedule(static)
    for (int j0 = 0; j0 < N; ++j0) {
      std::fill(z, z + n2, std::complex<double>(0.0, 0.0));
      for (std::size_t i = 0; i < f.support.size(); ++i)
        z[cell[i]] += f.weights[i] * phase[(static_cast<std::int64_t>(n0[i]) * j0) % N];
      fftw_execute_dft(plan, buf, buf);
      long double* acc = &partial[static_cast<std::size_t>(j0) * np];
      for (std::size_t k = 0; k < np; ++k) {
        long double s = 0;
        if (even[k] > 0) {
          for (std::size_t c = 0; c < n2; ++c) {
            double m = std::norm(z[c]);
            double v = m;
            for (int e = 1; e < even[k]; ++e) v *= m;
            s += v;
          }
        } else {
          const double h = ps[k] / 2;
          for (std::size_t c = 0; c < n2; ++c) s += std::pow(std::norm(z[c]), h);
        }
        acc[k] = s;
      }
    }
    fftw_free(buf);
  }
  fftw_destroy_plan(plan);

  std::vector<double> out(np);
  const long double vol = static_cast<long double>(N) * N * N;
  for (std::size_t k = 0; k < np; ++k) {
    long double s = 0;
    for (int j0 = 0; j0 < N; ++j0) s += partial[static_cast<std::size_t>(j0) * np + k];
    out[k] = static_cast<double>(std::pow(s / vol, 1.0L / ps[k]));
  }
  return out;
}

double lp_norm_grid(const CoefficientVector& f, double p, int N) { return lp_norm_grid_multi(f, {p}, N)[0]; }

GridEstimate lp_norm_grid_with_error(const CoefficientVector& f, double p, int N) {
  GridEstimate g;
  g.N = N;
  g.value = lp_norm_grid(f, p, N);
  g.error = std::fabs(g.value - lp_norm_grid(f, p, 2 * N));
  return g;
}

ConjecturedBound conjectured_bound(double lambda, double delta, double p) {
  ConjecturedBound b;
  const double inv = std::isinf(p) ? 0.0 : 1.0 / p;
  b.cap_term = std::pow(lambda * delta, 0.5 - inv);
  b.point_term = std::pow(lambda, 1.0 - 3.0 * inv) * std::sqrt(delta);
  b.total = b.cap_term + b.point_term;
  return b;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::PointFocusing: return "point-focusing";
    case Regime::GeodesicFocusing: return "geodesic-focusing";
    case Regime::Boundary: return "boundary";
  }
  return "?";
}

Regime regime_classify(double lambda, double delta, double p) {
  ConjecturedBound b = conjectured_bound(lambda, delta, p);
  if (std::fabs(b.cap_term - b.point_term) <= 1e-12 * std::max(b.cap_term, b.point_term)) return Regime::Boundary;
  return b.point_term > b.cap_term ? Regime::PointFocusing : Regime::GeodesicFocusing;
}

bool near_regime_boundary(double lambda, double delta, double p, double factor) {
  if (std::isinf(p)) return false;
  double curve = std::pow(lambda, 2.0 - p / 2.0);
  double q = delta / curve;
  return q <= factor && q >= 1.0 / factor;
}

FewManyMasks split_few_many(const ShellPointSet& shell, const std::vector<Cap>& cover) {
  FewManyMasks m;
  const std::size_t n = shell.points.size();
  m.few.assign(n, false);
  m.many.assign(n, false);
  const double threshold = kFewManyConstant * (shell.lambda * shell.delta * shell.delta + 1.0);
  for (const auto& cap : cover) {
    const bool few = static_cast<double>(cap.n_points()) <= threshold;
    for (const auto& x : cap.members) {
      auto it = std::lower_bound(shell.points.begin(), shell.points.end(), x);
      if (it == shell.points.end() || *it != x) throw DomainError("cap member is not a shell point");
      auto idx = static_cast<std::size_t>(it - shell.points.begin());
      (few ? m.few : m.many)[idx] = true;
    }
  }
  return m;
}

NormEstimate estimate_ratio(const CoefficientVector& f, double lambda, double delta, int p) {
  if (p < 2 || p % 2 != 0) throw DomainError("even p >= 2 required");
  NormEstimate e;
  e.p = p;
  e.lambda = lambda;
  e.delta = delta;
  e.bound = conjectured_bound(lambda, delta, p).total;
  e.regime = regime_classify(lambda, delta, p);
  const double l2 = l2_norm(f);
  try {
    e.ratio = lp_norm_even(f, p / 2).norm / l2;
    e.method = "even-exact";
  } catch (const GuardError&) {
    int N = std::max(default_grid_size(lambda), static_cast<int>(2 * f.max_frequency() + 1));
    e.ratio = lp_norm_grid(f, p, N) / l2;
    e.method = "grid";
  }
  return e;
}

std::vector<WitnessRow> quasimode_witnesses(const ShellPointSet& shell, const std::vector<Cap>& cover,
                                            const std::vector<int>& ps) {
  const double lambda = shell.lambda, delta = shell.delta;
  std::vector<WitnessRow> rows(ps.size());
  if (shell.points.empty()) return rows;

  // Point quasimode: exact where possible, one shared grid pass otherwise.
  CoefficientVector point = make_point_quasimode(shell);
  const double l2 = l2_norm(point);
  std::vector<double> grid_ps;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto& row = rows[i];
    row.p = ps[i];
    row.bound = conjectured_bound(lambda, delta, ps[i]).total;
    row.regime = regime_classify(lambda, delta, ps[i]);
    row.exempt = row.regime == Regime::Boundary || near_regime_boundary(lambda, delta, ps[i]);
    row.point.p = ps[i];
    row.point.lambda = lambda;
    row.point.delta = delta;
    row.point.bound = row.bound;
    row.point.regime = row.regime;
    row.point.kind = QuasimodeKind::Point;
    if (std::pow(static_cast<double>(point.support.size()), ps[i] / 2) <= kTupleGuard) {
      row.point.ratio = lp_norm_even(point, ps[i] / 2).norm / l2;
      row.point.method = "even-exact";
    } else {
      grid_ps.push_back(ps[i]);
    }
  }
  if (!grid_ps.empty()) {
    int N = std::max(default_grid_size(lambda), static_cast<int>(2 * point.max_frequency() + 1));
    auto vals = lp_norm_grid_multi(point, grid_ps, N);
    for (std::size_t k = 0; k < grid_ps.size(); ++k)
      for (auto& row : rows)
        if (row.p == grid_ps[k]) {
          row.point.ratio = vals[k] / l2;
          row.point.method = "grid";
        }
  }

  // Cap quasimodes; one-point caps have ratio exactly 1.
  const std::size_t nc = cover.size();
  std::vector<std::vector<NormEstimate>> capvals(nc);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t c = 0; c < nc; ++c) {
    auto f = make_cap_quasimode(cover[c]);
    capvals[c].reserve(ps.size());
    for (int p : ps) {
      NormEstimate e;
      if (f.support.size() == 1) {
        e.p = p;
        e.lambda = lambda;
        e.delta = delta;
        e.ratio = 1.0;
        e.method = "even-exact";
      } else {
        e = estimate_ratio(f, lambda, delta, p);
      }
      e.kind = QuasimodeKind::Cap;
      capvals[c].push_back(e);
    }
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto& row = rows[i];
    row.best_cap.ratio = 0.0;
    for (std::size_t c = 0; c < nc; ++c)
      if (capvals[c][i].ratio > row.best_cap.ratio) row.best_cap = capvals[c][i];
    row.best_cap.bound = row.bound;
    row.best_cap.regime = row.regime;
    row.winner = row.point.ratio >= row.best_cap.ratio ? QuasimodeKind::Point : QuasimodeKind::Cap;
  }
  return rows;
}

}  // namespace shellcap
