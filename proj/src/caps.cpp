#include "shellcap/caps.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace shellcap {

namespace {

using CellKey = IntVec3;

CellKey cell_of(const Vec3& x, double size) {
  return {static_cast<std::int64_t>(std::floor(x[0] / size)), static_cast<std::int64_t>(std::floor(x[1] / size)),
          static_cast<std::int64_t>(std::floor(x[2] / size))};
}

double dist2(const Vec3& a, const Vec3& b) {
  double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

Vec3 project(const QuadraticForm& Q, const IntVec3& p, double lambda) {
  Vec3 x = to_real(p);
  double s = lambda / std::sqrt(evaluate_form(Q, x));
  return s * x;
}

using Grid = std::unordered_map<CellKey, std::vector<std::size_t>, IntVec3Hash>;

}  // namespace

std::vector<Vec3> seed_centers(const ShellPointSet& shell) {
  std::vector<Vec3> centers;
  if (shell.points.empty()) return centers;
  const double r = std::sqrt(shell.lambda * shell.delta);
  const double r2 = r * r;
  Grid grid;
  for (const auto& p : shell.points) {
    Vec3 y = project(shell.form, p, shell.lambda);
    CellKey c = cell_of(y, r);
    bool covered = false;
    for (int a = -1; a <= 1 && !covered; ++a)
      for (int b = -1; b <= 1 && !covered; ++b)
        for (int d = -1; d <= 1 && !covered; ++d) {
          auto it = grid.find({c[0] + a, c[1] + b, c[2] + d});
          if (it == grid.end()) continue;
          for (auto idx : it->second)
            if (dist2(centers[idx], y) < r2) {
              covered = true;
              break;
            }
        }
    if (!covered) {
      grid[c].push_back(centers.size());
      centers.push_back(y);
    }
  }
  return centers;
}

std::vector<std::size_t> assign_points(const ShellPointSet& shell, const std::vector<Vec3>& centers) {
  const std::size_t n = shell.points.size();
  std::vector<std::size_t> owner(n, 0);
  if (centers.empty()) return owner;
  const double r = std::sqrt(shell.lambda * shell.delta);
  Grid grid;
  for (std::size_t i = 0; i < centers.size(); ++i) grid[cell_of(centers[i], r)].push_back(i);

#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 x = to_real(shell.points[i]);
    CellKey c = cell_of(x, r);
    std::size_t best = centers.size();
    double bd = 0;
    for (int k = 2;; ++k) {
      for (int a = -k; a <= k; ++a)
        for (int b = -k; b <= k; ++b)
          for (int d = -k; d <= k; ++d) {
            auto it = grid.find({c[0] + a, c[1] + b, c[2] + d});
            if (it == grid.end()) continue;
            for (auto idx : it->second) {
              double dd = dist2(centers[idx], x);
              if (best == centers.size() || dd < bd || (dd == bd && centers[idx] < centers[best])) {
                best = idx;
                bd = dd;
              }
            }
          }
      // Every center within k*r of x has been inspected.
      if (best != centers.size() && bd <= (k * r) * (k * r)) break;
    }
    owner[i] = best;
  }
  return owner;
}

std::vector<Cap> group_caps(const ShellPointSet& shell, const std::vector<Vec3>& centers,
                            const std::vector<std::size_t>& owner) {
  std::vector<Cap> caps(centers.size());
  for (std::size_t i = 0; i < shell.points.size(); ++i) caps[owner[i]].members.push_back(shell.points[i]);
  std::vector<Cap> out;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (caps[i].members.empty()) continue;
    Cap& c = caps[i];
    c.center = centers[i];
    c.grad = gradient(shell.form, c.center);
    c.normal = (1.0 / norm(c.grad)) * c.grad;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Cap> build_cover(const ShellPointSet& shell) {
  auto centers = seed_centers(shell);
  auto owner = assign_points(shell, centers);
  return group_caps(shell, centers, owner);
}

Mat3 cap_metric(const Vec3& n, double delta) {
  double k = 2.0 / delta + 1.0 / (delta * delta);
  Mat3 G{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G[i][j] = (i == j ? 1.0 : 0.0) + k * n[i] * n[j];
  return G;
}

Cap classify_cap(Cap cap, double delta) {
  cap.rank = 0;
  cap.rank1_dir.reset();
  cap.rank2.reset();
  if (cap.members.size() <= 1) return cap;
  IntLattice lat;
  for (std::size_t i = 1; i < cap.members.size() && lat.rank() < 3; ++i) lat.insert(cap.members[i] - cap.members[0]);
  cap.rank = static_cast<int>(lat.rank());
  if (cap.rank == 1) {
    cap.rank1_dir = primitive_of(lat.basis()[0]).direction;
  } else if (cap.rank == 2) {
    ReducedPair red = gauss_reduce_2d(lat.basis()[0], lat.basis()[1], cap_metric(cap.normal, delta));
    Rank2Data d{red.u, red.v, wedge(red.u, red.v), 0.0};
    if (dot(to_real(d.w), cap.normal) < 0) {
      d.v = -d.v;
      d.w = -d.w;
    }
    d.det = norm(d.w);
    cap.rank2 = d;
  }
  return cap;
}

void classify_all(std::vector<Cap>& cover, double delta) {
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < cover.size(); ++i) cover[i] = classify_cap(std::move(cover[i]), delta);
}

std::vector<Cap> build_classified_cover(const ShellPointSet& shell) {
  auto cover = build_cover(shell);
  classify_all(cover, shell.delta);
  return cover;
}

int dyadic_bin(std::size_t n) {
  int s = 0;
  while (n >= 2) {
    n >>= 1;
    ++s;
  }
  return s;
}

namespace {

void cap_incidences(const std::vector<IntVec3>& m, BinTable& out) {
  const std::size_t n = m.size();
  if (n < 2) return;
  std::set<std::pair<IntVec3, IntVec3>> lines;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      IntVec3 d = primitive_of(m[j] - m[i]).direction;
      lines.insert({d, wedge(d, m[i])});
    }
  for (const auto& [d, key] : lines) {
    std::size_t size = 0;
    for (const auto& p : m)
      if (wedge(d, p) == key) ++size;
    ++out[{1, dyadic_bin(size)}];
  }

  std::set<std::pair<IntVec3, std::int64_t>> planes;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        IntVec3 nv = wedge(m[j] - m[i], m[k] - m[i]);
        if (is_zero(nv)) continue;
        IntVec3 d = primitive_of(nv).direction;
        planes.insert({d, dot(d, m[i])});
      }
  for (const auto& [d, off] : planes) {
    std::size_t size = 0;
    for (const auto& p : m)
      if (dot(d, p) == off) ++size;
    ++out[{2, dyadic_bin(size)}];
  }
}

}  // namespace

BinTable incidence_counts(const std::vector<Cap>& cover) {
  std::vector<BinTable> local(cover.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t i = 0; i < cover.size(); ++i) cap_incidences(cover[i].members, local[i]);
  BinTable out;
  for (const auto& t : local)
    for (const auto& [k, v] : t) out[k] += v;
  return out;
}

CapCensus census(const std::vector<Cap>& cover, double lambda, double delta) {
  CapCensus c;
  c.lambda = lambda;
  c.delta = delta;
  for (const auto& cap : cover) {
    if (cap.members.empty()) continue;
    ++c.bins[{cap.rank, dyadic_bin(cap.n_points())}];
    ++c.caps;
    c.points += cap.n_points();
  }
  c.incidence = incidence_counts(cover);
  return c;
}

bool incidence_dominates(const CapCensus& c) {
  for (const auto& [key, count] : c.bins) {
    if (key.first != 1 && key.first != 2) continue;
    auto it = c.incidence.find(key);
    std::int64_t other = it == c.incidence.end() ? 0 : it->second;
    if (count > other) return false;
  }
  return true;
}

Rank2Ratios rank2_invariant_ratios(const std::vector<Cap>& cover, double lambda, double delta) {
  Rank2Ratios r;
  const double ld = lambda * delta;
  for (const auto& cap : cover) {
    if (cap.rank != 2 || !cap.rank2) continue;
    const auto n = static_cast<double>(cap.n_points());
    double r1 = cap.rank2->det * n / ld;
    double r2 = norm(wedge(cap.grad, to_real(cap.rank2->w))) * n / std::pow(ld, 1.5);
    r.rho1.push_back(r1);
    r.rho2.push_back(r2);
    r.max_rho1 = std::max(r.max_rho1, r1);
    r.max_rho2 = std::max(r.max_rho2, r2);
  }
  return r;
}

}  // namespace shellcap
