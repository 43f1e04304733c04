#include "shellcap/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <omp.h>

#include "shellcap/errors.hpp"

namespace shellcap {

void check_tuple_guard(std::size_t n, int r) {
  double tuples = std::pow(static_cast<double>(n), r);
  if (tuples > kTupleGuard)
    throw GuardError("tuple guard exceeded: |A|^r = " + std::to_string(static_cast<long double>(tuples)) +
                     " > 1e9 (|A| = " + std::to_string(n) + ", r = " + std::to_string(r) + ")");
}

SparseTable<std::int64_t> unit_table(PointSet points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  SparseTable<std::int64_t> t;
  t.vals.assign(points.size(), 1);
  t.keys = std::move(points);
  return t;
}

namespace {

struct Slabs {
  std::vector<std::int64_t> x0;      // distinct first coordinates
  std::vector<std::size_t> begin;    // start offsets, plus a final end offset
  std::int64_t lo1 = 0, hi1 = -1, lo2 = 0, hi2 = -1;
};

template <class T>
Slabs slabs_of(const SparseTable<T>& t) {
  Slabs s;
  if (t.keys.empty()) return s;
  s.lo1 = s.hi1 = t.keys[0][1];
  s.lo2 = s.hi2 = t.keys[0][2];
  for (std::size_t i = 0; i < t.keys.size(); ++i) {
    const auto& k = t.keys[i];
    if (s.x0.empty() || s.x0.back() != k[0]) {
      s.x0.push_back(k[0]);
      s.begin.push_back(i);
    }
    s.lo1 = std::min(s.lo1, k[1]);
    s.hi1 = std::max(s.hi1, k[1]);
    s.lo2 = std::min(s.lo2, k[2]);
    s.hi2 = std::max(s.hi2, k[2]);
  }
  s.begin.push_back(t.keys.size());
  return s;
}

// Dense scratch over (k1, k2) for one output slab.
template <class T>
struct Scratch {
  std::int64_t lo1 = 0, lo2 = 0, w1 = 0, w2 = 0;
  std::vector<T> cell;
  std::vector<char> used;
  std::vector<std::size_t> touched;

  void init(std::int64_t l1, std::int64_t h1, std::int64_t l2, std::int64_t h2) {
    lo1 = l1;
    lo2 = l2;
    w1 = h1 - l1 + 1;
    w2 = h2 - l2 + 1;
    cell.assign(static_cast<std::size_t>(w1 * w2), T{});
    used.assign(cell.size(), 0);
  }
  void add(std::int64_t k1, std::int64_t k2, const T& v) {
    auto idx = static_cast<std::size_t>((k1 - lo1) * w2 + (k2 - lo2));
    if (!used[idx]) {
      used[idx] = 1;
      touched.push_back(idx);
    }
    cell[idx] += v;
  }
  // Visits nonzero cells in (k1, k2) order and clears them.
  template <class F>
  void drain(F&& f) {
    std::sort(touched.begin(), touched.end());
    for (auto idx : touched) {
      const T v = cell[idx];
      if (v != T{}) f(lo1 + static_cast<std::int64_t>(idx) / w2, lo2 + static_cast<std::int64_t>(idx) % w2, v);
      cell[idx] = T{};
      used[idx] = 0;
    }
    touched.clear();
  }
};

// Runs fn(k0, scratch) for every output slab, in parallel; scratch holds the
// slab's accumulated sums.
template <class T, class Fn>
void for_each_output_slab(const SparseTable<T>& a, const SparseTable<T>& b, Fn&& fn) {
  if (a.keys.empty() || b.keys.empty()) return;
  const Slabs sa = slabs_of(a), sb = slabs_of(b);
  const std::int64_t k0lo = sa.x0.front() + sb.x0.front();
  const std::int64_t k0hi = sa.x0.back() + sb.x0.back();
  const std::int64_t n = k0hi - k0lo + 1;

#pragma omp parallel
  {
    Scratch<T> scratch;
    scratch.init(sa.lo1 + sb.lo1, sa.hi1 + sb.hi1, sa.lo2 + sb.lo2, sa.hi2 + sb.hi2);
#pragma omp for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
      const std::int64_t k0 = k0lo + i;
      for (std::size_t ia = 0; ia < sa.x0.size(); ++ia) {
        const std::int64_t want = k0 - sa.x0[ia];
        auto it = std::lower_bound(sb.x0.begin(), sb.x0.end(), want);
        if (it == sb.x0.end() || *it != want) continue;
        const std::size_t ib = static_cast<std::size_t>(it - sb.x0.begin());
        for (std::size_t p = sa.begin[ia]; p < sa.begin[ia + 1]; ++p) {
          const auto& ka = a.keys[p];
          const T va = a.vals[p];
          for (std::size_t q = sb.begin[ib]; q < sb.begin[ib + 1]; ++q) {
            const auto& kb = b.keys[q];
            scratch.add(ka[1] + kb[1], ka[2] + kb[2], va * b.vals[q]);
          }
        }
      }
      fn(i, k0, scratch);
    }
  }
}

double magnitude(std::int64_t v) { return static_cast<double>(v < 0 ? -v : v); }
double magnitude(const std::complex<double>& v) { return std::abs(v); }

}  // namespace

template <class T>
SparseTable<T> convolve(const SparseTable<T>& a, const SparseTable<T>& b) {
  SparseTable<T> out;
  if (a.keys.empty() || b.keys.empty()) return out;
  const std::int64_t n = (a.keys.back()[0] + b.keys.back()[0]) - (a.keys.front()[0] + b.keys.front()[0]) + 1;
  std::vector<SparseTable<T>> parts(static_cast<std::size_t>(n));
  for_each_output_slab(a, b, [&](std::int64_t i, std::int64_t k0, Scratch<T>& s) {
    auto& part = parts[static_cast<std::size_t>(i)];
    s.drain([&](std::int64_t k1, std::int64_t k2, const T& v) {
      part.keys.push_back({k0, k1, k2});
      part.vals.push_back(v);
    });
  });
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  out.keys.reserve(total);
  out.vals.reserve(total);
  for (auto& p : parts) {
    out.keys.insert(out.keys.end(), p.keys.begin(), p.keys.end());
    out.vals.insert(out.vals.end(), p.vals.begin(), p.vals.end());
  }
  return out;
}

namespace {

template <class T>
void absorb(ConvStats<T>& s, const IntVec3& k, const T& v) {
  ++s.support;
  if constexpr (std::is_integral_v<T>) {
    s.sum_sq_exact += static_cast<__int128>(v) * v;
    s.sum_sq += static_cast<long double>(v) * v;
    if (std::abs(v) > s.max_exact) {
      s.max_exact = std::abs(v);
      s.max_abs = magnitude(v);
      s.argmax = k;
    }
  } else {
    s.sum_sq += static_cast<long double>(std::norm(v));
    double m = magnitude(v);
    if (m > s.max_abs) {
      s.max_abs = m;
      s.argmax = k;
    }
  }
}

// Slabs arrive in increasing k0, so a strict comparison keeps the least key.
template <class T>
void merge(ConvStats<T>& into, const ConvStats<T>& part) {
  if (part.support == 0) return;
  into.sum_sq += part.sum_sq;
  into.sum_sq_exact += part.sum_sq_exact;
  into.support += part.support;
  bool better = std::is_integral_v<T> ? part.max_exact > into.max_exact : part.max_abs > into.max_abs;
  if (better || into.support == part.support) {
    into.max_abs = part.max_abs;
    into.max_exact = part.max_exact;
    into.argmax = part.argmax;
  }
}

}  // namespace

template <class T>
ConvStats<T> convolve_stats(const SparseTable<T>& a, const SparseTable<T>& b) {
  ConvStats<T> total;
  if (a.keys.empty() || b.keys.empty()) return total;
  const std::int64_t n = (a.keys.back()[0] + b.keys.back()[0]) - (a.keys.front()[0] + b.keys.front()[0]) + 1;
  std::vector<ConvStats<T>> parts(static_cast<std::size_t>(n));
  for_each_output_slab(a, b, [&](std::int64_t i, std::int64_t k0, Scratch<T>& s) {
    auto& part = parts[static_cast<std::size_t>(i)];
    s.drain([&](std::int64_t k1, std::int64_t k2, const T& v) { absorb(part, IntVec3{k0, k1, k2}, v); });
  });
  for (const auto& p : parts) merge(total, p);
  return total;
}

template <class T>
ConvStats<T> power_stats(const SparseTable<T>& base, int r) {
  if (r < 1) throw DomainError("fold count must be positive");
  check_tuple_guard(base.size(), r);
  if (r == 1) {
    ConvStats<T> s;
    for (std::size_t i = 0; i < base.size(); ++i) absorb(s, base.keys[i], base.vals[i]);
    return s;
  }
  SparseTable<T> acc = base;
  for (int j = 2; j < r; ++j) acc = convolve(acc, base);
  return convolve_stats(acc, base);
}

template SparseTable<std::int64_t> convolve(const SparseTable<std::int64_t>&, const SparseTable<std::int64_t>&);
template SparseTable<std::complex<double>> convolve(const SparseTable<std::complex<double>>&,
                                                    const SparseTable<std::complex<double>>&);
template ConvStats<std::int64_t> convolve_stats(const SparseTable<std::int64_t>&, const SparseTable<std::int64_t>&);
template ConvStats<std::complex<double>> convolve_stats(const SparseTable<std::complex<double>>&,
                                                        const SparseTable<std::complex<double>>&);
template ConvStats<std::int64_t> power_stats(const SparseTable<std::int64_t>&, int);
template ConvStats<std::complex<double>> power_stats(const SparseTable<std::complex<double>>&, int);

PointSet upper_part(const PointSet& points) {
  PointSet out;
  for (const auto& n : points)
    if (n[0] > std::abs(n[1]) + std::abs(n[2])) out.push_back(n);
  return out;
}

PointSet upper_shell(double lambda, double delta) {
  return upper_part(enumerate_shell(identity_form(), lambda, delta).points);
}

RepCountTable rep_counts(const PointSet& A, int r) {
  if (r < 1) throw DomainError("fold count must be positive");
  check_tuple_guard(A.size(), r);
  RepCountTable t;
  t.r = r;
  auto base = unit_table(A);
  t.source_size = base.size();
  t.table = base;
  for (int j = 2; j <= r; ++j) t.table = convolve(t.table, base);
  return t;
}

namespace {

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max()) throw GuardError("energy exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

}  // namespace

std::int64_t additive_energy(const PointSet& A, int r) {
  return narrow(power_stats(unit_table(A), r).sum_sq_exact);
}

ZMax z_max(const PointSet& A, int r) {
  auto s = power_stats(unit_table(A), r);
  return {s.argmax, s.max_exact};
}

EnergyReport energy_conjecture_report(double lambda, double delta, int r, bool full_shell) {
  if (r < 2) throw DomainError("energy report needs r >= 2");
  EnergyReport rep;
  rep.lambda = lambda;
  rep.delta = delta;
  rep.r = r;
  rep.p = 2 * r;
  rep.full_shell = full_shell;
  PointSet A = full_shell ? enumerate_shell(identity_form(), lambda, delta).points : upper_shell(lambda, delta);
  rep.set_size = A.size();
  if (!A.empty()) {
    auto s = power_stats(unit_table(A), r);
    rep.E = narrow(s.sum_sq_exact);
    rep.Z = s.max_exact;
    rep.k_star = s.argmax;
  }
  const double p = rep.p;
  rep.bound_E_point = std::pow(lambda, p) * std::pow(delta, p / 2);
  rep.bound_E_cap = std::pow(lambda, 2 * p - 3) * std::pow(delta, p);
  rep.bound_E = rep.bound_E_point + rep.bound_E_cap;
  rep.bound_Z = rep.p == 4 ? lambda * delta : std::pow(lambda, p - 3) * std::pow(delta, p / 2);
  rep.ratio_E = static_cast<double>(rep.E) / rep.bound_E;
  rep.ratio_Z = static_cast<double>(rep.Z) / rep.bound_Z;
  return rep;
}

}  // namespace shellcap
