#include <cmath>

#include "doctest.h"
#include "shellcap/energy.hpp"
#include "shellcap/errors.hpp"
#include "shellcap/reference.hpp"

using namespace shellcap;

namespace {

std::map<IntVec3, std::int64_t> as_map(const RepCountTable& t) {
  std::map<IntVec3, std::int64_t> m;
  for (std::size_t i = 0; i < t.table.size(); ++i) m[t.table.keys[i]] = t.table.vals[i];
  return m;
}

PointSet shifted(PointSet a, const IntVec3& v) {
  for (auto& p : a) p = p + v;
  return a;
}

}  // namespace

TEST_CASE("upper shell") {
  CHECK(upper_shell(1, 0.05) == PointSet{{1, 0, 0}});
  CHECK(upper_shell(std::sqrt(2.0), 0.01).empty());
  CHECK(upper_shell(3, 0.05) == PointSet{{3, 0, 0}});
  for (const auto& p : upper_shell(20, 0.3)) CHECK(p[0] > std::abs(p[1]) + std::abs(p[2]));
}

TEST_CASE("rep_counts examples") {
  IntVec3 e1{1, 0, 0}, e2{0, 1, 0};
  auto t = rep_counts({e1, e2}, 2);
  std::map<IntVec3, std::int64_t> want{{{2, 0, 0}, 1}, {{1, 1, 0}, 2}, {{0, 2, 0}, 1}};
  CHECK(as_map(t) == want);
  CHECK(as_map(rep_counts({{3, -1, 2}}, 4)) == std::map<IntVec3, std::int64_t>{{{12, -4, 8}, 1}});
  IntVec3 a{2, 1, -1};
  std::map<IntVec3, std::int64_t> sym{{2 * a, 1}, {{0, 0, 0}, 2}, {-2 * a, 1}};
  CHECK(as_map(rep_counts({a, -a}, 2)) == sym);
}

TEST_CASE("additive energy and Z examples") {
  IntVec3 e1{1, 0, 0}, e2{0, 1, 0}, a{2, 1, -1};
  CHECK(additive_energy({e1, e2}, 2) == 6);
  CHECK(additive_energy({a}, 3) == 1);
  CHECK(additive_energy({a, -a}, 2) == 6);
  PointSet pm{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  auto z = z_max(pm, 2);
  CHECK(z.Z == 6);
  CHECK(z.k_star == IntVec3{0, 0, 0});
  CHECK(z_max({a}, 3).Z == 1);
  auto z2 = z_max({e1, e2}, 2);
  CHECK(z2.Z == 2);
  CHECK(z2.k_star == IntVec3{1, 1, 0});
}

TEST_CASE("agrees with tuple enumeration") {
  auto s = enumerate_shell(identity_form(), 6, 0.2).points;
  for (int r : {1, 2, 3}) {
    CHECK(as_map(rep_counts(s, r)) == reference::rep_counts(s, r));
    CHECK(additive_energy(s, r) == reference::additive_energy(s, r));
  }
}

TEST_CASE("table invariants") {
  auto A = enumerate_shell(identity_form(), 9, 0.25).points;
  auto n = static_cast<std::int64_t>(A.size());
  for (int r : {2, 3}) {
    auto t = rep_counts(A, r);
    std::int64_t sum = 0;
    for (auto v : t.table.vals) {
      CHECK(v > 0);
      sum += v;
    }
    std::int64_t nr = 1;
    for (int i = 0; i < r; ++i) nr *= n;
    CHECK(sum == nr);
    std::int64_t E = additive_energy(A, r);
    CHECK(E >= nr);
    CHECK(E <= nr * nr / n);
  }
  IntVec3 v{5, -7, 11};
  CHECK(additive_energy(shifted(A, v), 2) == additive_energy(A, 2));
  CHECK(z_max(shifted(A, v), 2).Z == z_max(A, 2).Z);
  CHECK(additive_energy(shifted(A, -2 * v), 3) == additive_energy(A, 3));
  PointSet neg = A;
  for (auto& p : neg) p = -p;
  CHECK(additive_energy(neg, 2) == additive_energy(A, 2));
}

TEST_CASE("tuple guard") {
  CHECK_NOTHROW(check_tuple_guard(1000, 3));
  CHECK_THROWS_AS(check_tuple_guard(1001, 3), GuardError);
  PointSet big(40000);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = {static_cast<std::int64_t>(i), 0, 0};
  CHECK_THROWS_AS(rep_counts(big, 2), GuardError);
}

TEST_CASE("complex convolution statistics") {
  SparseTable<std::complex<double>> t;
  t.keys = {{0, 0, 0}, {1, 0, 0}};
  t.vals = {{1, 0}, {0, 1}};
  auto st = power_stats(t, 2);
  // (1 + i z)^2 = 1 + 2i z - z^2
  CHECK(static_cast<double>(st.sum_sq) == doctest::Approx(6.0));
  CHECK(st.max_abs == doctest::Approx(2.0));
  CHECK(st.argmax == IntVec3{1, 0, 0});
  CHECK(st.support == 3);
}

TEST_CASE("conjecture report") {
  auto r = energy_conjecture_report(1, 0.05, 2);
  CHECK(r.set_size == 1);
  CHECK(r.E == 1);
  CHECK(r.Z == 1);
  CHECK(r.bound_E == doctest::Approx(std::pow(0.05, 2) + std::pow(0.05, 4)));
  CHECK(r.ratio_E == doctest::Approx(1.0 / r.bound_E));

  auto q = energy_conjecture_report(64, 0.125, 2);
  CHECK(q.p == 4);
  CHECK(q.bound_E_point == doctest::Approx(std::pow(64.0, 4) * std::pow(0.125, 2)));
  CHECK(q.bound_E_cap == doctest::Approx(std::pow(64.0, 5) * std::pow(0.125, 4)));
  CHECK(q.bound_Z == doctest::Approx(8.0));
  CHECK(q.E == additive_energy(upper_shell(64, 0.125), 2));
  CHECK(q.E >= static_cast<std::int64_t>(q.set_size * q.set_size));

  auto f = energy_conjecture_report(8, 0.25, 3, true);
  CHECK(f.full_shell);
  CHECK(f.set_size == enumerate_shell(identity_form(), 8, 0.25).points.size());
  CHECK(f.bound_Z == doctest::Approx(std::pow(8.0, 3) * std::pow(0.25, 3)));
  CHECK_THROWS_AS(energy_conjecture_report(16, 0.25, 3, true), GuardError);

  auto u = energy_conjecture_report(32, 0.25, 3);
  CHECK(static_cast<double>(u.set_size) * u.set_size * u.set_size <= kTupleGuard);
  CHECK(u.E >= static_cast<std::int64_t>(u.set_size * u.set_size * u.set_size));
  CHECK_THROWS_AS(energy_conjecture_report(16, 0.25, 1), DomainError);
}
