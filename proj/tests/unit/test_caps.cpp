#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "shellcap/caps.hpp"
#include "shellcap/reference.hpp"

using namespace shellcap;

namespace {

Cap synthetic(const std::vector<IntVec3>& members, double lambda) {
  Cap c;
  c.members = members;
  c.center = {0, 0, lambda};
  c.grad = c.center;
  c.normal = {0, 0, 1};
  return c;
}

double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

}  // namespace

TEST_CASE("lambda 5 cover is all singletons") {
  auto s = enumerate_shell(identity_form(), 5, 0.05);
  auto cover = build_classified_cover(s);
  CHECK(cover.size() == 30);
  for (const auto& c : cover) {
    CHECK(c.n_points() == 1);
    CHECK(c.rank == 0);
  }
  auto cen = census(cover, 5, 0.05);
  CHECK(cen.bins.size() == 1);
  CHECK(cen.bins[{0, 0}] == 30);
  CHECK(cen.incidence.empty());
}

TEST_CASE("empty shell gives empty cover") {
  auto s = enumerate_shell(identity_form(), 1.2, 0.01);
  CHECK(build_cover(s).empty());
  CHECK(census({}, 1.2, 0.01).caps == 0);
  CHECK(incidence_counts({}).empty());
}

TEST_CASE("assignment matches the naive scan") {
  for (auto [lambda, delta] : {std::pair{64.0, 0.125}, std::pair{40.0, 0.3}, std::pair{90.0, 0.05}}) {
    auto s = enumerate_shell(identity_form(), lambda, delta);
    auto centers = seed_centers(s);
    CHECK(assign_points(s, centers) == reference::assign_points(s, centers));
  }
}

TEST_CASE("cover invariants") {
  const double lambda = 64, delta = 0.125;
  auto s = enumerate_shell(identity_form(), lambda, delta);
  auto centers = seed_centers(s);
  const double r = std::sqrt(lambda * delta);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    CHECK(norm(centers[i]) == doctest::Approx(lambda));
    for (std::size_t j = i + 1; j < centers.size(); ++j) CHECK(dist(centers[i], centers[j]) >= r * (1 - 1e-12));
  }
  auto cover = build_classified_cover(s);
  std::size_t total = 0;
  std::vector<IntVec3> seen;
  for (const auto& c : cover) {
    CHECK(c.n_points() > 0);
    total += c.n_points();
    for (const auto& m : c.members) {
      CHECK(dist(to_real(m), c.center) <= 2 * r);
      seen.push_back(m);
    }
  }
  CHECK(total == s.points.size());
  std::sort(seen.begin(), seen.end());
  CHECK(seen == s.points);
}

TEST_CASE("classify_cap examples") {
  auto c0 = classify_cap(synthetic({{5, 0, 0}}, 5), 0.05);
  CHECK(c0.rank == 0);

  auto c1 = classify_cap(synthetic({{4, 3, 0}, {5, 0, 0}}, 5), 0.05);
  CHECK(c1.rank == 1);
  REQUIRE(c1.rank1_dir);
  CHECK(*c1.rank1_dir == IntVec3{1, -3, 0});

  IntVec3 p{3, 1, 7};
  auto c2 = classify_cap(synthetic({p, p + IntVec3{1, 0, 0}, p + IntVec3{0, 1, 0}}, 7), 0.1);
  CHECK(c2.rank == 2);
  REQUIRE(c2.rank2);
  CHECK((c2.rank2->w == IntVec3{0, 0, 1}));
  CHECK(c2.rank2->det == doctest::Approx(1.0));

  auto c3 = classify_cap(synthetic({p, p + IntVec3{1, 0, 0}, p + IntVec3{0, 1, 0}, p + IntVec3{0, 0, 1}}, 7), 0.1);
  CHECK(c3.rank == 3);
  CHECK_FALSE(c3.rank2);
}

TEST_CASE("rank-2 lattice data on real covers") {
  for (double lambda : {64.0, 128.0}) {
    double delta = 1 / std::sqrt(lambda);
    auto s = enumerate_shell(identity_form(), lambda, delta);
    auto cover = build_classified_cover(s);
    int rank2 = 0;
    for (const auto& c : cover) {
      if (c.rank == 1) {
        REQUIRE(c.rank1_dir);
        CHECK(gcd3(*c.rank1_dir) == 1);
        for (const auto& m : c.members) CHECK(is_zero(wedge(*c.rank1_dir, m - c.members[0])));
      }
      if (c.rank != 2) continue;
      ++rank2;
      REQUIRE(c.rank2);
      const auto& d = *c.rank2;
      CHECK_FALSE(is_zero(d.w));
      CHECK(d.w == wedge(d.u, d.v));
      CHECK(dot(to_real(d.w), c.normal) >= 0);
      CHECK(d.det == doctest::Approx(norm(d.w)));
      for (const auto& m : c.members) CHECK(dot(d.w, m - c.members[0]) == 0);
      Mat3 G = cap_metric(c.normal, delta);
      auto ip = [&](const IntVec3& a, const IntVec3& b) { return dot(to_real(a), mat_vec(G, to_real(b))); };
      CHECK(ip(d.u, d.u) <= ip(d.v, d.v) * (1 + 1e-12));
      CHECK(std::fabs(ip(d.u, d.v)) <= 0.5 * ip(d.u, d.u) * (1 + 1e-12));
      // (u, v) generates the difference lattice.
      for (const auto& m : c.members) CHECK(in_span(m - c.members[0], d.u, d.v));
    }
    CHECK(rank2 > 0);
  }
}

TEST_CASE("dyadic bins") {
  CHECK(dyadic_bin(1) == 0);
  CHECK(dyadic_bin(3) == 1);
  CHECK(dyadic_bin(4) == 2);
  CHECK(dyadic_bin(5) == 2);
  Cap a, b;
  a.members = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  a.rank = 2;
  b.members = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {2, 0, 0}};
  b.rank = 2;
  auto c = census({a, b}, 10, 0.1);
  CHECK(c.bins[{2, 1}] == 1);
  CHECK(c.bins[{2, 2}] == 1);
}

TEST_CASE("census equals an independent recount") {
  const double lambda = 128, delta = 1 / std::sqrt(128.0);
  auto s = enumerate_shell(identity_form(), lambda, delta);
  auto cover = build_classified_cover(s);
  auto c = census(cover, lambda, delta);
  std::map<std::pair<int, int>, std::int64_t> recount;
  for (const auto& cap : cover) {
    int sb = 0;
    while ((std::size_t{2} << sb) <= cap.n_points()) ++sb;
    ++recount[{cap.rank, sb}];
  }
  CHECK(recount == c.bins);
  std::int64_t total = 0;
  for (const auto& [k, v] : c.bins) total += v;
  CHECK(static_cast<std::size_t>(total) == c.caps);
  CHECK(c.points == s.points.size());
  CHECK(incidence_dominates(c));
}

TEST_CASE("incidence classes") {
  IntVec3 p{2, 5, 1}, u{1, 0, 0}, v{0, 1, 0};
  Cap line;
  line.members = {p, p + u, p + 2 * u};
  auto t = incidence_counts({line});
  CHECK(t[{1, 1}] == 1);
  CHECK(t.count({2, 0}) == 0);

  Cap grid;
  for (std::int64_t i = 0; i <= 2; ++i)
    for (std::int64_t j = 0; j <= 2; ++j) grid.members.push_back(p + i * u + j * v);
  auto g = incidence_counts({grid});
  CHECK(g[{2, 3}] == 1);
  CHECK(g.count({2, 0}) == 0);
  // Axis and diagonal lines of three, plus eight knight-move pairs.
  CHECK(g[{1, 1}] == 20);
  CHECK(g.size() == 2);
}

TEST_CASE("rank-2 invariant ratios") {
  CHECK(rank2_invariant_ratios({}, 10, 0.1).empty());
  const double lambda = 20;
  std::vector<IntVec3> m;
  for (std::int64_t i = 0; i <= 2; ++i)
    for (std::int64_t j = 0; j <= 2; ++j) m.push_back({i, j, static_cast<std::int64_t>(lambda)});
  auto cap = classify_cap(synthetic(m, lambda), 0.5);
  REQUIRE(cap.rank == 2);
  auto r = rank2_invariant_ratios({cap}, lambda, 0.5);
  REQUIRE(r.rho1.size() == 1);
  CHECK(r.rho1[0] == doctest::Approx(9.0 / 10.0));
  CHECK(r.rho2[0] == doctest::Approx(0.0));
}
