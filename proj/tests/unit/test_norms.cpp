#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "shellcap/energy.hpp"
#include "shellcap/errors.hpp"
#include "shellcap/norms.hpp"
#include "shellcap/reference.hpp"

using namespace shellcap;

namespace {

CoefficientVector two_freqs() {
  CoefficientVector f;
  f.support = {{0, 0, 0}, {3, -1, 2}};
  f.weights = {1.0, 1.0};
  return f;
}

CoefficientVector single() {
  CoefficientVector f;
  f.support = {{2, 1, -1}};
  f.weights = {1.0};
  return f;
}

}  // namespace

TEST_CASE("quasimodes") {
  auto s1 = enumerate_shell(identity_form(), 1, 0.05);
  auto f = make_point_quasimode(s1);
  CHECK(f.support.size() == 6);
  CHECK(f.integer_weights());
  auto s5 = enumerate_shell(identity_form(), 5, 0.05);
  CHECK(l2_norm(make_point_quasimode(s5)) == doctest::Approx(std::sqrt(30.0)));
  auto cover = build_classified_cover(s5);
  auto c = make_cap_quasimode(cover.front());
  CHECK(c.support.size() == 1);
  CHECK(c.weights[0] == std::complex<double>(1, 0));
  CHECK_THROWS_AS(make_point_quasimode(enumerate_shell(identity_form(), 1.2, 0.01)), DomainError);
}

TEST_CASE("even norms") {
  for (int r : {1, 2, 3}) CHECK(lp_norm_even(single(), r).norm == doctest::Approx(1.0));
  auto e = lp_norm_even(two_freqs(), 2);
  REQUIRE(e.exact);
  CHECK(*e.exact == 6);
  CHECK(e.norm == doctest::Approx(std::pow(6.0, 0.25)));
  auto s5 = enumerate_shell(identity_form(), 5, 0.05);
  auto p = lp_norm_even(make_point_quasimode(s5), 2);
  REQUIRE(p.exact);
  CHECK(*p.exact == additive_energy(s5.points, 2));
}

TEST_CASE("grid norms") {
  for (double p : {2.0, 3.5, 4.0, 8.0}) CHECK(lp_norm_grid(single(), p, 8) == doctest::Approx(1.0));
  CHECK(lp_norm_grid(two_freqs(), 4, 16) == doctest::Approx(std::pow(6.0, 0.25)).epsilon(1e-9));
  auto s = enumerate_shell(identity_form(), 8, 0.25);
  auto f = make_point_quasimode(s);
  double even = lp_norm_even(f, 2).norm;
  double grid = lp_norm_grid(f, 4, 64);
  CHECK(std::fabs(even - grid) / even < 1e-8);
  CHECK(default_grid_size(8) == 64);
  CHECK(default_grid_size(16) == 128);
  CHECK(default_grid_size(15.9) == 64);
  CHECK_THROWS_AS(lp_norm_grid(f, 4, 16), DomainError);
}

TEST_CASE("FFT grid matches direct evaluation") {
  auto s = enumerate_shell(identity_form(), 4, 0.3);
  auto f = make_point_quasimode(s);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (auto& w : f.weights) w = {g(rng), g(rng)};
  for (double p : {3.0, 4.0, 7.5})
    CHECK(lp_norm_grid(f, p, 16) == doctest::Approx(reference::lp_norm_grid(f, p, 16)).epsilon(1e-10));
  auto multi = lp_norm_grid_multi(f, {2.0, 4.0, 6.0}, 32);
  CHECK(multi[0] == doctest::Approx(l2_norm(f)).epsilon(1e-12));
  CHECK(multi[1] == doctest::Approx(lp_norm_even(f, 2).norm).epsilon(1e-10));
  CHECK(multi[2] == doctest::Approx(lp_norm_even(f, 3).norm).epsilon(1e-10));
  auto err = lp_norm_grid_with_error(f, 5.0, 16);
  CHECK(err.N == 16);
  CHECK(err.error >= 0);
  CHECK(err.error < 1e-2 * err.value);
  CHECK(lp_norm_grid_with_error(f, 5.0, 32).error < err.error);
}

TEST_CASE("norm nesting") {
  auto s = enumerate_shell(identity_form(), 10, 0.3);
  auto f = make_point_quasimode(s);
  double prev = 0;
  for (double p : {2.0, 3.0, 4.0, 5.0, 6.0}) {
    double v = lp_norm_grid(f, p, 64);
    CHECK(v >= prev * (1 - 1e-12));
    prev = v;
  }
}

TEST_CASE("conjectured bound") {
  auto a = conjectured_bound(100, 0.01, 6);
  CHECK(a.cap_term == doctest::Approx(1.0));
  CHECK(a.point_term == doctest::Approx(1.0));
  CHECK(a.total == doctest::Approx(2.0));
  CHECK(conjectured_bound(100, 0.01, 4).total == doctest::Approx(1.3162).epsilon(1e-4));
  CHECK(conjectured_bound(100, 0.01, std::numeric_limits<double>::infinity()).total == doctest::Approx(11.0));
}

TEST_CASE("regimes") {
  CHECK(regime_classify(100, 0.1, 5) == Regime::Boundary);
  // delta above lambda^{2-p/2}: the point term dominates.
  CHECK(regime_classify(100, 0.1, 6) == Regime::PointFocusing);
  CHECK(regime_classify(100, 0.1, 3) == Regime::GeodesicFocusing);
  CHECK(regime_classify(100, 0.005, 6) == Regime::GeodesicFocusing);
  CHECK(near_regime_boundary(100, 0.015, 6));
  CHECK_FALSE(near_regime_boundary(100, 0.1, 6));
  CHECK(regime_name(Regime::PointFocusing) == "point-focusing");
  for (double l : {10.0, 50.0, 300.0})
    for (double d : {0.02, 0.2, 0.7})
      for (double p : {3.0, 4.5, 8.0}) {
        auto b = conjectured_bound(l, d, p);
        Regime r = regime_classify(l, d, p);
        if (r == Regime::PointFocusing) CHECK(b.point_term > b.cap_term);
        if (r == Regime::GeodesicFocusing) CHECK(b.cap_term > b.point_term);
      }
}

TEST_CASE("region function") {
  auto v49 = proven_region_threshold(Rational(49));
  CHECK(*v49.exact == Rational(-1, 2));
  CHECK(v49.continuous);
  CHECK(region_piece(6, Rational(49)) == Rational(-1, 2));
  auto v = proven_region_threshold(Rational(235, 52));
  CHECK(*v.exact == Rational(-77, 104));
  CHECK(v.continuous);
  CHECK(region_piece(3, Rational(389, 79)) == Rational(-85, 158));
  CHECK(region_piece(4, Rational(389, 79)) == Rational(-85, 158));
  auto five = proven_region_threshold(Rational(5));
  CHECK(*five.exact == Rational(-1, 2));
  CHECK_FALSE(five.continuous);
  CHECK(five.left == doctest::Approx(-179.0 / 346.0));
  CHECK(proven_region_threshold(3.0).exponent == -1.0);
  CHECK(proven_region_threshold(4.2).piece == 2);
  CHECK(proven_region_threshold(4.7).exponent == doctest::Approx(4.7 / 2 - 3));
  CHECK(proven_region_threshold(6.0).exponent == -0.5);
  CHECK(proven_region_threshold(1000.0).exponent == doctest::Approx(-(85000.0 - 358) / (158000.0 - 128)));
  CHECK(proven_region_threshold(std::numeric_limits<double>::infinity()).exponent ==
        doctest::Approx(-85.0 / 158.0));
  CHECK(proven_region_threshold(std::sqrt(23.0)).piece == 3);
  CHECK_THROWS_AS(proven_region_threshold(1.5), DomainError);
}

TEST_CASE("few/many split") {
  auto s = enumerate_shell(identity_form(), 5, 0.05);
  auto m = split_few_many(s, build_classified_cover(s));
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    CHECK(m.few[i]);
    CHECK_FALSE(m.many[i]);
  }
  ShellPointSet syn;
  syn.lambda = 1;
  syn.delta = 1;
  Cap big;
  for (std::int64_t i = 0; i < 100; ++i) {
    syn.points.push_back({i, 0, 0});
    big.members.push_back({i, 0, 0});
  }
  auto mm = split_few_many(syn, {big});
  for (std::size_t i = 0; i < 100; ++i) CHECK(mm.many[i]);
  auto e = split_few_many(enumerate_shell(identity_form(), 1.2, 0.01), {});
  CHECK(e.few.empty());
  CHECK(e.many.empty());
}

TEST_CASE("estimates and witnesses") {
  auto s = enumerate_shell(identity_form(), 16, 0.25);
  auto est = estimate_ratio(make_point_quasimode(s), 16, 0.25, 4);
  CHECK(est.method == "even-exact");
  CHECK(est.ratio >= 1.0);
  CHECK(est.bound == doctest::Approx(conjectured_bound(16, 0.25, 4).total));
  auto cover = build_classified_cover(s);
  auto w = quasimode_witnesses(s, cover, {4, 6});
  REQUIRE(w.size() == 2);
  for (const auto& row : w) {
    CHECK(row.point.ratio >= 1.0);
    CHECK(row.best_cap.ratio >= 1.0);
    CHECK(row.winner == (row.point.ratio >= row.best_cap.ratio ? QuasimodeKind::Point : QuasimodeKind::Cap));
  }
}
