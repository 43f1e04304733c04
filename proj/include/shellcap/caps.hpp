#pragma once

#include <map>
#include <optional>
#include <vector>

#include "shellcap/shell.hpp"

namespace shellcap {

struct Rank2Data {
  IntVec3 u{};  // reduced basis in the stretched metric
  IntVec3 v{};
  IntVec3 w{};  // u ∧ v, oriented so w·normal >= 0
  double det = 0.0;
};

struct Cap {
  Vec3 center{};  // sqrt(Q(center)) = lambda
  Vec3 grad{};    // A center
  Vec3 normal{};  // grad / |grad|
  std::vector<IntVec3> members;
  int rank = 0;
  std::optional<IntVec3> rank1_dir;
  std::optional<Rank2Data> rank2;

  std::size_t n_points() const { return members.size(); }
};

/// Greedy maximal sqrt(lambda delta)-separated centers on {sqrt Q = lambda},
/// seeded from the projected shell points in lexicographic order.
std::vector<Vec3> seed_centers(const ShellPointSet& shell);

/// Index of the nearest center for each shell point; ties go to the
/// lexicographically smaller center.
std::vector<std::size_t> assign_points(const ShellPointSet& shell, const std::vector<Vec3>& centers);

/// Groups points by center, dropping empty caps. Caps stay in seeding order.
std::vector<Cap> group_caps(const ShellPointSet& shell, const std::vector<Vec3>& centers,
                            const std::vector<std::size_t>& owner);

/// Seeding + assignment + grouping. Caps are not yet classified.
std::vector<Cap> build_cover(const ShellPointSet& shell);

/// Gram matrix of the stretch I + delta^{-1} n n^T.
Mat3 cap_metric(const Vec3& normal, double delta);

Cap classify_cap(Cap cap, double delta);
void classify_all(std::vector<Cap>& cover, double delta);

/// Full cover with every cap classified.
std::vector<Cap> build_classified_cover(const ShellPointSet& shell);

int dyadic_bin(std::size_t n);  // floor(log2 n), n >= 1

using BinTable = std::map<std::pair<int, int>, std::int64_t>;  // (rank, s) -> count

BinTable incidence_counts(const std::vector<Cap>& cover);

struct CapCensus {
  double lambda = 0.0;
  double delta = 0.0;
  BinTable bins;       // caps by (rank, s)
  BinTable incidence;  // affine classes by (rank, t)
  std::size_t caps = 0;
  std::size_t points = 0;
};

CapCensus census(const std::vector<Cap>& cover, double lambda, double delta);

/// N^r_s <= Ñ^r_s for r in {1, 2}.
bool incidence_dominates(const CapCensus& c);

struct Rank2Ratios {
  std::vector<double> rho1;
  std::vector<double> rho2;
  double max_rho1 = 0.0;
  double max_rho2 = 0.0;
  bool empty() const { return rho1.empty(); }
};

Rank2Ratios rank2_invariant_ratios(const std::vector<Cap>& cover, double lambda, double delta);

}  // namespace shellcap
