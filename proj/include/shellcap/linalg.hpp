#pragma once

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <vector>

#include "shellcap/types.hpp"

namespace shellcap {

using Rational = boost::rational<std::int64_t>;
using RatMat3 = std::array<std::array<Rational, 3>, 3>;

/// Positive-definite form Q(x) = x^T A x with cached square root and adjugate.
/// `exact` is set when A was given with rational entries; membership tests then
/// run in integer arithmetic.
struct QuadraticForm {
  Mat3 A{};
  Mat3 L{};
  Mat3 A_ad{};
  double det_A = 0.0;
  std::optional<RatMat3> exact;

  bool is_identity() const;
};

QuadraticForm identity_form();
QuadraticForm make_form(const Mat3& A);
QuadraticForm make_form(const RatMat3& A);

/// Parses nine whitespace/comma separated entries (row-major). Integers, p/q and
/// plain decimals stay exact; anything else makes the form real.
QuadraticForm parse_form(const std::string& text);

double evaluate_form(const QuadraticForm& Q, const Vec3& x);
Vec3 gradient(const QuadraticForm& Q, const Vec3& x);  // A x

double det(const Mat3& m);
std::int64_t det(const IntMat3& m);
Mat3 adjugate(const Mat3& m);
IntMat3 adjugate(const IntMat3& m);
Mat3 multiply(const Mat3& a, const Mat3& b);
IntMat3 multiply(const IntMat3& a, const IntMat3& b);

struct IdentityCheck {
  bool holds = false;
  double residual = 0.0;
};

/// M^T((Mu)∧(Mx)) == det(M)(u∧x).
IdentityCheck wedge_identity_check(const IntMat3& M, const IntVec3& u, const IntVec3& x);
IdentityCheck wedge_identity_check(const Mat3& M, const IntVec3& u, const IntVec3& x);

struct Primitive {
  IntVec3 direction{};
  std::int64_t content = 0;
};

Primitive primitive_of(const IntVec3& u);
std::int64_t gcd3(const IntVec3& u);

/// Sign normalization used throughout: first nonzero coordinate positive.
IntVec3 sign_normalized(const IntVec3& u);

struct ReducedPair {
  IntVec3 u{};
  IntVec3 v{};
  // (u, v) = (b1, b2) * T, column convention: u = T[0][0] b1 + T[1][0] b2.
  std::array<std::array<std::int64_t, 2>, 2> T{{{1, 0}, {0, 1}}};
};

/// Lagrange-Gauss reduction of a rank-2 lattice. `gram` is the metric
/// <x,y> = x^T G y; Euclidean when absent.
ReducedPair gauss_reduce_2d(const IntVec3& b1, const IntVec3& b2,
                            const std::optional<Mat3>& gram = std::nullopt);

struct BasisExtension {
  IntVec3 p{};
  IntVec3 q{};
  IntVec3 v{};
  IntVec3 w{};
};

/// Completes primitive u to a unimodular (u, p, q) with (u∧p, u∧q) a reduced
/// basis of the orthogonal lattice u^⊥.
BasisExtension extend_basis(const IntVec3& u);

/// True when g lies in the integer span of v and w (v, w independent).
bool in_span(const IntVec3& g, const IntVec3& v, const IntVec3& w);

/// Every postcondition of extend_basis, checked exactly.
bool check_extension(const IntVec3& u, const BasisExtension& e);

/// Integer row echelon basis, grown one generator at a time.
class IntLattice {
 public:
  void insert(IntVec3 v);
  std::size_t rank() const { return rows_.size(); }
  const std::vector<IntVec3>& basis() const { return rows_; }

 private:
  std::vector<IntVec3> rows_;
  std::vector<int> pivots_;
};

}  // namespace shellcap
