#include "shellcap/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>
#include <regex>
#include <sstream>

#include "shellcap/errors.hpp"

namespace shellcap {

namespace {

using i128 = __int128;

struct ExtGcd {
  std::int64_t g, s, t;
};

// s*a + t*b = g >= 0
ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

i128 dot128(const IntVec3& a, const IntVec3& b) {
  return i128(a[0]) * b[0] + i128(a[1]) * b[1] + i128(a[2]) * b[2];
}

// Nearest integer to a/b (b > 0), ties toward zero.
std::int64_t round_ties_to_zero(i128 a, i128 b) {
  i128 mag = a < 0 ? -a : a;
  i128 n = 2 * mag - b;
  if (n <= 0) return 0;
  auto q = static_cast<std::int64_t>((n + 2 * b - 1) / (2 * b));
  return a < 0 ? -q : q;
}

std::int64_t round_ties_to_zero(double mu) {
  double mag = std::fabs(mu);
  if (mag <= 0.5) return 0;
  auto q = static_cast<std::int64_t>(std::ceil(mag - 0.5));
  return mu < 0 ? -q : q;
}

Mat3 to_real(const RatMat3& r) {
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[i][j] = static_cast<double>(r[i][j].numerator()) / static_cast<double>(r[i][j].denominator());
  return m;
}

void fill_derived(QuadraticForm& Q) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < i; ++j)
      if (Q.A[i][j] != Q.A[j][i]) throw DomainError("form matrix is not symmetric");
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = Q.A[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(a);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
    throw DomainError("form is not positive definite");
  Eigen::Matrix3d l = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
                      es.eigenvectors().transpose();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Q.L[i][j] = 0.5 * (l(i, j) + l(j, i));
  Q.A_ad = adjugate(Q.A);
  Q.det_A = det(Q.A);
}

}  // namespace

bool QuadraticForm::is_identity() const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (A[i][j] != (i == j ? 1.0 : 0.0)) return false;
  return true;
}

QuadraticForm identity_form() {
  RatMat3 r{};
  for (int i = 0; i < 3; ++i) r[i][i] = 1;
  return make_form(r);
}

QuadraticForm make_form(const Mat3& A) {
  QuadraticForm Q;
  Q.A = A;
  fill_derived(Q);
  return Q;
}

QuadraticForm make_form(const RatMat3& A) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < i; ++j)
      if (A[i][j] != A[j][i]) throw DomainError("form matrix is not symmetric");
  QuadraticForm Q;
  Q.A = to_real(A);
  Q.exact = A;
  fill_derived(Q);
  return Q;
}

QuadraticForm parse_form(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  static const std::regex integer(R"([+-]?\d+)");
  static const std::regex fraction(R"(([+-]?\d+)/(\d+))");
  static const std::regex decimal(R"(([+-]?)(\d*)\.(\d*))");
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.size() != 9) throw ConfigError("form: expected 9 entries, got " + std::to_string(tokens.size()));

  RatMat3 r{};
  Mat3 d{};
  bool rational = true;
  for (int k = 0; k < 9; ++k) {
    const auto& tok = tokens[k];
    std::smatch m;
    Rational v;
    if (std::regex_match(tok, integer)) {
      v = Rational(std::stoll(tok));
    } else if (std::regex_match(tok, m, fraction)) {
      std::int64_t den = std::stoll(m[2]);
      if (den == 0) throw ConfigError("form: zero denominator in '" + tok + "'");
      v = Rational(std::stoll(m[1]), den);
    } else if (std::regex_match(tok, m, decimal) && (m[2].length() + m[3].length()) > 0 &&
               m[3].length() <= 15) {
      std::string digits = std::string(m[2]) + std::string(m[3]);
      std::int64_t den = 1;
      for (std::ptrdiff_t i = 0; i < m[3].length(); ++i) den *= 10;
      v = Rational(std::stoll(digits.empty() ? "0" : digits), den);
      if (m[1] == "-") v = -v;
    } else {
      rational = false;
      try {
        d[k / 3][k % 3] = std::stod(tok);
      } catch (const std::exception&) {
        throw ConfigError("form: cannot parse entry '" + tok + "'");
      }
      continue;
    }
    r[k / 3][k % 3] = v;
    d[k / 3][k % 3] = static_cast<double>(v.numerator()) / static_cast<double>(v.denominator());
  }
  return rational ? make_form(r) : make_form(d);
}

double evaluate_form(const QuadraticForm& Q, const Vec3& x) { return dot(x, mat_vec(Q.A, x)); }

Vec3 gradient(const QuadraticForm& Q, const Vec3& x) { return mat_vec(Q.A, x); }

double det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::int64_t det(const IntMat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <class M>
static M adjugate_impl(const M& m) {
  M a{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      a[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  }
  return a;
}

Mat3 adjugate(const Mat3& m) { return adjugate_impl(m); }
IntMat3 adjugate(const IntMat3& m) { return adjugate_impl(m); }

template <class M>
static M multiply_impl(const M& a, const M& b) {
  M c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat3 multiply(const Mat3& a, const Mat3& b) { return multiply_impl(a, b); }
IntMat3 multiply(const IntMat3& a, const IntMat3& b) { return multiply_impl(a, b); }

IdentityCheck wedge_identity_check(const IntMat3& M, const IntVec3& u, const IntVec3& x) {
  IntVec3 lhs = mat_vec(transpose(M), wedge(mat_vec(M, u), mat_vec(M, x)));
  IntVec3 rhs = det(M) * wedge(u, x);
  double res = 0;
  for (int i = 0; i < 3; ++i) res = std::max(res, std::fabs(static_cast<double>(lhs[i] - rhs[i])));
  return {lhs == rhs, res};
}

IdentityCheck wedge_identity_check(const Mat3& M, const IntVec3& u, const IntVec3& x) {
  Vec3 ur = to_real(u), xr = to_real(x);
  Vec3 lhs = mat_vec(transpose(M), wedge(mat_vec(M, ur), mat_vec(M, xr)));
  Vec3 rhs = det(M) * wedge(ur, xr);
  double res = 0, scale = 0;
  for (int i = 0; i < 3; ++i) {
    res = std::max(res, std::fabs(lhs[i] - rhs[i]));
    scale = std::max({scale, std::fabs(lhs[i]), std::fabs(rhs[i])});
  }
  double rel = scale > 0 ? res / scale : res;
  return {rel <= 1e-10, rel};
}

std::int64_t gcd3(const IntVec3& u) {
  return std::gcd(std::gcd(std::abs(u[0]), std::abs(u[1])), std::abs(u[2]));
}

IntVec3 sign_normalized(const IntVec3& u) {
  for (auto c : u) {
    if (c > 0) return u;
    if (c < 0) return -u;
  }
  return u;
}

Primitive primitive_of(const IntVec3& u) {
  if (is_zero(u)) throw DomainError("zero vector has no direction");
  std::int64_t g = gcd3(u);
  IntVec3 d{u[0] / g, u[1] / g, u[2] / g};
  return {sign_normalized(d), g};
}

ReducedPair gauss_reduce_2d(const IntVec3& b1, const IntVec3& b2, const std::optional<Mat3>& gram) {
  if (is_zero(wedge(b1, b2))) throw DomainError("rank deficient");
  ReducedPair r{b1, b2, {{{1, 0}, {0, 1}}}};
  auto swap_uv = [&] {
    std::swap(r.u, r.v);
    std::swap(r.T[0][0], r.T[0][1]);
    std::swap(r.T[1][0], r.T[1][1]);
  };
  auto sub = [&](std::int64_t q) {
    r.v = r.v - q * r.u;
    r.T[0][1] -= q * r.T[0][0];
    r.T[1][1] -= q * r.T[1][0];
  };

  if (!gram) {
    for (;;) {
      if (dot128(r.v, r.v) < dot128(r.u, r.u)) swap_uv();
      std::int64_t q = round_ties_to_zero(dot128(r.u, r.v), dot128(r.u, r.u));
      if (q == 0) break;
      sub(q);
    }
    return r;
  }

  const Mat3& G = *gram;
  auto ip = [&](const IntVec3& a, const IntVec3& b) { return dot(to_real(a), mat_vec(G, to_real(b))); };
  for (int iter = 0; iter < 10000; ++iter) {
    if (ip(r.v, r.v) < ip(r.u, r.u)) swap_uv();
    double uu = ip(r.u, r.u);
    std::int64_t q = round_ties_to_zero(ip(r.u, r.v) / uu);
    if (q == 0) break;
    double before = ip(r.v, r.v);
    IntVec3 cand = r.v - q * r.u;
    if (!(ip(cand, cand) < before)) break;  // rounding stall
    sub(q);
  }
  return r;
}

namespace {

// Reduce p modulo u toward the shortest representative.
IntVec3 reduce_mod(const IntVec3& p, const IntVec3& u) {
  std::int64_t k = round_ties_to_zero(dot128(p, u), dot128(u, u));
  return p - k * u;
}

}  // namespace

BasisExtension extend_basis(const IntVec3& u) {
  if (is_zero(u) || gcd3(u) != 1) throw DomainError("input not primitive");

  // Column operations taking the row u^T to e1^T; V accumulates them.
  IntMat3 V{};
  for (int i = 0; i < 3; ++i) V[i][i] = 1;
  IntVec3 row = u;
  auto combine = [&](int k, int j) {
    if (row[j] == 0) return;
    ExtGcd e = ext_gcd(row[k], row[j]);
    std::int64_t a = -row[j] / e.g, b = row[k] / e.g;
    for (int i = 0; i < 3; ++i) {
      std::int64_t ck = V[i][k], cj = V[i][j];
      V[i][k] = e.s * ck + e.t * cj;
      V[i][j] = a * ck + b * cj;
    }
    row[k] = e.g;
    row[j] = 0;
  };
  combine(1, 2);
  combine(0, 1);
  if (row[0] < 0) {
    for (int i = 0; i < 3; ++i) V[i][0] = -V[i][0];
  }
  // det V = ±1, so V^{-1} = ±adj(V); its first row is u.
  IntMat3 Vinv = adjugate(V);
  std::int64_t dv = det(V);
  if (dv == -1)
    for (auto& r : Vinv) r = -r;
  IntVec3 p0 = reduce_mod(Vinv[1], u), q0 = reduce_mod(Vinv[2], u);

  ReducedPair red = gauss_reduce_2d(wedge(u, p0), wedge(u, q0));
  BasisExtension e;
  e.p = red.T[0][0] * p0 + red.T[1][0] * q0;
  e.q = red.T[0][1] * p0 + red.T[1][1] * q0;

  auto refresh = [&] {
    e.p = reduce_mod(e.p, u);
    e.q = reduce_mod(e.q, u);
    e.v = wedge(u, e.p);
    e.w = wedge(u, e.q);
  };
  refresh();
  if (dot128(e.v, e.v) == dot128(e.w, e.w) && sign_normalized(e.v) < sign_normalized(e.w)) {
    std::swap(e.p, e.q);
    refresh();
  }
  if (sign_normalized(e.v) != e.v) {
    e.p = -e.p;
    refresh();
  }
  if (det(IntMat3{u, e.p, e.q}) < 0) {
    e.q = -e.q;
    refresh();
  }
  return e;
}

bool in_span(const IntVec3& g, const IntVec3& v, const IntVec3& w) {
  IntVec3 n = wedge(v, w);
  if (is_zero(n)) return false;
  if (dot128(g, n) != 0) return false;
  i128 nn = dot128(n, n);
  i128 a = dot128(wedge(g, w), n);
  i128 b = dot128(wedge(v, g), n);
  return a % nn == 0 && b % nn == 0;
}

bool check_extension(const IntVec3& u, const BasisExtension& e) {
  std::int64_t d = det(IntMat3{u, e.p, e.q});
  if (d != 1 && d != -1) return false;
  if (e.v != wedge(u, e.p) || e.w != wedge(u, e.q)) return false;
  if (dot(u, e.v) != 0 || dot(u, e.w) != 0) return false;
  IntVec3 vw = wedge(e.v, e.w);
  if (vw != u && vw != -u) return false;
  IntVec3 g1{u[1], -u[0], 0}, g2{u[2], 0, -u[0]}, g3{0, u[2], -u[1]};
  for (const auto& g : {g1, g2, g3})
    if (!in_span(g, e.v, e.w)) return false;
  return true;
}

void IntLattice::insert(IntVec3 v) {
  for (int c = 0; c < 3 && !is_zero(v); ++c) {
    if (v[c] == 0) continue;
    auto it = std::find(pivots_.begin(), pivots_.end(), c);
    if (it == pivots_.end()) {
      if (v[c] < 0) v = -v;
      auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c) - pivots_.begin();
      pivots_.insert(pivots_.begin() + pos, c);
      rows_.insert(rows_.begin() + pos, v);
      break;
    }
    IntVec3& b = rows_[it - pivots_.begin()];
    ExtGcd e = ext_gcd(b[c], v[c]);
    IntVec3 nb = e.s * b + e.t * v;
    v = (b[c] / e.g) * v - (v[c] / e.g) * b;
    b = nb[c] < 0 ? -nb : nb;
  }
  // Reduce entries above each pivot to keep coordinates small.
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    int c = pivots_[j];
    std::int64_t piv = rows_[j][c];
    for (std::size_t i = 0; i < j; ++i) {
      std::int64_t x = rows_[i][c];
      std::int64_t q = x >= 0 ? x / piv : -((-x + piv - 1) / piv);
      if (q != 0) rows_[i] = rows_[i] - q * rows_[j];
    }
  }
}

}  // namespace shellcap
