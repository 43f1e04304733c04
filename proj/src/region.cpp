#include <cmath>
#include <limits>

#include "shellcap/errors.hpp"
#include "shellcap/norms.hpp"

namespace shellcap {

namespace {

const Rational kBreak2{235, 52};
const Rational kBreak3{389, 79};

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Piece owning p; breakpoints go to the piece on their left except at the
// gap at 389/79, which the middle piece closes by continuity.
int piece_of(const Rational& p) {
  if (p <= 4) return 1;
  if (p <= kBreak2) return 2;
  if (p <= kBreak3) return 3;
  if (p < 5) return 4;
  if (p <= 49) return 5;
  return 6;
}

}  // namespace

Rational region_piece(int piece, const Rational& p) {
  switch (piece) {
    case 1: return Rational(-1);
    case 2: return -(316 - 27 * p) / (104 * (p - 2));
    case 3: return p / 2 - 3;
    case 4: return -(9 * p - 224) / (444 - 158 * p);
    case 5: return Rational(-1, 2);
    case 6: return -(85 * p - 358) / (158 * p - 128);
  }
  throw DomainError("region piece out of range");
}

RegionValue proven_region_threshold(const Rational& p) {
  if (p < 2) throw DomainError("p must be at least 2");
  RegionValue v;
  v.piece = piece_of(p);
  v.exact = region_piece(v.piece, p);
  v.exponent = to_double(*v.exact);
  static const Rational breaks[] = {Rational(4), kBreak2, kBreak3, Rational(5), Rational(49)};
  for (int i = 0; i < 5; ++i) {
    if (p != breaks[i]) continue;
    v.at_breakpoint = true;
    Rational l = region_piece(i + 1, p), r = region_piece(i + 2, p);
    v.left = to_double(l);
    v.right = to_double(r);
    v.continuous = l == r;
  }
  if (!v.at_breakpoint) v.left = v.right = v.exponent;
  return v;
}

RegionValue proven_region_threshold(double p) {
  if (!(p >= 2)) throw DomainError("p must be at least 2");
  if (std::isinf(p)) {
    RegionValue v;
    v.piece = 6;
    v.exact = Rational(-85, 158);
    v.exponent = v.left = v.right = -85.0 / 158.0;
    return v;
  }
  // Rational p with a modest denominator is evaluated exactly.
  for (std::int64_t den : {1, 2, 4, 5, 8, 10, 52, 79, 100, 1000}) {
    double num = p * den;
    if (num == std::round(num) && std::fabs(num) < 1e12)
      return proven_region_threshold(Rational(static_cast<std::int64_t>(num), den));
  }
  RegionValue v;
  if (p <= 4) v.piece = 1;
  else if (p <= 235.0 / 52.0) v.piece = 2;
  else if (p <= 389.0 / 79.0) v.piece = 3;
  else if (p < 5) v.piece = 4;
  else if (p <= 49) v.piece = 5;
  else v.piece = 6;
  switch (v.piece) {
    case 1: v.exponent = -1; break;
    case 2: v.exponent = -(316 - 27 * p) / (104 * (p - 2)); break;
    case 3: v.exponent = p / 2 - 3; break;
    case 4: v.exponent = -(9 * p - 224) / (444 - 158 * p); break;
    case 5: v.exponent = -0.5; break;
    default: v.exponent = -(85 * p - 358) / (158 * p - 128); break;
  }
  v.left = v.right = v.exponent;
  return v;
}

}  // namespace shellcap
