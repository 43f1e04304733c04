#include <cmath>
#include <numbers>

#include "shellcap/reference.hpp"

namespace shellcap::reference {

std::complex<double> dyadic_sum(const DyadicSumSpec& s) {
  if (!(s.delta > 0) || !(s.lambda > 0)) return {0.0, 0.0};
  const double R = 2.0 * static_cast<double>(s.M);
  std::int64_t lo[3], hi[3];
  for (int i = 0; i < 3; ++i) {
    lo[i] = static_cast<std::int64_t>(std::ceil(s.x[i] - R));
    hi[i] = static_cast<std::int64_t>(std::floor(s.x[i] + R));
  }
  double tr = 0.0, ti = 0.0;
  for (std::int64_t a = lo[0]; a <= hi[0]; ++a) {
    double pr = 0.0, pi = 0.0;
    for (std::int64_t b = lo[1]; b <= hi[1]; ++b)
      for (std::int64_t c = lo[2]; c <= hi[2]; ++c) {
        Vec3 y{static_cast<double>(a) - s.x[0], static_cast<double>(b) - s.x[1], static_cast<double>(c) - s.x[2]};
        double r = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
        double t = r / static_cast<double>(s.M);
        double w = bump_psi(t);
        if (w == 0.0) continue;
        double amp = s.lambda * s.delta * w / r;
        double th = 2.0 * std::numbers::pi * s.lambda * r;
        pr += amp * (2.0 * std::sin(th));
        pi += amp * (-2.0 * std::cos(th));
      }
    tr += pr;
    ti += pi;
  }
  return {tr, ti};
}

}  // namespace shellcap::reference
