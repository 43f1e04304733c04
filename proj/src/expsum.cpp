#include "shellcap/expsum.hpp"

#include <cmath>
#include <numbers>

namespace shellcap {

namespace {
constexpr double kPi = std::numbers::pi;
}

double sphere_symbol(double r) {
  if (r == 0.0) return 4.0 * kPi;
  return 2.0 * std::sin(2.0 * kPi * r) / r;
}

double surface_ft_sphere(const Vec3& xi) { return sphere_symbol(norm(xi)); }

double chi_hat(double r) { return std::exp(-kPi * r * r); }

double mollified_symbol(double lambda, double delta, const Vec3& xi) {
  const double r = norm(xi);
  return lambda * lambda * delta * sphere_symbol(lambda * r) * chi_hat(delta * r);
}

double mollified_physical(double lambda, double delta, double rho) {
  const double d2 = delta * delta;
  if (rho == 0.0) {
    // Limit rho -> 0: (4 pi lambda^2 / delta^2) e^{-pi lambda^2 / delta^2}
    return 4.0 * kPi * lambda * lambda / d2 * std::exp(-kPi * lambda * lambda / d2);
  }
  const double a = rho - lambda, b = rho + lambda;
  return lambda / rho * (std::exp(-kPi * a * a / d2) - std::exp(-kPi * b * b / d2));
}

double mollified_physical_quadrature(double lambda, double delta, double rho, int panels) {
  // Integrate over the distance s = |k - y| from k to the sphere point y.
  const double d2 = delta * delta;
  const double lo = std::fabs(rho - lambda);
  const double hi = std::min(rho + lambda, lo + 12.0 * delta);
  if (rho == 0.0) return mollified_physical(lambda, delta, 0.0);
  if (panels % 2) ++panels;
  const double h = (hi - lo) / panels;
  auto g = [&](double s) { return s * std::exp(-kPi * s * s / d2); };
  double sum = g(lo) + g(hi);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * g(lo + i * h);
  return 2.0 * kPi * lambda / (rho * d2) * sum * h / 3.0;
}

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double bump_phi(double t) {
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  return 1.0 - smooth_step(2.0 * t - 1.0);
}

double bump_psi(double t) { return bump_phi(0.5 * t) - bump_phi(t); }

namespace {

struct Box {
  std::int64_t lo[3], hi[3];
};

Box annulus_box(const DyadicSumSpec& s) {
  Box b{};
  const double R = 2.0 * static_cast<double>(s.M);
  for (int i = 0; i < 3; ++i) {
    b.lo[i] = static_cast<std::int64_t>(std::ceil(s.x[i] - R));
    b.hi[i] = static_cast<std::int64_t>(std::floor(s.x[i] + R));
  }
  return b;
}

}  // namespace

std::complex<double> dyadic_sum(const DyadicSumSpec& s) {
  if (!(s.delta > 0) || !(s.lambda > 0)) return {0.0, 0.0};
  const Box b = annulus_box(s);
  const double M = static_cast<double>(s.M);
  const double pref = s.lambda * s.delta;
  const std::int64_t n0 = b.hi[0] - b.lo[0] + 1;
  std::vector<double> re(n0, 0.0), im(n0, 0.0);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n0; ++i) {
    const double y0 = static_cast<double>(b.lo[0] + i) - s.x[0];
    double sr = 0.0, si = 0.0;
    for (std::int64_t n1 = b.lo[1]; n1 <= b.hi[1]; ++n1) {
      const double y1 = static_cast<double>(n1) - s.x[1];
      for (std::int64_t n2 = b.lo[2]; n2 <= b.hi[2]; ++n2) {
        const double y2 = static_cast<double>(n2) - s.x[2];
        const double r = std::sqrt(y0 * y0 + y1 * y1 + y2 * y2);
        const double w = bump_psi(r / M);
        if (w == 0.0) continue;
        const double c = pref * w / r;
        const double th = 2.0 * kPi * s.lambda * r;
        // (-2i) e^{i th} = 2 sin th - 2i cos th
        sr += c * (2.0 * std::sin(th));
        si += c * (-2.0 * std::cos(th));
      }
    }
    re[i] = sr;
    im[i] = si;
  }
  double tr = 0.0, ti = 0.0;
  for (std::int64_t i = 0; i < n0; ++i) {
    tr += re[i];
    ti += im[i];
  }
  return {tr, ti};
}

double dyadic_majorant(const DyadicSumSpec& s) {
  if (!(s.delta > 0)) return 0.0;
  const Box b = annulus_box(s);
  const double M = static_cast<double>(s.M);
  double total = 0.0;
  for (std::int64_t n0 = b.lo[0]; n0 <= b.hi[0]; ++n0)
    for (std::int64_t n1 = b.lo[1]; n1 <= b.hi[1]; ++n1)
      for (std::int64_t n2 = b.lo[2]; n2 <= b.hi[2]; ++n2) {
        Vec3 y{n0 - s.x[0], n1 - s.x[1], n2 - s.x[2]};
        double r = norm(y);
        double w = bump_psi(r / M);
        if (w != 0.0) total += w / r;
      }
  return 2.0 * s.lambda * s.delta * total;
}

std::vector<Vec3> kronecker_samples(std::size_t n) {
  const double g = 1.22074408460575947536;
  const double a[3] = {1.0 / g, 1.0 / (g * g), 1.0 / (g * g * g)};
  std::vector<Vec3> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) {
      double v = 0.5 + a[k] * static_cast<double>(i);
      out[i][k] = v - std::floor(v);
    }
  return out;
}

bool guo_window(double lambda, std::int64_t M) {
  const double m = static_cast<double>(M);
  return std::pow(m, 7.0) > lambda * lambda;
}

double guo_bound(double lambda, double delta, std::int64_t M) {
  return delta * std::pow(lambda, 103.0 / 94.0) * std::pow(static_cast<double>(M), 2.0 - 30.0 / 94.0);
}

std::vector<ExpsumRow> expsum_bound_report(double lambda, double delta, const std::vector<Vec3>& samples) {
  std::vector<ExpsumRow> rows;
  if (!(delta > 0)) return rows;
  for (std::int64_t M = 1; static_cast<double>(M) <= 4.0 / delta; M *= 2) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      ExpsumRow r;
      r.lambda = lambda;
      r.delta = delta;
      r.M = M;
      r.x_index = i;
      r.abs_S = std::abs(dyadic_sum({lambda, delta, M, samples[i]}));
      r.ratio_trivial = r.abs_S / (lambda * delta * static_cast<double>(M) * static_cast<double>(M));
      r.in_window = guo_window(lambda, M);
      if (r.in_window) r.ratio_guo = r.abs_S / guo_bound(lambda, delta, M);
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace shellcap
