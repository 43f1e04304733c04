#pragma once

#include <complex>
#include <vector>

#include "shellcap/types.hpp"

namespace shellcap {

/// Fourier transform of the unit sphere's surface measure at radius r = |xi|:
/// 2 sin(2 pi r) / r, equal to 4 pi at r = 0.
double sphere_symbol(double r);
double surface_ft_sphere(const Vec3& xi);

/// Cutoff transform: exp(-pi r^2), so the cutoff is exp(-pi |y|^2) as well.
double chi_hat(double r);

/// lambda^2 delta m(lambda |xi|) chi_hat(delta |xi|).
double mollified_symbol(double lambda, double delta, const Vec3& xi);

/// Physical side at |k| = rho: the scaled cutoff convolved with the radius
/// lambda sphere. Closed form and 1D radial quadrature.
double mollified_physical(double lambda, double delta, double rho);
double mollified_physical_quadrature(double lambda, double delta, double rho, int panels = 2000);

/// Smooth step 6u^5 - 15u^4 + 10u^3 and the annular bump built from it.
double smooth_step(double u);
double bump_phi(double t);  // 1 on [0,1/2], 0 from 1 on
double bump_psi(double t);  // phi(t/2) - phi(t), supported in [1/2, 2]

struct DyadicSumSpec {
  double lambda = 0.0;
  double delta = 0.0;
  std::int64_t M = 1;
  Vec3 x{};
};

/// lambda delta sum_n psi(|n-x|/M) (-2i) e^{2 pi i lambda |n-x|} / |n-x|
std::complex<double> dyadic_sum(const DyadicSumSpec& spec);

/// 2 lambda delta sum_n psi(|n-x|/M) / |n-x|
double dyadic_majorant(const DyadicSumSpec& spec);

/// Points frac(1/2 + i alpha) of the additive recurrence on the plastic-number basis.
std::vector<Vec3> kronecker_samples(std::size_t n);

struct ExpsumRow {
  double lambda = 0.0;
  double delta = 0.0;
  std::int64_t M = 1;
  std::size_t x_index = 0;
  double abs_S = 0.0;
  double ratio_trivial = 0.0;  // |S| / (lambda delta M^2)
  bool in_window = false;      // M > lambda^{2/7}
  double ratio_guo = 0.0;      // |S| / (delta lambda^{103/94} M^{2-30/94}), in window only
};

/// M^7 > lambda^2
bool guo_window(double lambda, std::int64_t M);
double guo_bound(double lambda, double delta, std::int64_t M);

/// Rows for every dyadic M <= 4/delta and each sample.
std::vector<ExpsumRow> expsum_bound_report(double lambda, double delta, const std::vector<Vec3>& samples);

}  // namespace shellcap
