#pragma once

// Straightforward serial implementations used as oracles in tests and as the
// baseline in benchmarks.

#include <complex>
#include <map>

#include "shellcap/caps.hpp"
#include "shellcap/energy.hpp"
#include "shellcap/expsum.hpp"
#include "shellcap/norms.hpp"

namespace shellcap::reference {

/// Tests every point of the cube [-R, R]^3 with R = ceil(lambda + 1).
ShellPointSet enumerate_shell(const QuadraticForm& Q, double lambda, double delta);

/// O(points x centers) nearest-center scan.
std::vector<std::size_t> assign_points(const ShellPointSet& shell, const std::vector<Vec3>& centers);

/// Ordered r-tuples tallied in a std::map.
std::map<IntVec3, std::int64_t> rep_counts(const PointSet& A, int r);
std::int64_t additive_energy(const PointSet& A, int r);

/// Direct evaluation of f at every grid point, no FFT.
double lp_norm_grid(const CoefficientVector& f, double p, int N);

/// Plain triple loop over the cube around x.
std::complex<double> dyadic_sum(const DyadicSumSpec& spec);

}  // namespace shellcap::reference
