#include <cmath>
#include <numbers>

#include "shellcap/reference.hpp"

namespace shellcap::reference {

double lp_norm_grid(const CoefficientVector& f, double p, int N) {
  long double s = 0;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        std::complex<double> v = 0;
        for (std::size_t i = 0; i < f.support.size(); ++i) {
          const auto& n = f.support[i];
          long long m = ((n[0] * a + n[1] * b + n[2] * c) % N + N) % N;
          v += f.weights[i] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / N);
        }
        s += std::pow(std::abs(v), p);
      }
  return static_cast<double>(std::pow(s / (static_cast<long double>(N) * N * N), 1.0L / p));
}

}  // namespace shellcap::reference
