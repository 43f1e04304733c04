#include <cmath>

#include "shellcap/reference.hpp"

namespace shellcap::reference {

ShellPointSet enumerate_shell(const QuadraticForm& Q, double lambda, double delta) {
  ShellTest test(Q, lambda, delta);
  ShellPointSet out;
  out.form = Q;
  out.lambda = lambda;
  out.delta = delta;
  auto box = bounding_box(Q, lambda + delta);
  const auto R = std::max<std::int64_t>({box[0], box[1], box[2], static_cast<std::int64_t>(std::ceil(lambda + 1))});
  for (std::int64_t a = -R; a <= R; ++a)
    for (std::int64_t b = -R; b <= R; ++b)
      for (std::int64_t c = -R; c <= R; ++c) {
        bool near = false;
        if (test.contains({a, b, c}, near)) out.points.push_back({a, b, c});
        if (near) ++out.guard_band_hits;
      }
  return out;
}

}  // namespace shellcap::reference
