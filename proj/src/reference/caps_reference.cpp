#include "shellcap/reference.hpp"

namespace shellcap::reference {

std::vector<std::size_t> assign_points(const ShellPointSet& shell, const std::vector<Vec3>& centers) {
  std::vector<std::size_t> owner(shell.points.size(), 0);
  for (std::size_t i = 0; i < shell.points.size(); ++i) {
    Vec3 x = to_real(shell.points[i]);
    std::size_t best = 0;
    double bd = -1;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      double dx = centers[c][0] - x[0], dy = centers[c][1] - x[1], dz = centers[c][2] - x[2];
      double d = dx * dx + dy * dy + dz * dz;
      if (bd < 0 || d < bd || (d == bd && centers[c] < centers[best])) {
        best = c;
        bd = d;
      }
    }
    owner[i] = best;
  }
  return owner;
}

}  // namespace shellcap::reference
