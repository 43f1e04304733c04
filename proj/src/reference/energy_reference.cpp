#include "shellcap/reference.hpp"

namespace shellcap::reference {

std::map<IntVec3, std::int64_t> rep_counts(const PointSet& A, int r) {
  check_tuple_guard(A.size(), r);
  std::map<IntVec3, std::int64_t> out;
  if (A.empty() || r < 1) return out;
  std::vector<std::size_t> idx(r, 0);
  for (;;) {
    IntVec3 k{0, 0, 0};
    for (auto i : idx) k = k + A[i];
    ++out[k];
    int j = r - 1;
    while (j >= 0 && ++idx[j] == A.size()) idx[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

std::int64_t additive_energy(const PointSet& A, int r) {
  std::int64_t e = 0;
  for (const auto& [k, c] : rep_counts(A, r)) e += c * c;
  return e;
}

}  // namespace shellcap::reference
