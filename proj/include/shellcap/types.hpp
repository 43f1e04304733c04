#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>

namespace shellcap {

/// Integer lattice vector in Z^3. Ordering is lexicographic.
using IntVec3 = std::array<std::int64_t, 3>;
using IntMat3 = std::array<IntVec3, 3>;  // row-major

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;  // row-major

constexpr IntVec3 operator+(const IntVec3& a, const IntVec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
constexpr IntVec3 operator-(const IntVec3& a, const IntVec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
constexpr IntVec3 operator-(const IntVec3& a) { return {-a[0], -a[1], -a[2]}; }
constexpr IntVec3 operator*(std::int64_t s, const IntVec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

constexpr std::int64_t dot(const IntVec3& a, const IntVec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Cross product u ∧ x.
constexpr IntVec3 wedge(const IntVec3& a, const IntVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

constexpr bool is_zero(const IntVec3& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

inline Vec3 to_real(const IntVec3& a) {
  return {static_cast<double>(a[0]), static_cast<double>(a[1]), static_cast<double>(a[2])};
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 wedge(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double norm(const IntVec3& a) { return norm(to_real(a)); }

inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

inline Vec3 mat_vec(const Mat3& m, const Vec3& x) {
  return {dot(m[0], x), dot(m[1], x), dot(m[2], x)};
}

inline IntVec3 mat_vec(const IntMat3& m, const IntVec3& x) {
  return {dot(m[0], x), dot(m[1], x), dot(m[2], x)};
}

template <class M>
constexpr M transpose(const M& m) {
  M t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

/// Hash for IntVec3 keys in unordered containers.
struct IntVec3Hash {
  std::size_t operator()(const IntVec3& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto c : v) {
      h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace shellcap
