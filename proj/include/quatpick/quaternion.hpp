#pragma once

#include <cmath>
#include <iosfwd>

#include "quatpick/errors.hpp"

namespace quatpick {

/// Real quaternion w + xi + yj + zk with ij = k, jk = i, ki = j.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_) : w(w_) {}  // NOLINT: reals embed implicitly
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(const Quaternion& a, double s) { return {a.w / s, a.x / s, a.y / s, a.z / s}; }

/// Hamilton product. Not commutative.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
  return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
}

constexpr Quaternion conj(const Quaternion& a) { return {a.w, -a.x, -a.y, -a.z}; }
constexpr double norm2(const Quaternion& a) { return a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z; }
inline double abs(const Quaternion& a) { return std::sqrt(norm2(a)); }
constexpr double re(const Quaternion& a) { return a.w; }
constexpr Quaternion im(const Quaternion& a) { return {0, a.x, a.y, a.z}; }
inline double abs_im(const Quaternion& a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }

inline bool is_finite(const Quaternion& a) {
  return std::isfinite(a.w) && std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// conj(a) / |a|^2. Throws DomainError for a == 0.
inline Quaternion inv(const Quaternion& a) {
  const double n = norm2(a);
  if (n == 0.0) throw DomainError("quaternion inverse of zero");
  return conj(a) / n;
}

/// Distance |a - b|.
inline double dist(const Quaternion& a, const Quaternion& b) { return abs(a - b); }

/// Default tolerance for sphere membership: 1e-10 (1 + |p| + |q|).
inline double default_sphere_tol(const Quaternion& p, const Quaternion& q) {
  return 1e-10 * (1.0 + abs(p) + abs(q));
}

/// True iff p and q lie on the same 2-sphere [p] (equal real parts and |Im|).
bool same_sphere(const Quaternion& p, const Quaternion& q, double tol);
inline bool same_sphere(const Quaternion& p, const Quaternion& q) {
  return same_sphere(p, q, default_sphere_tol(p, q));
}

/// h^{-1} p h. Throws DomainError for h == 0.
Quaternion similarity(const Quaternion& h, const Quaternion& p);

/// Unit imaginary quaternion I (I^2 = -1).
class ImagUnit {
 public:
  /// Normalizes the imaginary part of q; throws DomainError if it vanishes
  /// or if q has a real part beyond rounding.
  explicit ImagUnit(const Quaternion& q);
  const Quaternion& value() const noexcept { return unit_; }
  operator const Quaternion&() const noexcept { return unit_; }  // NOLINT

 private:
  Quaternion unit_;
};

/// Imaginary unit of the slice containing p; i when p is real.
ImagUnit slice_unit(const Quaternion& p);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace quatpick
