#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "quatpick/qmatrix.hpp"
#include "quatpick/series.hpp"

namespace quatpick {

/// Szego kernel k(p, q) = sum_n p^n conj(q)^n, in closed form.
Quaternion szego_kernel(const Quaternion& p, const Quaternion& q);

/// <f, g> = sum_k conj(g_k) f_k over the shared truncation.
Quaternion h2_inner(const QSeries& f, const QSeries& g);

/// Mean of |f(r e^{I t})|^2 over the circle by an m-point trapezoid rule.
/// Equals sum r^{2n} |f_n|^2 for every I. Requires 0 <= r < 1.
double h2_norm_radial(const QSeries& f, double r, const ImagUnit& unit, std::size_t m);
/// Same with m = max(512, 4 order).
double h2_norm_radial(const QSeries& f, double r, const ImagUnit& unit);

/// I_{n+1} - S_n S_n^* for the lower triangular Toeplitz section of order n.
HermitianQMatrix toeplitz_defect(const QSeries& s, std::size_t n);

struct SchurTestResult {
  bool pass = false;
  std::optional<std::size_t> first_failure;
  /// Smallest LDL pivot of the largest section examined.
  double min_pivot = 0.0;
};

/// Coefficient test for the closed Schur class: I - S_n S_n^* >= 0 for n = 0..n_max.
SchurTestResult schur_toeplitz_test(const QSeries& s, std::size_t n_max, double tol);

enum class KernelKind { szego, schur, theta_j, block };

/// Gram matrix of a kernel on a finite point set.
struct KernelGram {
  std::vector<Quaternion> points;
  HermitianQMatrix gram;
  KernelKind kind;
};

KernelGram szego_gram(std::span<const Quaternion> points);

/// Gram of K_S(p, q) = sum p^k (1 - S(p) conj(S(q))) conj(q)^k; only values of S are needed.
KernelGram ks_gram(const PointFn& s, std::span<const Quaternion> points);

struct KernelDependence {
  bool independent = true;
  /// When dependent: alpha with sum_i k(., q_i) alpha_i == 0 (nonzero on one sphere triple).
  std::optional<std::vector<Quaternion>> relation;
};

/// The kernels {k(., q_i)} are right linearly independent iff no three of the
/// points lie on one 2-sphere. Throws DomainError on duplicates or points outside the ball.
KernelDependence kernel_dependence(std::span<const Quaternion> points);

/// Value at p3 forced by the values s1, s2 at p1, p2 on the same sphere x + yS:
/// (I2 - I3)(I2 - I1)^{-1} s1 + (I3 - I1)(I2 - I1)^{-1} s2.
/// Throws DomainError when the points are not on a common non-real sphere or I1 == I2.
Quaternion sphere_representation(const Quaternion& p1, const Quaternion& s1, const Quaternion& p2,
                                 const Quaternion& s2, const Quaternion& p3);

}  // namespace quatpick
