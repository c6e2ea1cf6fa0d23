#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "quatpick/quaternion.hpp"

namespace quatpick {

/// Default truncation degree for series arithmetic.
inline constexpr std::size_t kDefaultOrder = 256;

/// Truncated left power series f(p) = sum_{k=0}^{N} p^k f_k.
class QSeries {
 public:
  /// The zero series of order 0.
  QSeries();
  /// Order is coeffs.size() - 1; an empty list becomes the zero series.
  explicit QSeries(std::vector<Quaternion> coeffs);

  static QSeries constant(const Quaternion& c, std::size_t order = 0);
  /// p^k c, padded to the given order (at least k).
  static QSeries monomial(std::size_t k, const Quaternion& c, std::size_t order = 0);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::span<const Quaternion> coeffs() const noexcept { return coeffs_; }
  /// Coefficient k, or zero past the truncation order.
  Quaternion operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Quaternion{}; }

  double max_abs() const;
  QSeries truncated(std::size_t order) const;
  /// Same function, zero-padded or cut to the requested order.
  QSeries resized(std::size_t order) const;

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);

 private:
  std::vector<Quaternion> coeffs_;
};

QSeries operator+(QSeries a, const QSeries& b);
QSeries operator-(QSeries a, const QSeries& b);
/// Left constant times the coefficients: sum p^k (c f_k) = c * f as a star product.
QSeries operator*(const Quaternion& c, const QSeries& f);
/// Right constant: sum p^k (f_k c).
QSeries operator*(const QSeries& f, const Quaternion& c);

/// g * f with g the left factor: coefficient k is sum_{r<=k} g_r f_{k-r}.
/// Truncated at min(order_g + order_f, max_order).
QSeries star_mul(const QSeries& g, const QSeries& f, std::size_t max_order = kDefaultOrder);

/// Product of right series sum (c_k) p^k; coefficientwise the same convolution,
/// evaluated with powers of p on the right (see eval_right).
QSeries right_star_mul(const QSeries& g, const QSeries& f, std::size_t max_order = kDefaultOrder);

/// f^c: conjugated coefficients.
QSeries conj_series(const QSeries& f);

/// f^{-*} truncated at `order` (defaults to f's order). Throws NonInvertibleError
/// when |f_0| <= 1e-12 (1 + max|f_k|).
QSeries star_inverse(const QSeries& f, std::size_t order);
QSeries star_inverse(const QSeries& f);

/// Point value with a bound on the discarded tail.
struct Evaluation {
  Quaternion value;
  /// max|f_k| |p|^{N+1} / (1 - |p|); infinite for |p| >= 1.
  double tail = 0.0;
};

/// sum p^k f_k (Horner in left powers of p).
Evaluation eval(const QSeries& f, const Quaternion& p);
/// sum f_k p^k for a right series.
Quaternion eval_right(const QSeries& f, const Quaternion& p);

using PointFn = std::function<Quaternion(const Quaternion&)>;

/// (g * f)(p) = g(p) f(g(p)^{-1} p g(p)), zero where g(p) = 0. Needs only values of g.
Quaternion star_apply_pointwise(const PointFn& g, const QSeries& f, const Quaternion& p);

/// f^{-*}(p) = f(q)^{-1}, q = f^c(p)^{-1} p f^c(p). Throws PoleError at zeros of f^c or f.
Quaternion star_inverse_pointwise(const QSeries& f, const Quaternion& p);

}  // namespace quatpick
