#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "quatpick/quaternion.hpp"
#include "quatpick/series.hpp"

namespace quatpick {

/// Slice regular function known only through point values of f and of its
/// slice conjugate f^c. Star products and star inverses are evaluated exactly
/// at points by the similarity-shift formulas, so arbitrary expression trees
/// (LFTs, Schwarz-Pick quotients) need no coefficients.
class SliceEvaluator {
 public:
  /// The zero function.
  SliceEvaluator();
  SliceEvaluator(PointFn value, PointFn conj_value);

  Quaternion operator()(const Quaternion& p) const { return fns_->value(p); }
  SliceEvaluator conj() const;

  static SliceEvaluator constant(const Quaternion& c);
  /// f(p) = p.
  static SliceEvaluator identity();
  /// Evaluates the truncated series (tail ignored).
  static SliceEvaluator from_series(const QSeries& f);

 private:
  struct Fns {
    PointFn value;
    PointFn conj_value;
  };
  std::shared_ptr<const Fns> fns_;
};

SliceEvaluator operator+(const SliceEvaluator& a, const SliceEvaluator& b);
SliceEvaluator operator-(const SliceEvaluator& a, const SliceEvaluator& b);
/// g * f (g on the left).
SliceEvaluator star(const SliceEvaluator& g, const SliceEvaluator& f);
/// f^{-*}; evaluation throws PoleError at zeros.
SliceEvaluator star_inverse(const SliceEvaluator& f);

/// sum_{n>=0} p^{n+shift} left base^n right
struct KernelTerm {
  std::size_t shift = 0;
  Quaternion left{1.0};
  Quaternion base;
  Quaternion right{1.0};
};

/// Polynomial plus finitely many kernel terms. Closed under conjugation, sums,
/// left/right constant factors and multiplication by p^e, and evaluable in
/// closed form through sylvester_unit: p^e (sum_n p^n left base^n) right.
///
/// Szego kernels k(., q) alpha, the Blaschke factor and every entry of the
/// Theta function are of this form.
class KernelExpansion {
 public:
  KernelExpansion() = default;
  explicit KernelExpansion(QSeries polynomial, std::vector<KernelTerm> terms = {});

  static KernelExpansion constant(const Quaternion& c);
  /// k(., q) right = sum_n p^n conj(q)^n right
  static KernelExpansion szego(const Quaternion& q, const Quaternion& right = 1.0);

  const QSeries& polynomial() const noexcept { return poly_; }
  std::span<const KernelTerm> terms() const noexcept { return terms_; }

  /// Closed-form value; valid for |p| max|base| < 1 (DivergenceError otherwise).
  Quaternion operator()(const Quaternion& p) const;
  Quaternion coefficient(std::size_t k) const;
  QSeries series(std::size_t order) const;
  KernelExpansion conj() const;
  /// p^e * f
  KernelExpansion shifted(std::size_t e) const;
  SliceEvaluator evaluator() const;

  KernelExpansion& operator+=(const KernelExpansion& o);
  KernelExpansion& operator-=(const KernelExpansion& o);

  friend KernelExpansion operator*(const Quaternion& c, const KernelExpansion& f);
  friend KernelExpansion operator*(const KernelExpansion& f, const Quaternion& c);

 private:
  QSeries poly_;
  std::vector<KernelTerm> terms_;
};

KernelExpansion operator+(KernelExpansion a, const KernelExpansion& b);
KernelExpansion operator-(KernelExpansion a, const KernelExpansion& b);

}  // namespace quatpick
