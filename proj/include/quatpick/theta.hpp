#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "quatpick/hardy.hpp"
#include "quatpick/pick.hpp"
#include "quatpick/slice_function.hpp"

namespace quatpick {

using Mat2 = std::array<std::array<Quaternion, 2>, 2>;

/// Theta(p) = I_2 + (p - 1) sum_k p^k [E^*; N^*] T^{*k} P^{-1} (I - T)^{-1} [E, -N].
///
/// Entry (a, b) of the sum is sum_i sylvester_unit(p, conj(p_i), w_ai) kappa_ib
/// with w_1i = 1, w_2i = conj(s_i) and kappa = P^{-1} (I - T)^{-1} [E, -N].
class ThetaRep {
 public:
  ThetaRep(std::vector<Quaternion> nodes, std::vector<Quaternion> targets, QMatrix p_inverse, QMatrix kappa);

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<Quaternion>& nodes() const noexcept { return nodes_; }
  const std::vector<Quaternion>& targets() const noexcept { return targets_; }
  const QMatrix& p_inverse() const noexcept { return pinv_; }
  /// n x 2
  const QMatrix& kappa() const noexcept { return kappa_; }

  /// Closed-form value; Theta(1) is the identity exactly.
  Mat2 operator()(const Quaternion& p) const;
  /// Coefficient of p^k.
  Mat2 coefficient(std::size_t k) const;
  /// Entry (a, b) as a kernel expansion (a, b in {0, 1}).
  const KernelExpansion& entry(std::size_t a, std::size_t b) const { return entries_[a][b]; }
  /// sum_i sylvester_unit(p, conj(p_i), w_ai) e_i^T, the 2 x n factor of K_{Theta,J}.
  QMatrix feature(const Quaternion& p) const;

 private:
  std::vector<Quaternion> nodes_;
  std::vector<Quaternion> targets_;
  QMatrix pinv_;
  QMatrix kappa_;
  std::array<std::array<KernelExpansion, 2>, 2> entries_;
};

/// Throws PreconditionError unless P is positive definite.
ThetaRep theta_build(const PickData& pick);
ThetaRep theta_build(const Problem& problem);

struct ThetaCheck {
  /// 2m x 2m Gram of K_{Theta,J}(q_a, q_b) = F(q_a) P^{-1} F(q_b)^*.
  KernelGram gram;
  PsdReport report;
  /// min |Theta_22(q)| over the points.
  double min_abs_theta22 = 0.0;
};

ThetaCheck theta_j_check(const ThetaRep& theta, std::span<const Quaternion> points);

/// Admitted LFT parameter: a coefficient sequence plus an exact point evaluator.
struct SchurParameter {
  QSeries series;
  SliceEvaluator eval;

  /// Checked by schur_toeplitz_test(series, 32, 1e-9); throws InvalidParameterError.
  static SchurParameter from_series(const QSeries& s);
  static SchurParameter from_expansion(const KernelExpansion& f, std::size_t order = kDefaultOrder);
  static SchurParameter constant(const Quaternion& c);
};

}  // namespace quatpick
