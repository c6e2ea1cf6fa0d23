#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quatpick/pick.hpp"
#include "quatpick/slice_function.hpp"
#include "quatpick/theta.hpp"

namespace quatpick {

enum class Provenance { determinate, lft, extended_gamma };

const char* to_string(Provenance p) noexcept;

struct NodeResidual {
  Quaternion node;
  Quaternion target;
  Quaternion value;
  /// |S(p_i) - s_i| through the pointwise path.
  double pointwise = 0.0;
  /// |S_N(p_i) - s_i| through the truncated series.
  double series = 0.0;
  /// Tail bound of the series evaluation.
  double tail = 0.0;
};

/// An interpolant with both evaluation paths.
struct SolutionHandle {
  SliceEvaluator eval;
  QSeries series;
  Provenance provenance = Provenance::lft;
  /// Short human-readable description (parameter, excess node, ...).
  std::string descriptor;
  std::vector<NodeResidual> residuals;

  Quaternion operator()(const Quaternion& p) const { return eval(p); }
  double max_pointwise_residual() const;
  double max_series_residual() const;
};

/// Fills h.residuals at every node of the problem.
void attach_residuals(SolutionHandle& h, const Problem& problem);

/// S = (Theta_11 * E + Theta_12) * (Theta_21 * E + Theta_22)^{-*}.
SolutionHandle lft_solution(const ThetaRep& theta, const SchurParameter& param, std::size_t order = kDefaultOrder);
/// Checks param with SchurParameter::from_series first.
SolutionHandle lft_solution(const ThetaRep& theta, const QSeries& param, std::size_t order = kDefaultOrder);

/// Unique solution of a problem with singular PSD Pick matrix, S = R * Q^{-*} from a null vector of P.
SolutionHandle determinate_solve(const Problem& problem, std::optional<double> psd_tol = std::nullopt,
                                 std::size_t order = kDefaultOrder);

/// Unique solution through Theta of a maximal nonsingular subproblem and the
/// unimodular constant parameter forced by one excess node.
SolutionHandle extended_gamma_solve(const Problem& problem, std::optional<double> psd_tol = std::nullopt,
                                    std::size_t order = kDefaultOrder);

/// (p - a) * (1 - p conj(a))^{-*}
KernelExpansion blaschke(const Quaternion& a);

struct SchwarzPickSample {
  Quaternion p;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct SchwarzPickReport {
  double max_violation = 0.0;
  /// Samples with |lhs - rhs| <= 1e-9.
  std::vector<Quaternion> equality_points;
  std::vector<SchwarzPickSample> samples;
  /// S(p1) is unimodular, so S is that constant and the quotient is undefined.
  bool unimodular_constant = false;
};

/// |(S - s1) * (1 - conj(s1) S)^{-*}(p)| <= |b_{p1}(p)| with s1 = S(p1), pointwise.
SchwarzPickReport schwarz_pick_check(const SliceEvaluator& s, const Quaternion& p1,
                                     std::span<const Quaternion> samples);

/// [[P, B(q_b)^*], [B(q_a), K_S(q_a, q_b)]] with B(q)_i = sylvester_unit(q, conj(p_i), 1 - S(q) conj(s_i)).
KernelGram bs_kernel_gram(const Problem& problem, const SliceEvaluator& s, std::span<const Quaternion> points);

}  // namespace quatpick
