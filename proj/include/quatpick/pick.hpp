#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "quatpick/hardy.hpp"
#include "quatpick/qmatrix.hpp"

namespace quatpick {

/// Interpolation data p_i -> s_i with distinct nodes in the open unit ball.
class Problem {
 public:
  Problem() = default;
  /// Throws DomainError on length mismatch, non-finite entries, repeated
  /// nodes or |p_i| >= 1.
  Problem(std::vector<Quaternion> nodes, std::vector<Quaternion> targets);

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<Quaternion>& nodes() const noexcept { return nodes_; }
  const std::vector<Quaternion>& targets() const noexcept { return targets_; }
  Problem subproblem(std::span<const std::size_t> idx) const;

 private:
  std::vector<Quaternion> nodes_;
  std::vector<Quaternion> targets_;
};

/// P with the Stein data T = diag(p_i), E = (1, ..., 1)^T, N = (s_i).
struct PickData {
  HermitianQMatrix P;
  QVector T;
  QVector E;
  QVector N;

  /// max |P - T P T^* - E E^* + N N^*|
  double stein_residual() const;
};

/// P_ij = sum_k p_i^k (1 - s_i conj(s_j)) conj(p_j)^k, by Sylvester solves.
PickData build_pick(const Problem& problem);

struct SphereGroup {
  /// Original indices of all nodes on the sphere, in input order.
  std::vector<std::size_t> members;
  /// For members beyond the first two: value forced by the first two.
  std::vector<Quaternion> expected;
  std::vector<bool> consistent;
};

struct Inconsistency {
  std::size_t node = 0;
  Quaternion expected;
  Quaternion got;
};

struct Reduction {
  Problem reduced;
  /// Original index of every kept node.
  std::vector<std::size_t> kept;
  /// Spheres carrying three or more nodes.
  std::vector<SphereGroup> groups;
  /// First violated sphere relation, if any.
  std::optional<Inconsistency> inconsistency;

  bool consistent() const noexcept { return !inconsistency.has_value(); }
};

/// Keeps two nodes per 2-sphere and checks every dropped target against the
/// value forced by sphere_representation, within tol (1 + |expected|).
Reduction reduce_problem(const Problem& problem, double tol = 1e-9);

struct Classification {
  bool solvable = false;
  bool determinate = false;
  std::size_t rank = 0;
  PsdReport report;
};

/// Solvable iff P is PSD; determinate iff moreover singular. Expects a reduced problem.
Classification classify(const PickData& pick, std::optional<double> psd_tol = std::nullopt);
Classification classify(const Problem& problem, std::optional<double> psd_tol = std::nullopt);

}  // namespace quatpick
