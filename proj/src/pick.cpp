#include "quatpick/pick.hpp"

#include <algorithm>

namespace quatpick {

Problem::Problem(std::vector<Quaternion> nodes, std::vector<Quaternion> targets)
    : nodes_(std::move(nodes)), targets_(std::move(targets)) {
  if (nodes_.size() != targets_.size()) throw DomainError("problem: nodes and targets differ in length");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!is_finite(nodes_[i]) || !is_finite(targets_[i])) throw DomainError("problem: non-finite entry");
    if (!(abs(nodes_[i]) < 1.0)) throw DomainError("problem: node outside the open unit ball");
    for (std::size_t j = 0; j < i; ++j)
      if (nodes_[i] == nodes_[j]) throw DomainError("problem: repeated node");
  }
}

Problem Problem::subproblem(std::span<const std::size_t> idx) const {
  std::vector<Quaternion> p;
  std::vector<Quaternion> s;
  for (std::size_t i : idx) {
    p.push_back(nodes_.at(i));
    s.push_back(targets_.at(i));
  }
  return Problem(std::move(p), std::move(s));
}

double PickData::stein_residual() const {
  const std::size_t n = P.size();
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Quaternion d = P(i, j) - T[i] * P(i, j) * conj(T[j]) - E[i] * conj(E[j]) + N[i] * conj(N[j]);
      r = std::max(r, abs(d));
    }
  return r;
}

PickData build_pick(const Problem& problem) {
  const std::size_t n = problem.size();
  const auto& p = problem.nodes();
  const auto& s = problem.targets();
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = sylvester_unit(p[i], conj(p[j]), 1.0 - s[i] * conj(s[j]));
      m(j, i) = conj(m(i, j));
    }
  return PickData{HermitianQMatrix(m), p, QVector(n, Quaternion(1.0)), s};
}

Reduction reduce_problem(const Problem& problem, double tol) {
  const auto& p = problem.nodes();
  const auto& s = problem.targets();
  const std::size_t n = problem.size();

  std::vector<std::vector<std::size_t>> spheres;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find_if(spheres.begin(), spheres.end(),
                           [&](const auto& g) { return same_sphere(p[g.front()], p[i]); });
    if (it == spheres.end())
      spheres.push_back({i});
    else
      it->push_back(i);
  }

  Reduction out;
  for (const auto& g : spheres) {
    out.kept.push_back(g[0]);
    if (g.size() > 1) out.kept.push_back(g[1]);
    if (g.size() < 3) continue;
    SphereGroup grp;
    grp.members = g;
    for (std::size_t t = 2; t < g.size(); ++t) {
      const std::size_t c = g[t];
      const Quaternion want = sphere_representation(p[g[0]], s[g[0]], p[g[1]], s[g[1]], p[c]);
      const bool ok = dist(want, s[c]) <= tol * (1.0 + abs(want));
      grp.expected.push_back(want);
      grp.consistent.push_back(ok);
      if (!ok && !out.inconsistency) out.inconsistency = Inconsistency{c, want, s[c]};
    }
    out.groups.push_back(std::move(grp));
  }
  std::sort(out.kept.begin(), out.kept.end());
  out.reduced = problem.subproblem(out.kept);
  return out;
}

Classification classify(const PickData& pick, std::optional<double> psd_tol) {
  Classification c;
  c.report = ldl_psd(pick.P, psd_tol.value_or(default_psd_tol(pick.P)));
  c.solvable = c.report.is_psd;
  c.rank = c.report.rank;
  c.determinate = c.solvable && c.rank < pick.P.size();
  return c;
}

Classification classify(const Problem& problem, std::optional<double> psd_tol) {
  return classify(build_pick(problem), psd_tol);
}

}  // namespace quatpick
