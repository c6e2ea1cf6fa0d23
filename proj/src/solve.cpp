#include "quatpick/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace quatpick {

const char* to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::determinate:
      return "determinate";
    case Provenance::lft:
      return "lft";
    case Provenance::extended_gamma:
      return "extended-gamma";
  }
  return "unknown";
}

double SolutionHandle::max_pointwise_residual() const {
  double r = 0.0;
  for (const auto& x : residuals) r = std::max(r, x.pointwise);
  return r;
}

double SolutionHandle::max_series_residual() const {
  double r = 0.0;
  for (const auto& x : residuals) r = std::max(r, x.series);
  return r;
}

void attach_residuals(SolutionHandle& h, const Problem& problem) {
  h.residuals.clear();
  for (std::size_t i = 0; i < problem.size(); ++i) {
    NodeResidual r;
    r.node = problem.nodes()[i];
    r.target = problem.targets()[i];
    const Evaluation e = eval(h.series, r.node);
    r.series = dist(e.value, r.target);
    r.tail = e.tail;
    try {
      r.value = h.eval(r.node);
    } catch (const PoleError&) {
      // Removable singularity of the quotient formula; the series is still valid here.
      r.value = e.value;
    }
    r.pointwise = dist(r.value, r.target);
    h.residuals.push_back(r);
  }
}

namespace {

SolutionHandle make_lft(const ThetaRep& theta, const SchurParameter& param, std::size_t order) {
  const SliceEvaluator t11 = theta.entry(0, 0).evaluator();
  const SliceEvaluator t12 = theta.entry(0, 1).evaluator();
  const SliceEvaluator t21 = theta.entry(1, 0).evaluator();
  const SliceEvaluator t22 = theta.entry(1, 1).evaluator();
  const SliceEvaluator num = star(t11, param.eval) + t12;
  const SliceEvaluator den = star(t21, param.eval) + t22;

  const QSeries e = param.series.truncated(order);
  const QSeries num_s = star_mul(theta.entry(0, 0).series(order), e, order) + theta.entry(0, 1).series(order);
  const QSeries den_s = star_mul(theta.entry(1, 0).series(order), e, order) + theta.entry(1, 1).series(order);

  SolutionHandle h;
  h.eval = star(num, star_inverse(den));
  h.series = star_mul(num_s, star_inverse(den_s, order), order);
  h.provenance = Provenance::lft;
  return h;
}

}  // namespace

SolutionHandle lft_solution(const ThetaRep& theta, const SchurParameter& param, std::size_t order) {
  SolutionHandle h = make_lft(theta, param, order);
  attach_residuals(h, Problem(theta.nodes(), theta.targets()));
  return h;
}

SolutionHandle lft_solution(const ThetaRep& theta, const QSeries& param, std::size_t order) {
  return lft_solution(theta, SchurParameter::from_series(param), order);
}

SolutionHandle determinate_solve(const Problem& problem, std::optional<double> psd_tol, std::size_t order) {
  const PickData pick = build_pick(problem);
  const Classification cls = classify(pick, psd_tol);
  if (!cls.solvable) throw PreconditionError("determinate_solve: Pick matrix is not positive semidefinite");
  if (!cls.determinate) throw PreconditionError("determinate_solve: Pick matrix is nonsingular");

  // Kernel vector with the smallest residual |P y|.
  const auto& basis = cls.report.null_basis;
  std::size_t best = 0;
  double best_res = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const double r = vnorm(pick.P.matrix() * std::span<const Quaternion>(basis[t]));
    if (r < best_res) {
      best_res = r;
      best = t;
    }
  }
  const QVector& y = basis.at(best);

  const auto& p = problem.nodes();
  const auto& s = problem.targets();
  KernelExpansion r;
  KernelExpansion q;
  bool any_target = false;
  for (std::size_t i = 0; i < problem.size(); ++i) {
    r += KernelExpansion::szego(p[i], y[i]);
    if (norm2(s[i]) == 0.0) continue;
    any_target = true;
    q += KernelExpansion::szego(similarity(s[i], p[i]), conj(s[i]) * y[i]);
  }
  if (!any_target) throw DegenerateDataError("determinate_solve: all targets vanish, Q is identically zero");

  // Cancel a common factor p^lead before inverting on the coefficient side.
  const QSeries rs = r.series(2 * order);
  const QSeries qs = q.series(2 * order);
  const double qmax = qs.max_abs();
  if (!(qmax > 1e-12 * (1.0 + rs.max_abs()))) throw DegenerateDataError("determinate_solve: Q vanishes");
  std::size_t lead = 0;
  while (lead < order && abs(qs[lead]) <= 1e-10 * qmax) ++lead;
  for (std::size_t k = 0; k < lead; ++k)
    if (abs(rs[k]) > 1e-8 * (1.0 + rs.max_abs()))
      throw DegenerateDataError("determinate_solve: R * Q^{-*} has a pole at the origin");
  std::vector<Quaternion> rc(order + 1);
  std::vector<Quaternion> qc(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    rc[k] = rs[k + lead];
    qc[k] = qs[k + lead];
  }

  SolutionHandle h;
  h.eval = star(r.evaluator(), star_inverse(q.evaluator()));
  h.series = star_mul(QSeries(std::move(rc)), star_inverse(QSeries(std::move(qc)), order), order);
  h.provenance = Provenance::determinate;
  std::ostringstream d;
  d << "R*Q^-* from kernel vector " << best << " of " << basis.size() << ", |Py| = " << best_res;
  h.descriptor = d.str();
  attach_residuals(h, problem);
  return h;
}

SolutionHandle extended_gamma_solve(const Problem& problem, std::optional<double> psd_tol, std::size_t order) {
  const PickData pick = build_pick(problem);
  const Classification cls = classify(pick, psd_tol);
  const std::size_t n = problem.size();
  if (!cls.solvable) throw PreconditionError("extended_gamma_solve: Pick matrix is not positive semidefinite");
  if (!cls.determinate) throw PreconditionError("extended_gamma_solve: Pick matrix is nonsingular");
  const auto& p = problem.nodes();
  const auto& s = problem.targets();

  if (cls.rank == 0) {
    SolutionHandle h;
    h.eval = SliceEvaluator::constant(s[0]);
    h.series = QSeries::constant(s[0], order);
    h.provenance = Provenance::extended_gamma;
    h.descriptor = "rank 0: constant target";
    attach_residuals(h, problem);
    return h;
  }

  std::vector<std::size_t> keep(cls.report.order.begin(), cls.report.order.begin() + cls.rank);
  std::sort(keep.begin(), keep.end());
  const ThetaRep theta = theta_build(build_pick(problem.subproblem(keep)));
  const QMatrix& kappa = theta.kappa();

  std::size_t best = n;
  Quaternion u_best;
  Quaternion v_best;
  for (std::size_t m = 0; m < n; ++m) {
    if (std::binary_search(keep.begin(), keep.end(), m)) continue;
    Quaternion a;
    Quaternion b;
    for (std::size_t j = 0; j < keep.size(); ++j) {
      a += pick.P(m, keep[j]) * kappa(j, 0);
      b += pick.P(m, keep[j]) * kappa(j, 1);
    }
    const Quaternion u = 1.0 + (p[m] - 1.0) * a;
    const Quaternion v = -s[m] + (p[m] - 1.0) * b;
    if (best == n || abs(u) > abs(u_best)) {
      best = m;
      u_best = u;
      v_best = v;
    }
  }
  const double au = abs(u_best);
  const double av = abs(v_best);
  if (!(au > 1e-12)) throw RankDeficiencyError("extended_gamma_solve: u vanishes at every excess node", best);
  if (std::abs(au - av) > 1e-6 * std::max(au, av))
    throw RankDeficiencyError("extended_gamma_solve: |u| != |v| at the excess node", best);

  Quaternion gamma = -(inv(u_best) * v_best);
  gamma = gamma / abs(gamma);
  SolutionHandle h = make_lft(theta, SchurParameter::constant(gamma), order);
  h.provenance = Provenance::extended_gamma;
  std::ostringstream d;
  d << "subproblem of " << keep.size() << " nodes, excess node " << best << ", gamma = " << gamma;
  h.descriptor = d.str();
  attach_residuals(h, problem);
  return h;
}

KernelExpansion blaschke(const Quaternion& a) {
  if (!(abs(a) < 1.0)) throw DomainError("blaschke: zero outside the unit ball");
  return KernelExpansion(QSeries(), {KernelTerm{1, 1.0, conj(a), 1.0}, KernelTerm{0, -a, conj(a), 1.0}});
}

SchwarzPickReport schwarz_pick_check(const SliceEvaluator& s, const Quaternion& p1,
                                     std::span<const Quaternion> samples) {
  SchwarzPickReport out;
  const KernelExpansion b = blaschke(p1);
  const Quaternion s1 = s(p1);
  out.unimodular_constant = abs(s1) >= 1.0 - 1e-12;
  const SliceEvaluator num = s - SliceEvaluator::constant(s1);
  const SliceEvaluator den = SliceEvaluator::constant(1.0) - star(SliceEvaluator::constant(conj(s1)), s);
  const SliceEvaluator quotient = star(num, star_inverse(den));

  double worst = samples.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
  for (const auto& p : samples) {
    SchwarzPickSample row{p, 0.0, abs(b(p))};
    if (!out.unimodular_constant) row.lhs = abs(quotient(p));
    worst = std::max(worst, row.lhs - row.rhs);
    if (std::abs(row.lhs - row.rhs) <= 1e-9) out.equality_points.push_back(p);
    out.samples.push_back(row);
  }
  out.max_violation = worst;
  return out;
}

KernelGram bs_kernel_gram(const Problem& problem, const SliceEvaluator& s, std::span<const Quaternion> points) {
  const std::size_t n = problem.size();
  const std::size_t m = points.size();
  const auto& p = problem.nodes();
  const auto& t = problem.targets();
  const PickData pick = build_pick(problem);
  std::vector<Quaternion> sv(m);
  for (std::size_t a = 0; a < m; ++a) sv[a] = s(points[a]);

  QMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = pick.P(i, j);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      const Quaternion v = sylvester_unit(points[a], conj(p[i]), 1.0 - sv[a] * conj(t[i]));
      g(n + a, i) = v;
      g(i, n + a) = conj(v);
    }
    for (std::size_t c = a; c < m; ++c) {
      const Quaternion v = sylvester_unit(points[a], conj(points[c]), 1.0 - sv[a] * conj(sv[c]));
      g(n + a, n + c) = v;
      g(n + c, n + a) = conj(v);
    }
  }
  std::vector<Quaternion> pts(p.begin(), p.end());
  pts.insert(pts.end(), points.begin(), points.end());
  return {std::move(pts), HermitianQMatrix(g), KernelKind::block};
}

}  // namespace quatpick
