#include "quatpick/theta.hpp"

#include <algorithm>
#include <limits>

namespace quatpick {

namespace {

Quaternion row_weight(const std::vector<Quaternion>& targets, std::size_t a, std::size_t i) {
  return a == 0 ? Quaternion(1.0) : conj(targets[i]);
}

}  // namespace

ThetaRep::ThetaRep(std::vector<Quaternion> nodes, std::vector<Quaternion> targets, QMatrix p_inverse, QMatrix kappa)
    : nodes_(std::move(nodes)), targets_(std::move(targets)), pinv_(std::move(p_inverse)), kappa_(std::move(kappa)) {
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      std::vector<KernelTerm> terms;
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Quaternion w = row_weight(targets_, a, i);
        const Quaternion base = conj(nodes_[i]);
        terms.push_back({1, w, base, kappa_(i, b)});
        terms.push_back({0, w, base, -kappa_(i, b)});
      }
      entries_[a][b] = KernelExpansion(QSeries::constant(a == b ? 1.0 : 0.0), std::move(terms));
    }
}

QMatrix ThetaRep::feature(const Quaternion& p) const {
  const std::size_t n = nodes_.size();
  QMatrix f(2, n);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t i = 0; i < n; ++i) f(a, i) = sylvester_unit(p, conj(nodes_[i]), row_weight(targets_, a, i));
  return f;
}

Mat2 ThetaRep::operator()(const Quaternion& p) const {
  const QMatrix x = feature(p) * kappa_;
  const Quaternion pm1 = p - 1.0;
  Mat2 out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) out[a][b] = (a == b ? Quaternion(1.0) : Quaternion{}) + pm1 * x(a, b);
  return out;
}

Mat2 ThetaRep::coefficient(std::size_t k) const {
  Mat2 out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) out[a][b] = entries_[a][b].coefficient(k);
  return out;
}

ThetaRep theta_build(const PickData& pick) {
  const std::size_t n = pick.P.size();
  const PsdReport rep = ldl_psd(pick.P);
  if (!rep.is_psd || rep.rank < n) throw PreconditionError("theta_build: Pick matrix is not positive definite");
  QMatrix rhs(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Quaternion d = inv(1.0 - pick.T[i]);
    rhs(i, 0) = d * pick.E[i];
    rhs(i, 1) = -(d * pick.N[i]);
  }
  QMatrix pinv = qmat_inverse(pick.P.matrix());
  QMatrix kappa = qsolve(pick.P.matrix(), rhs);
  return ThetaRep(pick.T, pick.N, std::move(pinv), std::move(kappa));
}

ThetaRep theta_build(const Problem& problem) { return theta_build(build_pick(problem)); }

ThetaCheck theta_j_check(const ThetaRep& theta, std::span<const Quaternion> points) {
  const std::size_t m = points.size();
  std::vector<QMatrix> f;
  std::vector<QMatrix> fp;
  f.reserve(m);
  for (const auto& q : points) {
    f.push_back(theta.feature(q));
    fp.push_back(f.back() * theta.p_inverse());
  }
  QMatrix g(2 * m, 2 * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      const QMatrix blk = fp[a] * f[b].adjoint();
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
          g(2 * a + r, 2 * b + c) = blk(r, c);
          g(2 * b + c, 2 * a + r) = conj(blk(r, c));
        }
    }
  ThetaCheck out{KernelGram{std::vector<Quaternion>(points.begin(), points.end()), HermitianQMatrix(g),
                            KernelKind::theta_j},
                 {},
                 std::numeric_limits<double>::infinity()};
  out.report = ldl_psd(out.gram.gram);
  for (const auto& q : points) out.min_abs_theta22 = std::min(out.min_abs_theta22, abs(theta(q)[1][1]));
  return out;
}

SchurParameter SchurParameter::from_series(const QSeries& s) {
  const auto t = schur_toeplitz_test(s, 32, 1e-9);
  if (!t.pass) throw InvalidParameterError("LFT parameter fails the Schur coefficient test");
  return {s, SliceEvaluator::from_series(s)};
}

SchurParameter SchurParameter::from_expansion(const KernelExpansion& f, std::size_t order) {
  SchurParameter out = from_series(f.series(order));
  out.eval = f.evaluator();
  return out;
}

SchurParameter SchurParameter::constant(const Quaternion& c) {
  SchurParameter out = from_series(QSeries::constant(c));
  out.eval = SliceEvaluator::constant(c);
  return out;
}

}  // namespace quatpick
