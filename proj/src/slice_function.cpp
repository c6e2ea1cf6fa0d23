#include "quatpick/slice_function.hpp"

#include <algorithm>
#include <utility>

#include "quatpick/qmatrix.hpp"

namespace quatpick {

SliceEvaluator::SliceEvaluator(PointFn value, PointFn conj_value)
    : fns_(std::make_shared<const Fns>(Fns{std::move(value), std::move(conj_value)})) {}

SliceEvaluator::SliceEvaluator() : SliceEvaluator(constant(0.0)) {}

SliceEvaluator SliceEvaluator::conj() const { return SliceEvaluator(fns_->conj_value, fns_->value); }

SliceEvaluator SliceEvaluator::constant(const Quaternion& c) {
  return SliceEvaluator([c](const Quaternion&) { return c; },
                        [cc = quatpick::conj(c)](const Quaternion&) { return cc; });
}

SliceEvaluator SliceEvaluator::identity() {
  auto id = [](const Quaternion& p) { return p; };
  return SliceEvaluator(id, id);
}

SliceEvaluator SliceEvaluator::from_series(const QSeries& f) {
  return SliceEvaluator([f](const Quaternion& p) { return eval(f, p).value; },
                        [fc = conj_series(f)](const Quaternion& p) { return eval(fc, p).value; });
}

SliceEvaluator operator+(const SliceEvaluator& a, const SliceEvaluator& b) {
  return SliceEvaluator([a, b](const Quaternion& p) { return a(p) + b(p); },
                        [ac = a.conj(), bc = b.conj()](const Quaternion& p) { return ac(p) + bc(p); });
}

SliceEvaluator operator-(const SliceEvaluator& a, const SliceEvaluator& b) {
  return SliceEvaluator([a, b](const Quaternion& p) { return a(p) - b(p); },
                        [ac = a.conj(), bc = b.conj()](const Quaternion& p) { return ac(p) - bc(p); });
}

namespace {

Quaternion star_value(const SliceEvaluator& g, const SliceEvaluator& f, const Quaternion& p) {
  const Quaternion gp = g(p);
  if (norm2(gp) == 0.0) return {};
  return gp * f(similarity(gp, p));
}

Quaternion inverse_value(const SliceEvaluator& f, const SliceEvaluator& fc, const Quaternion& p) {
  const Quaternion c = fc(p);
  if (norm2(c) == 0.0 || !is_finite(c)) throw PoleError("star inverse: f^c vanishes");
  const Quaternion v = f(similarity(c, p));
  if (norm2(v) == 0.0 || !is_finite(v)) throw PoleError("star inverse: f vanishes at the shifted point");
  return inv(v);
}

}  // namespace

SliceEvaluator star(const SliceEvaluator& g, const SliceEvaluator& f) {
  // (g * f)^c = f^c * g^c
  return SliceEvaluator([g, f](const Quaternion& p) { return star_value(g, f, p); },
                        [gc = g.conj(), fc = f.conj()](const Quaternion& p) { return star_value(fc, gc, p); });
}

SliceEvaluator star_inverse(const SliceEvaluator& f) {
  const SliceEvaluator fc = f.conj();
  return SliceEvaluator([f, fc](const Quaternion& p) { return inverse_value(f, fc, p); },
                        [f, fc](const Quaternion& p) { return inverse_value(fc, f, p); });
}

// ---------------------------------------------------------------------------

KernelExpansion::KernelExpansion(QSeries polynomial, std::vector<KernelTerm> terms)
    : poly_(std::move(polynomial)), terms_(std::move(terms)) {}

KernelExpansion KernelExpansion::constant(const Quaternion& c) { return KernelExpansion(QSeries::constant(c)); }

KernelExpansion KernelExpansion::szego(const Quaternion& q, const Quaternion& right) {
  return KernelExpansion(QSeries(), {KernelTerm{0, 1.0, quatpick::conj(q), right}});
}

Quaternion KernelExpansion::operator()(const Quaternion& p) const {
  Quaternion v = eval(poly_, p).value;
  for (const auto& t : terms_) {
    Quaternion s = sylvester_unit(p, t.base, t.left);
    for (std::size_t e = 0; e < t.shift; ++e) s = p * s;
    v += s * t.right;
  }
  return v;
}

Quaternion KernelExpansion::coefficient(std::size_t k) const {
  Quaternion c = poly_[k];
  for (const auto& t : terms_) {
    if (k < t.shift) continue;
    Quaternion pw = t.left;
    for (std::size_t e = t.shift; e < k; ++e) pw = pw * t.base;
    c += pw * t.right;
  }
  return c;
}

QSeries KernelExpansion::series(std::size_t order) const {
  std::vector<Quaternion> c(order + 1);
  for (std::size_t k = 0; k <= std::min(order, poly_.order()); ++k) c[k] = poly_[k];
  for (const auto& t : terms_) {
    Quaternion pw = t.left;
    for (std::size_t k = t.shift; k <= order; ++k) {
      c[k] += pw * t.right;
      pw = pw * t.base;
    }
  }
  return QSeries(std::move(c));
}

KernelExpansion KernelExpansion::conj() const {
  std::vector<KernelTerm> t;
  t.reserve(terms_.size());
  for (const auto& k : terms_)
    t.push_back({k.shift, quatpick::conj(k.right), quatpick::conj(k.base), quatpick::conj(k.left)});
  return KernelExpansion(conj_series(poly_), std::move(t));
}

KernelExpansion KernelExpansion::shifted(std::size_t e) const {
  std::vector<Quaternion> c(poly_.order() + e + 1);
  for (std::size_t k = 0; k <= poly_.order(); ++k) c[k + e] = poly_[k];
  std::vector<KernelTerm> t(terms_.begin(), terms_.end());
  for (auto& k : t) k.shift += e;
  return KernelExpansion(QSeries(std::move(c)), std::move(t));
}

SliceEvaluator KernelExpansion::evaluator() const {
  return SliceEvaluator([f = *this](const Quaternion& p) { return f(p); },
                        [fc = conj()](const Quaternion& p) { return fc(p); });
}

KernelExpansion& KernelExpansion::operator+=(const KernelExpansion& o) {
  poly_ += o.poly_;
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

KernelExpansion& KernelExpansion::operator-=(const KernelExpansion& o) {
  poly_ -= o.poly_;
  for (auto t : o.terms_) {
    t.right = -t.right;
    terms_.push_back(t);
  }
  return *this;
}

KernelExpansion operator*(const Quaternion& c, const KernelExpansion& f) {
  std::vector<KernelTerm> t(f.terms_.begin(), f.terms_.end());
  for (auto& k : t) k.left = c * k.left;
  return KernelExpansion(c * f.poly_, std::move(t));
}

KernelExpansion operator*(const KernelExpansion& f, const Quaternion& c) {
  std::vector<KernelTerm> t(f.terms_.begin(), f.terms_.end());
  for (auto& k : t) k.right = k.right * c;
  return KernelExpansion(f.poly_ * c, std::move(t));
}

KernelExpansion operator+(KernelExpansion a, const KernelExpansion& b) { return a += b; }
KernelExpansion operator-(KernelExpansion a, const KernelExpansion& b) { return a -= b; }

}  // namespace quatpick
