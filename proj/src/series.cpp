#include "quatpick/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace quatpick {

QSeries::QSeries() : coeffs_(1) {}

QSeries::QSeries(std::vector<Quaternion> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.resize(1);
  for (const auto& c : coeffs_)
    if (!is_finite(c)) throw DomainError("series coefficient is not finite");
}

QSeries QSeries::constant(const Quaternion& c, std::size_t order) {
  std::vector<Quaternion> v(order + 1);
  v[0] = c;
  return QSeries(std::move(v));
}

QSeries QSeries::monomial(std::size_t k, const Quaternion& c, std::size_t order) {
  std::vector<Quaternion> v(std::max(order, k) + 1);
  v[k] = c;
  return QSeries(std::move(v));
}

double QSeries::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, abs(c));
  return m;
}

QSeries QSeries::truncated(std::size_t order) const {
  return resized(std::min(order, this->order()));
}

QSeries QSeries::resized(std::size_t order) const {
  std::vector<Quaternion> v(order + 1);
  std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), v.size()), v.begin());
  return QSeries(std::move(v));
}

QSeries& QSeries::operator+=(const QSeries& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }

QSeries operator*(const Quaternion& c, const QSeries& f) {
  std::vector<Quaternion> v(f.coeffs().begin(), f.coeffs().end());
  for (auto& q : v) q = c * q;
  return QSeries(std::move(v));
}

QSeries operator*(const QSeries& f, const Quaternion& c) {
  std::vector<Quaternion> v(f.coeffs().begin(), f.coeffs().end());
  for (auto& q : v) q = q * c;
  return QSeries(std::move(v));
}

QSeries star_mul(const QSeries& g, const QSeries& f, std::size_t max_order) {
  const std::size_t order = std::min(g.order() + f.order(), max_order);
  std::vector<Quaternion> out(order + 1);
  for (std::size_t r = 0; r <= std::min(g.order(), order); ++r) {
    const Quaternion gr = g[r];
    if (norm2(gr) == 0.0) continue;
    const std::size_t top = std::min(f.order(), order - r);
    for (std::size_t s = 0; s <= top; ++s) out[r + s] += gr * f[s];
  }
  return QSeries(std::move(out));
}

QSeries right_star_mul(const QSeries& g, const QSeries& f, std::size_t max_order) {
  // Writing coefficients on the right does not change the convolution itself.
  return star_mul(g, f, max_order);
}

QSeries conj_series(const QSeries& f) {
  std::vector<Quaternion> v(f.coeffs().begin(), f.coeffs().end());
  for (auto& q : v) q = conj(q);
  return QSeries(std::move(v));
}

QSeries star_inverse(const QSeries& f, std::size_t order) {
  const double threshold = 1e-12 * (1.0 + f.max_abs());
  if (!(abs(f[0]) > threshold)) throw NonInvertibleError("star_inverse: constant coefficient vanishes");
  const Quaternion f0inv = inv(f[0]);
  std::vector<Quaternion> a(order + 1);
  a[0] = f0inv;
  for (std::size_t k = 1; k <= order; ++k) {
    Quaternion s;
    const std::size_t top = std::min(k, f.order());
    for (std::size_t j = 1; j <= top; ++j) s += f[j] * a[k - j];
    a[k] = -(f0inv * s);
  }
  return QSeries(std::move(a));
}

QSeries star_inverse(const QSeries& f) { return star_inverse(f, f.order()); }

Evaluation eval(const QSeries& f, const Quaternion& p) {
  Evaluation e;
  const auto c = f.coeffs();
  Quaternion acc;
  for (std::size_t k = c.size(); k-- > 0;) acc = c[k] + p * acc;
  e.value = acc;
  const double r = abs(p);
  if (r >= 1.0) {
    e.tail = std::numeric_limits<double>::infinity();
  } else {
    e.tail = f.max_abs() * std::pow(r, static_cast<double>(f.order() + 1)) / (1.0 - r);
  }
  return e;
}

Quaternion eval_right(const QSeries& f, const Quaternion& p) {
  const auto c = f.coeffs();
  Quaternion acc;
  for (std::size_t k = c.size(); k-- > 0;) acc = c[k] + acc * p;
  return acc;
}

Quaternion star_apply_pointwise(const PointFn& g, const QSeries& f, const Quaternion& p) {
  const Quaternion gp = g(p);
  if (norm2(gp) == 0.0) return {};
  return gp * eval(f, similarity(gp, p)).value;
}

Quaternion star_inverse_pointwise(const QSeries& f, const Quaternion& p) {
  const Quaternion fc = eval(conj_series(f), p).value;
  if (norm2(fc) == 0.0) throw PoleError("star_inverse_pointwise: f^c vanishes at p");
  const Quaternion v = eval(f, similarity(fc, p)).value;
  if (norm2(v) == 0.0) throw PoleError("star_inverse_pointwise: f vanishes at the shifted point");
  return inv(v);
}

}  // namespace quatpick
