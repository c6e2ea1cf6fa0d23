#include "quatpick/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace quatpick {

Quaternion szego_kernel(const Quaternion& p, const Quaternion& q) { return sylvester_unit(p, conj(q), 1.0); }

Quaternion h2_inner(const QSeries& f, const QSeries& g) {
  Quaternion s;
  const std::size_t n = std::min(f.order(), g.order());
  for (std::size_t k = 0; k <= n; ++k) s += conj(g[k]) * f[k];
  return s;
}

double h2_norm_radial(const QSeries& f, double r, const ImagUnit& unit, std::size_t m) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("h2_norm_radial: radius must lie in [0, 1)");
  if (m == 0) throw DomainError("h2_norm_radial: need at least one node");
  const Quaternion& u = unit.value();
  double acc = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(m);
    const Quaternion p = r * (Quaternion(std::cos(theta)) + std::sin(theta) * u);
    acc += norm2(eval(f, p).value);
  }
  return acc / static_cast<double>(m);
}

double h2_norm_radial(const QSeries& f, double r, const ImagUnit& unit) {
  return h2_norm_radial(f, r, unit, std::max<std::size_t>(512, 4 * f.order()));
}

HermitianQMatrix toeplitz_defect(const QSeries& s, std::size_t n) {
  const std::size_t dim = n + 1;
  QMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      // (S_n S_n^*)_ij = sum_{l <= j} S_{i-l} conj(S_{j-l})
      Quaternion acc;
      for (std::size_t l = 0; l <= j; ++l) acc += s[i - l] * conj(s[j - l]);
      Quaternion v = -acc;
      if (i == j) v = Quaternion(1.0 - acc.w);
      m(i, j) = v;
      m(j, i) = conj(v);
    }
  }
  return HermitianQMatrix(m);
}

SchurTestResult schur_toeplitz_test(const QSeries& s, std::size_t n_max, double tol) {
  SchurTestResult out;
  // Sections are nested leading principal blocks, so the largest decides a pass.
  const PsdReport full = ldl_psd(toeplitz_defect(s, n_max), tol);
  out.min_pivot = full.min_pivot();
  if (full.is_psd) {
    out.pass = true;
    return out;
  }
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (!ldl_psd(toeplitz_defect(s, n), tol).is_psd) {
      out.first_failure = n;
      return out;
    }
  }
  // Only the full section fails; report it.
  out.first_failure = n_max;
  return out;
}

KernelGram szego_gram(std::span<const Quaternion> points) {
  const std::size_t n = points.size();
  QMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      g(i, j) = szego_kernel(points[i], points[j]);
      g(j, i) = conj(g(i, j));
    }
  return {std::vector<Quaternion>(points.begin(), points.end()), HermitianQMatrix(g), KernelKind::szego};
}

KernelGram ks_gram(const PointFn& s, std::span<const Quaternion> points) {
  const std::size_t n = points.size();
  std::vector<Quaternion> vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(abs(points[i]) < 1.0)) throw DomainError("ks_gram: point outside the unit ball");
    vals[i] = s(points[i]);
  }
  QMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      g(i, j) = sylvester_unit(points[i], conj(points[j]), 1.0 - vals[i] * conj(vals[j]));
      g(j, i) = conj(g(i, j));
    }
  return {std::vector<Quaternion>(points.begin(), points.end()), HermitianQMatrix(g), KernelKind::schur};
}

namespace {

struct SpherePoint {
  double x;
  double y;
  Quaternion unit;
};

SpherePoint split(const Quaternion& p) {
  const double y = abs_im(p);
  return {p.w, y, y > 0.0 ? im(p) / y : Quaternion{}};
}

}  // namespace

KernelDependence kernel_dependence(std::span<const Quaternion> points) {
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(abs(points[i]) < 1.0)) throw DomainError("kernel_dependence: point outside the unit ball");
    for (std::size_t j = 0; j < i; ++j)
      if (dist(points[i], points[j]) <= 1e-14 * (1.0 + abs(points[i])))
        throw DomainError("kernel_dependence: duplicate points");
  }
  KernelDependence out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!same_sphere(points[a], points[b])) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (!same_sphere(points[a], points[c])) continue;
        // k(., p_c) = k(., p_a) (I_a - I_b)^{-1} (I_c - I_b) + k(., p_b) (I_a - I_b)^{-1} (I_a - I_c)
        const Quaternion ia = split(points[a]).unit;
        const Quaternion ib = split(points[b]).unit;
        const Quaternion ic = split(points[c]).unit;
        const Quaternion d = inv(ia - ib);
        std::vector<Quaternion> rel(n);
        rel[a] = d * (ic - ib);
        rel[b] = d * (ia - ic);
        rel[c] = -1.0;
        out.independent = false;
        out.relation = std::move(rel);
        return out;
      }
    }
  return out;
}

Quaternion sphere_representation(const Quaternion& p1, const Quaternion& s1, const Quaternion& p2,
                                 const Quaternion& s2, const Quaternion& p3) {
  if (!same_sphere(p1, p2) || !same_sphere(p1, p3))
    throw DomainError("sphere_representation: points are not on a common 2-sphere");
  const SpherePoint a = split(p1);
  if (!(a.y > 0.0)) throw DomainError("sphere_representation: real points do not span a sphere");
  const Quaternion i1 = a.unit;
  const Quaternion i2 = split(p2).unit;
  const Quaternion i3 = split(p3).unit;
  if (abs(i2 - i1) <= 1e-14) throw DomainError("sphere_representation: p1 and p2 coincide");
  const Quaternion d = inv(i2 - i1);
  return (i2 - i3) * d * s1 + (i3 - i1) * d * s2;
}

}  // namespace quatpick
