#pragma once

// Random data and independent oracles shared by the unit tests and the
// acceptance runner. Oracles here never call the closed-form Sylvester path.

#include <cmath>
#include <random>
#include <vector>

#include "quatpick/solve.hpp"

namespace qt {

using quatpick::Quaternion;
using quatpick::QSeries;
using quatpick::SliceEvaluator;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng); }
  std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(eng); }

  Quaternion gaussian() {
    std::normal_distribution<double> g;
    return {g(eng), g(eng), g(eng), g(eng)};
  }
  Quaternion unit() {
    const Quaternion q = gaussian();
    return q / quatpick::abs(q);
  }
  /// Uniform direction, radius uniform in [0, r).
  Quaternion in_ball(double r) { return unit() * uniform(0.0, r); }
  Quaternion imaginary_unit() {
    Quaternion q = gaussian();
    q.w = 0.0;
    return q / quatpick::abs(q);
  }
};

/// sum_{k < terms} a^k c b^k, accumulated term by term.
inline Quaternion stein_series(const Quaternion& a, const Quaternion& b, const Quaternion& c, int terms = 200) {
  Quaternion acc;
  Quaternion ak = 1.0;
  Quaternion bk = 1.0;
  for (int k = 0; k < terms; ++k) {
    acc += ak * c * bk;
    ak = ak * a;
    bk = bk * b;
  }
  return acc;
}

/// Schur-class function known both by exact point values and by coefficients.
struct SchurFn {
  SliceEvaluator eval;
  QSeries series;
  /// Number of Blaschke factors when inner, else -1.
  int inner_degree = -1;
};

inline SchurFn constant_fn(const Quaternion& c) {
  return {SliceEvaluator::constant(c), QSeries::constant(c), quatpick::abs(c) == 1.0 ? 0 : -1};
}

inline SchurFn blaschke_fn(const Quaternion& a, std::size_t order = quatpick::kDefaultOrder) {
  const auto b = quatpick::blaschke(a);
  return {b.evaluator(), b.series(order), 1};
}

inline SchurFn star_fn(const SchurFn& g, const SchurFn& f, std::size_t order = quatpick::kDefaultOrder) {
  const int deg = g.inner_degree >= 0 && f.inner_degree >= 0 ? g.inner_degree + f.inner_degree : -1;
  return {quatpick::star(g.eval, f.eval), quatpick::star_mul(g.series, f.series, order), deg};
}

/// Polynomial with sum |c_k| <= bound.
inline SchurFn contraction_poly(Rng& rng, std::size_t degree, double bound) {
  std::vector<Quaternion> c(degree + 1);
  double total = 0.0;
  for (auto& q : c) {
    q = rng.gaussian();
    total += quatpick::abs(q);
  }
  for (auto& q : c) q = q * (bound / total);
  QSeries s(std::move(c));
  return {SliceEvaluator::from_series(s), s, -1};
}

/// Finite Blaschke product of the given degree times a unimodular constant.
inline SchurFn inner_fn(Rng& rng, int degree, double zero_radius = 0.7) {
  SchurFn f = constant_fn(rng.unit());
  f.inner_degree = 0;
  for (int d = 0; d < degree; ++d) f = star_fn(blaschke_fn(rng.in_ball(zero_radius)), f);
  return f;
}

/// One of: contraction polynomial, inner function, or a product of the two.
inline SchurFn random_schur(Rng& rng) {
  switch (rng.index(0, 2)) {
    case 0:
      return contraction_poly(rng, rng.index(0, 4), rng.uniform(0.1, 1.0));
    case 1:
      return inner_fn(rng, static_cast<int>(rng.index(1, 2)));
    default:
      return star_fn(inner_fn(rng, 1), contraction_poly(rng, rng.index(0, 3), rng.uniform(0.1, 1.0)));
  }
}

inline SchurFn scaled(const SchurFn& f, double s) {
  return {quatpick::star(SliceEvaluator::constant(s), f.eval), s * f.series, -1};
}

inline std::vector<Quaternion> random_nodes(Rng& rng, std::size_t n, double radius) {
  std::vector<Quaternion> p;
  while (p.size() < n) p.push_back(rng.in_ball(radius));
  return p;
}

inline quatpick::Problem sample_problem(const SchurFn& s, const std::vector<Quaternion>& nodes) {
  std::vector<Quaternion> t;
  for (const auto& p : nodes) t.push_back(s.eval(p));
  return quatpick::Problem(nodes, t);
}

/// Problem with positive definite Pick matrix: values of a Schur function scaled by 0.8.
inline quatpick::Problem pd_problem(Rng& rng, std::size_t n, double radius = 0.7) {
  return sample_problem(scaled(random_schur(rng), 0.8), random_nodes(rng, n, radius));
}

struct SingularCase {
  quatpick::Problem problem;
  SchurFn generator;
};

/// Inner function of degree d < n sampled at n nodes: Pick matrix of rank d.
inline SingularCase singular_problem(Rng& rng, std::size_t n, int degree, double radius = 0.7) {
  SchurFn g = inner_fn(rng, degree);
  return {sample_problem(g, random_nodes(rng, n, radius)), g};
}

/// Printed order of the sphere formula: (I2 - I1)^{-1} {(I2 - I3) s1 + (I3 - I1) s2}.
inline Quaternion sphere_representation_printed(const Quaternion& p1, const Quaternion& s1, const Quaternion& p2,
                                                const Quaternion& s2, const Quaternion& p3) {
  auto unit = [](const Quaternion& p) { return quatpick::im(p) / quatpick::abs_im(p); };
  const Quaternion i1 = unit(p1);
  const Quaternion i2 = unit(p2);
  const Quaternion i3 = unit(p3);
  return quatpick::inv(i2 - i1) * ((i2 - i3) * s1 + (i3 - i1) * s2);
}

}  // namespace qt
