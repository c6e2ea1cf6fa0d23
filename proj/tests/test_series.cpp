#include <doctest.h>

#include "quatpick/series.hpp"
#include "quatpick/slice_function.hpp"
#include "support.hpp"

using namespace quatpick;

namespace {
const Quaternion I = Quaternion::i();
const Quaternion J = Quaternion::j();
const Quaternion K = Quaternion::k();

QSeries random_series(qt::Rng& rng, std::size_t order, double scale = 1.0) {
  std::vector<Quaternion> c(order + 1);
  for (auto& q : c) q = rng.gaussian() * scale;
  return QSeries(std::move(c));
}

double coeff_diff(const QSeries& a, const QSeries& b) {
  double m = 0.0;
  for (std::size_t k = 0; k <= std::max(a.order(), b.order()); ++k) m = std::max(m, dist(a[k], b[k]));
  return m;
}
}  // namespace

TEST_CASE("construction") {
  CHECK(QSeries().order() == 0);
  CHECK(QSeries(std::vector<Quaternion>{}).order() == 0);
  CHECK(QSeries::monomial(3, J).order() == 3);
  CHECK(QSeries::monomial(3, J)[3] == J);
  CHECK(QSeries::constant(2.0)[5] == Quaternion{});
  CHECK_THROWS_AS(QSeries({Quaternion(std::nan(""))}), DomainError);
  CHECK(QSeries::constant(1.0, 4).resized(2).order() == 2);
  CHECK(QSeries::constant(1.0, 4).truncated(9).order() == 4);
}

TEST_CASE("star_mul examples") {
  const QSeries pj = QSeries::monomial(1, J);
  const QSeries pi = QSeries::monomial(1, I);
  const QSeries prod = star_mul(pj, pi);
  CHECK(prod.order() == 2);
  CHECK(prod[2] == -K);
  CHECK(prod[0] == Quaternion{});
  CHECK(prod[1] == Quaternion{});

  const QSeries a({1.0, 2.0});
  const QSeries b({3.0, 0.0, -1.0});
  const QSeries ab = star_mul(a, b);
  CHECK(coeff_diff(ab, QSeries({3.0, 6.0, -1.0, -2.0})) == 0.0);

  qt::Rng rng(31);
  const QSeries g = random_series(rng, 5);
  const QSeries f = random_series(rng, 5);
  CHECK(dist(eval(star_mul(g, f), 0.3).value, eval(g, 0.3).value * eval(f, 0.3).value) <= 1e-13);
  CHECK(star_mul(g, f, 4).order() == 4);
}

TEST_CASE("right_star_mul examples") {
  const QSeries jp = QSeries::monomial(1, J);
  const QSeries ip = QSeries::monomial(1, I);
  CHECK(right_star_mul(jp, ip)[2] == -K);
  const QSeries g({0.5, 1.5, -2.0});
  CHECK(coeff_diff(right_star_mul(g, QSeries::constant(1.0)), g) == 0.0);
}

TEST_CASE("conj_series examples") {
  const QSeries f({I, J});
  const QSeries fc = conj_series(f);
  CHECK(fc[0] == -I);
  CHECK(fc[1] == -J);
  const QSeries real({1.0, -0.5});
  CHECK(coeff_diff(conj_series(real), real) == 0.0);
  const QSeries sym = star_mul(f, fc);
  CHECK(coeff_diff(sym, QSeries({1.0, 0.0, 1.0})) <= 1e-16);
}

TEST_CASE("star_inverse examples") {
  const Quaternion c(0.2, -1, 0.5, 2);
  CHECK(dist(star_inverse(QSeries::constant(c))[0], inv(c)) <= 1e-16);
  const Quaternion a(0.1, 0.3, -0.2, 0.4);
  const QSeries inv_s = star_inverse(QSeries({1.0, -a}), 20);
  Quaternion ak = 1.0;
  for (std::size_t k = 0; k <= 20; ++k) {
    CHECK(dist(inv_s[k], ak) <= 1e-15);
    ak = ak * a;
  }
  CHECK_THROWS_AS(star_inverse(QSeries({0.0, 1.0})), NonInvertibleError);
}

TEST_CASE("eval examples") {
  CHECK(eval(QSeries({1.0, I}), J).value == Quaternion(1, 0, 0, -1));
  const Quaternion c(0.3, 0.2, 0.1, 0);
  CHECK(eval(QSeries::constant(c), Quaternion(0.1, 0.5, 0.2, 0.3)).value == c);
  std::vector<Quaternion> g(257);
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = std::pow(0.5, k);
  const Evaluation e = eval(QSeries(g), 0.5);
  CHECK(std::abs(e.value.w - 4.0 / 3.0) <= e.tail + 1e-15);
  CHECK(std::isinf(eval(QSeries(g), 1.0).tail));
  CHECK(eval_right(QSeries({0.0, J}), I) == J * I);
}

TEST_CASE("pointwise star examples") {
  qt::Rng rng(32);
  const QSeries f = random_series(rng, 6, 0.3);
  const Quaternion c(0.4, -0.1, 0.7, 0.2);
  const Quaternion p(0.1, 0.3, -0.2, 0.4);
  const PointFn gc = [c](const Quaternion&) { return c; };
  CHECK(dist(star_apply_pointwise(gc, f, p), eval(c * f, p).value) <= 1e-15);
  const PointFn zero = [](const Quaternion&) { return Quaternion{}; };
  CHECK(star_apply_pointwise(zero, f, p) == Quaternion{});
  const QSeries g = random_series(rng, 6, 0.3);
  const PointFn gv = [g](const Quaternion& q) { return eval(g, q).value; };
  CHECK(dist(star_apply_pointwise(gv, f, 0.4), eval(g, 0.4).value * eval(f, 0.4).value) <= 1e-15);

  CHECK(dist(star_inverse_pointwise(QSeries::constant(c), p), inv(c)) <= 1e-15);
  const QSeries real({1.0, 0.5, -0.2});
  CHECK(dist(star_inverse_pointwise(real, 0.3), inv(eval(real, 0.3).value)) <= 1e-15);
  CHECK_THROWS_AS(star_inverse_pointwise(QSeries({0.0, 1.0}), 0.0), PoleError);
}

TEST_CASE("slice evaluators: identities") {
  const Quaternion p(0.2, -0.3, 0.1, 0.25);
  CHECK(SliceEvaluator()(p) == Quaternion{});
  CHECK(SliceEvaluator::identity()(p) == p);
  const SliceEvaluator c = SliceEvaluator::constant(J);
  CHECK(c.conj()(p) == -J);
  // p * j as a star product is the series p j, so its value is p j, not j p.
  const SliceEvaluator pj = star(SliceEvaluator::identity(), c);
  CHECK(dist(pj(p), p * J) <= 1e-15);
  const SliceEvaluator jp = star(c, SliceEvaluator::identity());
  CHECK(dist(jp(p), p * J) <= 1e-15);
}

TEST_CASE("kernel expansion") {
  const Quaternion q(0.1, 0.4, -0.2, 0.3);
  const Quaternion r(0.5, 0, 1, 0);
  const KernelExpansion k = KernelExpansion::szego(q, r);
  const QSeries s = k.series(200);
  CHECK(dist(k.coefficient(3), conj(q) * conj(q) * conj(q) * r) <= 1e-16);
  const Quaternion p(0.2, 0.1, 0.3, -0.4);
  CHECK(dist(k(p), eval(s, p).value) <= 1e-14);
  CHECK(dist(k.conj()(p), eval(conj_series(s), p).value) <= 1e-14);
  const KernelExpansion shifted = k.shifted(2);
  CHECK(dist(shifted(p), p * p * k(p)) <= 1e-15);
  const Quaternion c(0.0, 0.3, 0.0, 0.6);
  CHECK(dist((c * k)(p), eval(c * s, p).value) <= 1e-14);
  CHECK(dist((k * c)(p), k(p) * c) <= 1e-15);
  CHECK(dist((k - k)(p), Quaternion{}) <= 1e-15);
  CHECK(dist((k + KernelExpansion::constant(c))(p), k(p) + c) <= 1e-15);
  const SliceEvaluator e = k.evaluator();
  CHECK(dist(e(p), k(p)) == 0.0);
}

TEST_CASE("property: associativity and conjugation of products") {
  qt::Rng rng(33);
  for (int t = 0; t < 50; ++t) {
    const QSeries a = random_series(rng, 6);
    const QSeries b = random_series(rng, 6);
    const QSeries c = random_series(rng, 6);
    const double scale = a.max_abs() * b.max_abs() * c.max_abs() * 50;
    CHECK(coeff_diff(star_mul(star_mul(a, b), c), star_mul(a, star_mul(b, c))) <= 1e-13 * scale);
    CHECK(coeff_diff(conj_series(star_mul(a, b)), star_mul(conj_series(b), conj_series(a))) <= 1e-13 * scale);
    const QSeries s1 = star_mul(a, conj_series(a));
    const QSeries s2 = star_mul(conj_series(a), a);
    CHECK(coeff_diff(s1, s2) <= 1e-12 * scale);
    for (std::size_t k = 0; k <= s1.order(); ++k) CHECK(abs_im(s1[k]) <= 1e-12 * scale);
  }
}

TEST_CASE("property: star inverse is two-sided") {
  qt::Rng rng(34);
  for (int t = 0; t < 50; ++t) {
    std::vector<Quaternion> c(5);
    c[0] = rng.unit();
    for (std::size_t k = 1; k < c.size(); ++k) c[k] = rng.gaussian() * 0.2;
    const QSeries f(c);
    const QSeries g = star_inverse(f, 40);
    const QSeries fg = star_mul(f, g, 40);
    const QSeries gf = star_mul(g, f, 40);
    CHECK(coeff_diff(fg, QSeries::constant(1.0, 40)) <= 1e-12 * (1 + g.max_abs()));
    CHECK(coeff_diff(gf, QSeries::constant(1.0, 40)) <= 1e-12 * (1 + g.max_abs()));
  }
}

TEST_CASE("property: pointwise and coefficient paths agree") {
  qt::Rng rng(35);
  for (int t = 0; t < 100; ++t) {
    std::vector<Quaternion> c(4);
    c[0] = rng.unit();
    for (std::size_t k = 1; k < c.size(); ++k) c[k] = rng.gaussian() * 0.1;
    const QSeries f(c);
    const QSeries g = random_series(rng, 4, 0.5);
    const Quaternion p = rng.in_ball(0.6);

    const Evaluation inv_series = eval(star_inverse(f, 256), p);
    CHECK(dist(star_inverse_pointwise(f, p), inv_series.value) <= inv_series.tail + 1e-12);

    const PointFn gv = [g](const Quaternion& q) { return eval(g, q).value; };
    CHECK(dist(star_apply_pointwise(gv, f, p), eval(star_mul(g, f), p).value) <= 1e-13);

    const SliceEvaluator q = star(SliceEvaluator::from_series(g), star_inverse(SliceEvaluator::from_series(f)));
    const Evaluation qs = eval(star_mul(g, star_inverse(f, 256), 256), p);
    CHECK(dist(q(p), qs.value) <= qs.tail + 1e-12);
    CHECK(dist(q.conj()(p), eval(conj_series(star_mul(g, star_inverse(f, 256), 256)), p).value) <= qs.tail + 1e-12);
  }
}
