#include "quatpick/qmatrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace quatpick {

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DomainError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

QMatrix QMatrix::diagonal(std::span<const Quaternion> d) {
  QMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

QMatrix QMatrix::column(std::span<const Quaternion> v) {
  QMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

QMatrix QMatrix::adjoint() const {
  QMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = conj((*this)(r, c));
  return m;
}

QVector QMatrix::col(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

QMatrix QMatrix::principal(std::span<const std::size_t> idx) const {
  QMatrix m(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) m(a, b) = (*this)(idx[a], idx[b]);
  return m;
}

double QMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& q : data_) m = std::max(m, abs(q));
  return m;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix sum: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix difference: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product: shape mismatch");
  QMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Quaternion aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

QVector operator*(const QMatrix& a, std::span<const Quaternion> v) {
  if (a.cols() != v.size()) throw DomainError("matrix-vector product: shape mismatch");
  QVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

QMatrix operator*(const Quaternion& s, const QMatrix& a) {
  QMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = s * a(i, j);
  return m;
}

QMatrix operator*(const QMatrix& a, const Quaternion& s) {
  QMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) * s;
  return m;
}

double vnorm(std::span<const Quaternion> v) {
  double s = 0.0;
  for (const auto& q : v) s += norm2(q);
  return std::sqrt(s);
}

Quaternion vdot(std::span<const Quaternion> v, std::span<const Quaternion> w) {
  Quaternion s;
  for (std::size_t i = 0; i < v.size(); ++i) s += conj(v[i]) * w[i];
  return s;
}

// ---------------------------------------------------------------------------
// Hermitian matrices and the LDL^* test

HermitianQMatrix::HermitianQMatrix(const QMatrix& a) : a_(a.rows(), a.cols()) {
  if (!a.square()) throw DomainError("Hermitian matrix must be square");
  const double tol = 1e-12 * (1.0 + a.max_abs());
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (!is_finite(a(i, j))) throw DomainError("non-finite matrix entry");
      const Quaternion d = a(i, j) - conj(a(j, i));
      if (abs(d) > tol) {
        throw DomainError("matrix is not Hermitian at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      const Quaternion h = 0.5 * (a(i, j) + conj(a(j, i)));
      a_(i, j) = h;
      a_(j, i) = conj(h);
    }
    a_(i, i) = Quaternion(a_(i, i).w);
  }
}

double HermitianQMatrix::max_abs_diag() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) m = std::max(m, std::abs(a_(i, i).w));
  return m;
}

double PsdReport::min_pivot() const {
  if (pivots.empty()) return 0.0;
  return *std::min_element(pivots.begin(), pivots.end());
}

double default_psd_tol(const HermitianQMatrix& a) {
  return static_cast<double>(a.size()) * std::ldexp(1.0, -50) * a.max_abs_diag();
}

namespace {

void gram_schmidt(std::vector<QVector>& basis) {
  std::vector<QVector> out;
  for (auto v : basis) {
    for (const auto& u : out) {
      const Quaternion c = vdot(u, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= u[i] * c;
    }
    const double nv = vnorm(v);
    if (nv == 0.0) continue;
    for (auto& q : v) q *= 1.0 / nv;
    out.push_back(std::move(v));
  }
  basis = std::move(out);
}

// One step of shifted inverse iteration; keeps the input if it does not help.
QVector refine_null_vector(const QMatrix& a, const QVector& v) {
  const std::size_t n = a.rows();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i).w));
  if (scale == 0.0) return v;
  QMatrix shifted = a;
  const double shift = 1e-8 * scale;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) += shift;
  QVector y;
  try {
    y = qsolve(shifted, QMatrix::column(v)).col(0);
  } catch (const RankDeficiencyError&) {
    return v;
  }
  const double ny = vnorm(y);
  if (!(ny > 0.0) || !std::isfinite(ny)) return v;
  for (auto& q : y) q *= 1.0 / ny;
  const double before = vnorm(a * std::span<const Quaternion>(v)) / vnorm(v);
  const double after = vnorm(a * std::span<const Quaternion>(y));
  return after <= before ? y : v;
}

}  // namespace

PsdReport ldl_psd(const HermitianQMatrix& h, double tol) {
  if (!(tol >= 0.0)) throw DomainError("psd tolerance must be non-negative");
  const std::size_t n = h.size();
  QMatrix work = h.matrix();
  QMatrix lower(n, n);
  PsdReport rep;
  rep.tol = tol;
  rep.order.resize(n);
  for (std::size_t i = 0; i < n; ++i) rep.order[i] = i;

  std::size_t k = 0;
  for (; k < n; ++k) {
    std::size_t m = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (work(i, i).w > work(m, m).w) m = i;
    if (!(work(m, m).w > tol)) break;
    if (m != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(work(k, c), work(m, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(work(r, k), work(r, m));
      for (std::size_t c = 0; c < k; ++c) std::swap(lower(k, c), lower(m, c));
      std::swap(rep.order[k], rep.order[m]);
    }
    const double d = work(k, k).w;
    rep.pivots.push_back(d);
    lower(k, k) = 1.0;
    for (std::size_t i = k + 1; i < n; ++i) lower(i, k) = work(i, k) / d;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= i; ++j) {
        work(i, j) -= lower(i, k) * work(k, j);
        work(j, i) = conj(work(i, j));
      }
      work(i, i) = Quaternion(work(i, i).w);
    }
  }
  rep.rank = k;

  bool psd = true;
  for (std::size_t i = k; i < n; ++i) {
    rep.pivots.push_back(work(i, i).w);
    if (work(i, i).w < -tol) psd = false;
    for (std::size_t j = k; j < i; ++j)
      if (abs(work(i, j)) > tol) psd = false;
  }
  rep.is_psd = psd;
  if (!psd || k == n) return rep;

  // Kernel: x = [x1; x2] with L11^* x1 = -L21^* x2, then undo the permutation.
  for (std::size_t t = k; t < n; ++t) {
    QVector x(n);
    x[t] = 1.0;
    for (std::size_t a = k; a-- > 0;) {
      Quaternion s = -conj(lower(t, a));
      for (std::size_t b = a + 1; b < k; ++b) s -= conj(lower(b, a)) * x[b];
      x[a] = s;
    }
    QVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[rep.order[i]] = x[i];
    const double nv = vnorm(v);
    for (auto& q : v) q *= 1.0 / nv;
    rep.null_basis.push_back(refine_null_vector(h.matrix(), v));
  }
  gram_schmidt(rep.null_basis);
  return rep;
}

PsdReport ldl_psd(const HermitianQMatrix& a) { return ldl_psd(a, default_psd_tol(a)); }

// ---------------------------------------------------------------------------
// Gaussian elimination

QMatrix qsolve(const QMatrix& a_in, const QMatrix& b_in) {
  if (!a_in.square()) throw DomainError("solve: matrix must be square");
  if (a_in.rows() != b_in.rows()) throw DomainError("solve: right-hand side shape mismatch");
  const std::size_t n = a_in.rows();
  const std::size_t m = b_in.cols();
  QMatrix a = a_in;
  QMatrix b = b_in;
  const double eps_tol = static_cast<double>(std::max<std::size_t>(n, 1)) *
                         std::numeric_limits<double>::epsilon() * a.max_abs();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(a(i, k)) > abs(a(piv, k))) piv = i;
    if (!(abs(a(piv, k)) > eps_tol)) {
      throw RankDeficiencyError("matrix is singular to working precision at pivot " + std::to_string(k), k);
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      for (std::size_t c = 0; c < m; ++c) std::swap(b(k, c), b(piv, c));
    }
    const Quaternion pinv = inv(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const Quaternion f = a(i, k) * pinv;
      if (norm2(f) == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) a(i, c) -= f * a(k, c);
      for (std::size_t c = 0; c < m; ++c) b(i, c) -= f * b(k, c);
    }
  }
  QMatrix x(n, m);
  for (std::size_t k = n; k-- > 0;) {
    const Quaternion pinv = inv(a(k, k));
    for (std::size_t c = 0; c < m; ++c) {
      Quaternion s = b(k, c);
      for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * x(j, c);
      x(k, c) = pinv * s;
    }
  }
  return x;
}

QMatrix qmat_inverse(const QMatrix& a) {
  if (!a.square()) throw DomainError("inverse: matrix must be square");
  return qsolve(a, QMatrix::identity(a.rows()));
}

// ---------------------------------------------------------------------------
// x - a x b = c

namespace {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<Vec4, 4>;

Vec4 to_vec(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }
Quaternion to_quat(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

Vec4 solve4(Mat4 m, Vec4 r) {
  for (std::size_t k = 0; k < 4; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < 4; ++i)
      if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
    std::swap(m[k], m[piv]);
    std::swap(r[k], r[piv]);
    for (std::size_t i = k + 1; i < 4; ++i) {
      const double f = m[i][k] / m[k][k];
      for (std::size_t c = k; c < 4; ++c) m[i][c] -= f * m[k][c];
      r[i] -= f * r[k];
    }
  }
  Vec4 x{};
  for (std::size_t k = 4; k-- > 0;) {
    double s = r[k];
    for (std::size_t c = k + 1; c < 4; ++c) s -= m[k][c] * x[c];
    x[k] = s / m[k][k];
  }
  return x;
}

}  // namespace

Quaternion sylvester_unit(const Quaternion& a, const Quaternion& b, const Quaternion& c) {
  if (!(abs(a) * abs(b) < 1.0)) throw DivergenceError("sylvester_unit: |a||b| >= 1");
  if (norm2(c) == 0.0) return {};
  constexpr std::array<Quaternion, 4> basis{Quaternion(1.0), Quaternion::i(), Quaternion::j(), Quaternion::k()};
  Mat4 m{};
  for (std::size_t col = 0; col < 4; ++col) {
    const Vec4 v = to_vec(basis[col] - a * basis[col] * b);
    for (std::size_t row = 0; row < 4; ++row) m[row][col] = v[row];
  }
  Quaternion x = to_quat(solve4(m, to_vec(c)));
  const Quaternion resid = c - (x - a * x * b);
  x += to_quat(solve4(m, to_vec(resid)));
  return x;
}

// ---------------------------------------------------------------------------
// Complex embedding and Jacobi eigenvalues

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols != b.rows) throw DomainError("complex product: shape mismatch");
  CMatrix m(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k)
      for (std::size_t j = 0; j < b.cols; ++j) m(i, j) += a(i, k) * b(k, j);
  return m;
}

CMatrix complex_embed(const QMatrix& a) {
  CMatrix m(2 * a.rows(), 2 * a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const Quaternion& q = a(r, c);
      const std::complex<double> alpha(q.w, q.x);
      const std::complex<double> beta(q.y, q.z);
      m(2 * r, 2 * c) = alpha;
      m(2 * r, 2 * c + 1) = beta;
      m(2 * r + 1, 2 * c) = -std::conj(beta);
      m(2 * r + 1, 2 * c + 1) = std::conj(alpha);
    }
  return m;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& in) {
  if (in.rows != in.cols) throw DomainError("eigenvalues: matrix must be square");
  const std::size_t n = in.rows;
  CMatrix a = in;
  double total = 0.0;
  for (const auto& z : a.data) total += std::norm(z);
  const double stop = 1e-30 * std::max(total, 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off <= stop) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const std::complex<double> phase = a(p, q) / r;
        const double theta = 0.5 * std::atan2(2.0 * r, a(q, q).real() - a(p, p).real());
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const std::complex<double> vpp = c;
        const std::complex<double> vpq = s;
        const std::complex<double> vqp = -s * std::conj(phase);
        const std::complex<double> vqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const auto akp = a(k, p);
          const auto akq = a(k, q);
          a(k, p) = akp * vpp + akq * vqp;
          a(k, q) = akp * vpq + akq * vqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const auto apk = a(p, k);
          const auto aqk = a(q, k);
          a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
          a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace quatpick
