#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "quatpick/quaternion.hpp"

namespace quatpick {

using QVector = std::vector<Quaternion>;

/// Dense row-major matrix over the quaternions.
///
/// Products keep the written order of factors: (A B)_ij = sum_k A_ik B_kj.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix diagonal(std::span<const Quaternion> d);
  static QMatrix column(std::span<const Quaternion> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Quaternion> data() const noexcept { return data_; }

  QMatrix adjoint() const;
  QVector col(std::size_t c) const;
  QMatrix principal(std::span<const std::size_t> idx) const;

  /// max_ij |A_ij|
  double max_abs() const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QVector operator*(const QMatrix& a, std::span<const Quaternion> v);
/// Entrywise left scalar multiple s * A.
QMatrix operator*(const Quaternion& s, const QMatrix& a);
/// Entrywise right scalar multiple A * s.
QMatrix operator*(const QMatrix& a, const Quaternion& s);

/// Euclidean norm sqrt(sum |v_i|^2).
double vnorm(std::span<const Quaternion> v);
/// v^* w = sum conj(v_i) w_i.
Quaternion vdot(std::span<const Quaternion> v, std::span<const Quaternion> w);

/// Square quaternion matrix with A = A^* (diagonal exactly real).
class HermitianQMatrix {
 public:
  /// Throws DomainError unless A is square and Hermitian within 1e-12 (1 + max|A_ij|);
  /// the stored matrix is the exact Hermitian part of A.
  explicit HermitianQMatrix(const QMatrix& a);
  const QMatrix& matrix() const noexcept { return a_; }
  std::size_t size() const noexcept { return a_.rows(); }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return a_(r, c); }
  double max_abs_diag() const;

 private:
  QMatrix a_;
};

/// Result of the pivoted LDL^* semidefiniteness test.
struct PsdReport {
  bool is_psd = false;
  std::size_t rank = 0;
  double tol = 0.0;
  /// Pivots in elimination order, followed by the diagonal of the unreduced
  /// Schur complement once the largest remaining pivot drops below tol.
  std::vector<double> pivots;
  /// Symmetric permutation: order[k] is the original index eliminated at step k.
  std::vector<std::size_t> order;
  /// Unit-norm basis of the numerical kernel (empty when rank == n or !is_psd).
  std::vector<QVector> null_basis;

  double min_pivot() const;
};

/// Default pivot tolerance n 2^-50 max|diag A|.
double default_psd_tol(const HermitianQMatrix& a);

/// Outer-product LDL^* with diagonal pivoting over H.
PsdReport ldl_psd(const HermitianQMatrix& a, double tol);
PsdReport ldl_psd(const HermitianQMatrix& a);

/// Solves A X = B by Gaussian elimination with partial pivoting; row
/// operations multiply on the left. Throws RankDeficiencyError (carrying the
/// pivot index) if A is singular to working precision.
QMatrix qsolve(const QMatrix& a, const QMatrix& b);
QMatrix qmat_inverse(const QMatrix& a);

/// Scalar Stein/Sylvester solve: the unique x with x - a x b = c, i.e.
/// x = sum_k a^k c b^k. Throws DivergenceError when |a||b| >= 1.
Quaternion sylvester_unit(const Quaternion& a, const Quaternion& b, const Quaternion& c);

/// Dense complex matrix used only for the embedding oracle.
struct CMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::complex<double>> data;

  CMatrix() = default;
  CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  std::complex<double>& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const std::complex<double>& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);

/// q = alpha + beta j  ->  [[alpha, beta], [-conj(beta), conj(alpha)]] blockwise.
CMatrix complex_embed(const QMatrix& a);

/// Eigenvalues (ascending) of a complex Hermitian matrix by cyclic Jacobi sweeps.
std::vector<double> hermitian_eigenvalues(const CMatrix& a);

}  // namespace quatpick
