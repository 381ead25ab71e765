#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "powermat/errors.hpp"

namespace powermat {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Absolute/relative thresholds behind every sign and zero decision.
///
/// The effective threshold for a matrix M is
///   tau(M) = abs_tol + rel_tol * max_ij |m_ij|,
/// always evaluated on the matrix actually being tested (powers grow like
/// rho^k, so a threshold frozen on the base matrix would misclassify).
struct ToleranceConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double eig_cluster_tol = 1e-8;

  /// Throws InvalidParams when any field is negative or NaN.
  void validate() const;
};

/// Dense square complex vector. Entries are always finite.
class CVector {
 public:
  explicit CVector(Eigen::VectorXcd v);
  static CVector ones(Index n);

  Index size() const { return v_.size(); }
  Complex operator[](Index i) const { return v_(i); }
  const Eigen::VectorXcd& data() const { return v_; }
  double max_abs() const;

 private:
  Eigen::VectorXcd v_;
};

/// Dense square complex matrix, the carrier for every input and output.
///
/// Construction validates shape (square, n >= 1) and finiteness, so every
/// CMatrix in flight is well formed. Arithmetic that overflows throws
/// NonFinite instead of silently producing Inf.
class CMatrix {
 public:
  explicit CMatrix(Eigen::MatrixXcd m);

  static CMatrix identity(Index n);
  static CMatrix zeros(Index n);
  static CMatrix ones(Index n);
  /// Row-major real entries; throws InvalidMatrix when not square.
  static CMatrix from_real(std::initializer_list<std::initializer_list<double>> rows);
  static CMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

  Index order() const { return m_.rows(); }
  Complex operator()(Index i, Index j) const { return m_(i, j); }
  const Eigen::MatrixXcd& data() const { return m_; }

  double max_abs() const;
  CMatrix transpose() const { return CMatrix(m_.transpose()); }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(Complex s, const CMatrix& a);

 private:
  Eigen::MatrixXcd m_;
};

/// tau(M) as defined on ToleranceConfig.
double threshold(const CMatrix& m, const ToleranceConfig& tol);
double threshold(const CVector& v, const ToleranceConfig& tol);

/// Every entry has |Im| <= tau and Re >= -tau.
bool is_nonnegative(const CMatrix& m, const ToleranceConfig& tol = {});
/// Every entry has |Im| <= tau and Re > tau.
bool is_positive(const CMatrix& m, const ToleranceConfig& tol = {});
/// Every entry has |Im| <= tau.
bool is_real(const CMatrix& m, const ToleranceConfig& tol = {});
bool is_positive(const CVector& v, const ToleranceConfig& tol = {});

/// M^k by square-and-multiply; M^0 is the identity. Throws NonFinite on
/// overflow.
CMatrix mat_power(const CMatrix& m, unsigned k);

enum class StochasticMode { column, row, doubly };

/// Column mode: ||M^T e - e||_inf <= tau(M) * n. Row mode: Me = e.
bool is_weakly_stochastic(const CMatrix& m, StochasticMode mode,
                          const ToleranceConfig& tol = {});

/// max_ij |a_ij - b_ij|; orders must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace powermat
