#include "powermat/matrix.hpp"

#include <cmath>
#include <string>

namespace powermat {

namespace {

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

CMatrix checked(Eigen::MatrixXcd m, const char* op) {
  if (!all_finite(m)) {
    throw NonFinite(std::string(op) + " produced a non-finite entry");
  }
  return CMatrix(std::move(m));
}

}  // namespace

void ToleranceConfig::validate() const {
  // Negated comparisons also reject NaN.
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(eig_cluster_tol >= 0.0)) {
    throw InvalidParams("tolerances must be nonnegative");
  }
}

CVector::CVector(Eigen::VectorXcd v) : v_(std::move(v)) {
  if (v_.size() < 1) throw InvalidMatrix("vector must have at least one entry");
  if (!all_finite(v_)) throw NonFinite("vector has a non-finite entry");
}

CVector CVector::ones(Index n) { return CVector(Eigen::VectorXcd::Ones(n)); }

double CVector::max_abs() const { return v_.cwiseAbs().maxCoeff(); }

CMatrix::CMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() < 1) throw InvalidMatrix("matrix order must be at least 1");
  if (m_.rows() != m_.cols()) {
    throw InvalidMatrix("matrix must be square, got " + std::to_string(m_.rows()) +
                        "x" + std::to_string(m_.cols()));
  }
  if (!all_finite(m_)) throw NonFinite("matrix has a non-finite entry");
}

CMatrix CMatrix::identity(Index n) { return CMatrix(Eigen::MatrixXcd::Identity(n, n)); }
CMatrix CMatrix::zeros(Index n) { return CMatrix(Eigen::MatrixXcd::Zero(n, n)); }
CMatrix CMatrix::ones(Index n) { return CMatrix(Eigen::MatrixXcd::Ones(n, n)); }

CMatrix CMatrix::from_real(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Index>(rows.size());
  Eigen::MatrixXcd m(n, n);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != n) throw InvalidMatrix("matrix must be square");
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return CMatrix(std::move(m));
}

CMatrix CMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  const auto n = static_cast<Index>(rows.size());
  Eigen::MatrixXcd m(n, n);
  for (Index i = 0; i < n; ++i) {
    if (static_cast<Index>(rows[i].size()) != n) throw InvalidMatrix("matrix must be square");
    for (Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return CMatrix(std::move(m));
}

double CMatrix::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.order() != b.order()) throw InvalidMatrix("order mismatch in product");
  return checked(a.m_ * b.m_, "matrix product");
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.order() != b.order()) throw InvalidMatrix("order mismatch in sum");
  return checked(a.m_ + b.m_, "matrix sum");
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.order() != b.order()) throw InvalidMatrix("order mismatch in difference");
  return checked(a.m_ - b.m_, "matrix difference");
}

CMatrix operator*(Complex s, const CMatrix& a) { return checked(s * a.m_, "scaling"); }

double threshold(const CMatrix& m, const ToleranceConfig& tol) {
  return tol.abs_tol + tol.rel_tol * m.max_abs();
}

double threshold(const CVector& v, const ToleranceConfig& tol) {
  return tol.abs_tol + tol.rel_tol * v.max_abs();
}

bool is_nonnegative(const CMatrix& m, const ToleranceConfig& tol) {
  const double tau = threshold(m, tol);
  const auto& d = m.data();
  for (Index j = 0; j < d.cols(); ++j) {
    for (Index i = 0; i < d.rows(); ++i) {
      if (std::abs(d(i, j).imag()) > tau || d(i, j).real() < -tau) return false;
    }
  }
  return true;
}

bool is_positive(const CMatrix& m, const ToleranceConfig& tol) {
  const double tau = threshold(m, tol);
  const auto& d = m.data();
  for (Index j = 0; j < d.cols(); ++j) {
    for (Index i = 0; i < d.rows(); ++i) {
      if (std::abs(d(i, j).imag()) > tau || d(i, j).real() <= tau) return false;
    }
  }
  return true;
}

bool is_real(const CMatrix& m, const ToleranceConfig& tol) {
  const double tau = threshold(m, tol);
  return (m.data().imag().cwiseAbs().array() <= tau).all();
}

bool is_positive(const CVector& v, const ToleranceConfig& tol) {
  const double tau = threshold(v, tol);
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i].imag()) > tau || v[i].real() <= tau) return false;
  }
  return true;
}

CMatrix mat_power(const CMatrix& m, unsigned k) {
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(m.order(), m.order());
  Eigen::MatrixXcd base = m.data();
  while (k > 0) {
    if (k & 1U) {
      result = result * base;
      if (!all_finite(result)) throw NonFinite("matrix power overflowed");
    }
    k >>= 1U;
    if (k > 0) {
      base = base * base;
      if (!all_finite(base)) throw NonFinite("matrix power overflowed");
    }
  }
  return CMatrix(std::move(result));
}

bool is_weakly_stochastic(const CMatrix& m, StochasticMode mode, const ToleranceConfig& tol) {
  const Index n = m.order();
  const double bound = threshold(m, tol) * static_cast<double>(n);
  const Eigen::VectorXcd e = Eigen::VectorXcd::Ones(n);
  const auto column_ok = [&] {
    return (m.data().transpose() * e - e).cwiseAbs().maxCoeff() <= bound;
  };
  const auto row_ok = [&] { return (m.data() * e - e).cwiseAbs().maxCoeff() <= bound; };
  switch (mode) {
    case StochasticMode::column:
      return column_ok();
    case StochasticMode::row:
      return row_ok();
    case StochasticMode::doubly:
      return column_ok() && row_ok();
  }
  return false;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.order() != b.order()) throw InvalidMatrix("order mismatch");
  return (a.data() - b.data()).cwiseAbs().maxCoeff();
}

}  // namespace powermat
