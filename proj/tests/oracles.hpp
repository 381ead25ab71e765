#pragma once

// Reference computations used to check the library. Nothing here calls into
// powermat beyond reading CMatrix data, so agreement is independent evidence.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using BoolMat = std::vector<std::vector<char>>;

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

inline double tau(const Mat& m, double abs_tol = 1e-10, double rel_tol = 1e-10) {
  return abs_tol + rel_tol * max_abs(m);
}

/// M^k by k - 1 plain multiplications.
inline Mat naive_power(const Mat& m, unsigned k) {
  Mat r = Mat::Identity(m.rows(), m.cols());
  for (unsigned i = 0; i < k; ++i) r = r * m;
  return r;
}

inline bool nonneg(const Mat& m, double abs_tol = 1e-10, double rel_tol = 1e-10) {
  const double t = tau(m, abs_tol, rel_tol);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j).imag()) > t || m(i, j).real() < -t) return false;
    }
  }
  return true;
}

inline bool positive(const Mat& m, double abs_tol = 1e-10, double rel_tol = 1e-10) {
  const double t = tau(m, abs_tol, rel_tol);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j).imag()) > t || m(i, j).real() <= t) return false;
    }
  }
  return true;
}

inline bool real(const Mat& m, double rel) {
  return m.imag().cwiseAbs().maxCoeff() <= rel * std::max(1.0, max_abs(m));
}

inline BoolMat pattern(const Mat& m, double abs_tol = 1e-10, double rel_tol = 1e-10) {
  const double t = tau(m, abs_tol, rel_tol);
  BoolMat b(m.rows(), std::vector<char>(m.cols(), 0));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) b[i][j] = std::abs(m(i, j)) > t;
  }
  return b;
}

inline BoolMat bool_mul(const BoolMat& a, const BoolMat& b) {
  const std::size_t n = a.size();
  BoolMat c(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      if (!a[i][l]) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] |= b[l][j];
    }
  }
  return c;
}

/// Pattern of M^k for a nonnegative M (exact: no cancellation can occur).
inline BoolMat bool_power(BoolMat b, std::uint64_t k) {
  const std::size_t n = b.size();
  BoolMat r(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  while (k > 0) {
    if (k & 1) r = bool_mul(r, b);
    b = bool_mul(b, b);
    k >>= 1;
  }
  return r;
}

/// (I + B)^(n-1) has no zero entry.
inline bool irreducible(const BoolMat& b) {
  const std::size_t n = b.size();
  if (n == 1) return true;
  BoolMat ib = b;
  for (std::size_t i = 0; i < n; ++i) ib[i][i] = 1;
  const BoolMat r = bool_power(ib, n - 1);
  for (const auto& row : r) {
    for (char c : row) {
      if (!c) return false;
    }
  }
  return true;
}

/// Period of an irreducible digraph: gcd over edges of level(i) + 1 - level(j).
inline long long period(const BoolMat& b) {
  const std::size_t n = b.size();
  std::vector<long long> level(n, -1);
  std::vector<std::size_t> queue{0};
  level[0] = 0;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t i = queue[q];
    for (std::size_t j = 0; j < n; ++j) {
      if (b[i][j] && level[j] < 0) {
        level[j] = level[i] + 1;
        queue.push_back(j);
      }
    }
  }
  long long g = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (b[i][j]) g = std::gcd(g, std::llabs(level[i] + 1 - level[j]));
    }
  }
  return g;
}

inline bool representable(long long m, long long a, long long b) {
  for (long long x = 0; x * a <= m; ++x) {
    if ((m - x * a) % b == 0) return true;
  }
  return false;
}

/// Largest integer not of the form x a + y b (x, y >= 0), by exhaustive scan.
inline long long frobenius_brute(long long a, long long b) {
  long long last = -1;
  for (long long m = 0; m <= a * b; ++m) {
    if (!representable(m, a, b)) last = m;
  }
  return last;
}

inline std::vector<Complex> eigenvalues(const Mat& m) {
  Eigen::ComplexEigenSolver<Mat> es(m, false);
  const Vec v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

/// Greedy nearest matching of two multisets within `tol`.
inline bool same_multiset(std::vector<Complex> a, std::vector<Complex> b, double tol) {
  if (a.size() != b.size()) return false;
  for (const Complex& z : a) {
    auto best = b.end();
    double best_d = tol;
    for (auto it = b.begin(); it != b.end(); ++it) {
      const double d = std::abs(*it - z);
      if (d <= best_d) {
        best_d = d;
        best = it;
      }
    }
    if (best == b.end()) return false;
    b.erase(best);
  }
  return true;
}

struct Perron {
  Complex lambda;
  Vec x;
  Vec y;
};

/// Eigenpair for the eigenvalue of `m` nearest to `target`, with the left
/// vector from the transpose.
inline Perron eigenpair_near(const Mat& m, Complex target) {
  Eigen::ComplexEigenSolver<Mat> right(m);
  Eigen::ComplexEigenSolver<Mat> left(m.transpose());
  Eigen::Index ir = 0, il = 0;
  (right.eigenvalues().array() - target).abs().minCoeff(&ir);
  (left.eigenvalues().array() - target).abs().minCoeff(&il);
  return {right.eigenvalues()(ir), right.eigenvectors().col(ir), left.eigenvectors().col(il)};
}

/// x y^T / (y^T x).
inline Mat rank_one_limit(const Perron& p) {
  return p.x * p.y.transpose() / (p.y.transpose() * p.x)(0, 0);
}

}  // namespace oracle
