#pragma once

// Helpers shared by the theorem verifiers. Not installed.

#include <complex>
#include <cstdio>
#include <sstream>
#include <string>

#include "powermat/theorems.hpp"

namespace powermat::detail {

inline ClauseReport clause(std::string id, ClauseReport::Status status, std::string detail) {
  return ClauseReport{std::move(id), status, std::move(detail)};
}

inline ClauseReport pass_or_fail(std::string id, bool ok, std::string detail) {
  return clause(std::move(id), ok ? ClauseReport::Status::pass : ClauseReport::Status::fail,
                std::move(detail));
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string fmt(Complex z) {
  std::ostringstream os;
  os << fmt(z.real()) << (z.imag() < 0 ? "-" : "+") << fmt(std::abs(z.imag())) << "i";
  return os.str();
}

inline bool is_prime(unsigned k) {
  if (k < 2) return false;
  for (unsigned d = 2; d * d <= k; ++d) {
    if (k % d == 0) return false;
  }
  return true;
}

/// x^T y scaled rank-one projector x y^T / (x^T y).
inline Eigen::MatrixXcd rank_one_limit(const EigenTriple& t) {
  const Complex ytx = (t.y.data().transpose() * t.x.data())(0);
  return t.x.data() * t.y.data().transpose() / ytx;
}

inline bool is_nonnegative_vector(const CVector& v, const ToleranceConfig& tol) {
  const double tau = threshold(v, tol);
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i].imag()) > tau || v[i].real() < -tau) return false;
  }
  return true;
}

}  // namespace powermat::detail
