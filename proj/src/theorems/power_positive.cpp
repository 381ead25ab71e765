#include <algorithm>
#include <cmath>
#include <limits>

#include "common.hpp"
#include "powermat/transforms.hpp"

namespace powermat {

using detail::clause;
using detail::fmt;
using detail::pass_or_fail;
using Status = ClauseReport::Status;

namespace {

constexpr double kNormalizedPowerLimit = 1e10;

}  // namespace

std::vector<double> cesaro_errors(const CMatrix& m, Complex lambda1,
                                  const std::vector<unsigned>& checkpoints,
                                  const ToleranceConfig& tol) {
  if (std::abs(lambda1) == 0.0) throw InvalidParams("lambda1 must be nonzero");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw InvalidParams("checkpoints must be ascending");
  }
  if (!least_irreducible_nonneg_power(m, default_k_max(m.order()), tol).found()) {
    throw HypothesisViolation("no nonnegative irreducible power within the default bound");
  }
  const EigenTriple t = eigentriple_for(m, lambda1, tol);
  const Eigen::MatrixXcd target = detail::rank_one_limit(t);

  const Index n = m.order();
  const Eigen::MatrixXcd b = m.data() / lambda1;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd sum = p;
  std::vector<double> errs;
  errs.reserve(checkpoints.size());
  std::size_t next = 0;
  while (next < checkpoints.size() && checkpoints[next] == 0) {
    errs.push_back((sum - target).cwiseAbs().maxCoeff());
    ++next;
  }
  const unsigned last = checkpoints.empty() ? 0 : checkpoints.back();
  for (unsigned s = 1; s <= last; ++s) {
    p = p * b;
    const double size = p.cwiseAbs().maxCoeff();
    if (!std::isfinite(size) || size > kNormalizedPowerLimit) {
      throw DivergingAccumulation("lambda1^-s A^s grows without bound at s = " +
                                  std::to_string(s));
    }
    sum += p;
    while (next < checkpoints.size() && checkpoints[next] == s) {
      errs.push_back((sum / static_cast<double>(s + 1) - target).cwiseAbs().maxCoeff());
      ++next;
    }
  }
  return errs;
}

CesaroResult cesaro_limit(const CMatrix& m, Complex lambda1, unsigned K,
                          const ToleranceConfig& tol) {
  if (std::abs(lambda1) == 0.0) throw InvalidParams("lambda1 must be nonzero");
  if (!least_irreducible_nonneg_power(m, default_k_max(m.order()), tol).found()) {
    throw HypothesisViolation("no nonnegative irreducible power within the default bound");
  }
  const EigenTriple t = eigentriple_for(m, lambda1, tol);
  const Eigen::MatrixXcd target = detail::rank_one_limit(t);
  const Index n = m.order();
  const Eigen::MatrixXcd b = m.data() / lambda1;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd sum = p;
  for (unsigned s = 1; s <= K; ++s) {
    p = p * b;
    const double size = p.cwiseAbs().maxCoeff();
    if (!std::isfinite(size) || size > kNormalizedPowerLimit) {
      throw DivergingAccumulation("lambda1^-s A^s grows without bound at s = " +
                                  std::to_string(s));
    }
    sum += p;
  }
  Eigen::MatrixXcd avg = sum / static_cast<double>(K + 1);
  const double err = (avg - target).cwiseAbs().maxCoeff();
  return CesaroResult{CMatrix(std::move(avg)), CMatrix(target), err};
}

PowerLimitCheck power_limit_check(const CMatrix& m, const EigenTriple& triple,
                                  const ToleranceConfig& tol, double target_err,
                                  double accept_err, unsigned fallback_steps) {
  PowerLimitCheck out;
  const Spectrum s = spectrum(m, tol);
  out.gap = spectral_gap(s, triple.lambda1, tol);
  // n extra steps absorb Jordan blocks of the non-dominant part.
  out.p_star = out.gap.strict
                   ? gap_steps(out.gap.ratio, target_err) + static_cast<unsigned>(m.order())
                   : fallback_steps;
  const Eigen::MatrixXcd limit = detail::rank_one_limit(triple);
  out.limit_positive = is_positive(CMatrix(limit), tol);
  const CMatrix b(m.data() / triple.lambda1);
  try {
    const CMatrix bp = mat_power(b, out.p_star);
    out.err = (bp.data() - limit).cwiseAbs().maxCoeff();
  } catch (const NonFinite&) {
    out.err = std::numeric_limits<double>::infinity();
  }
  out.converged = out.err <= accept_err;
  return out;
}

std::vector<ClauseReport> verify_power_positive_theorem(const CMatrix& m, unsigned k_max,
                                                        const ToleranceConfig& tol) {
  std::vector<ClauseReport> out;
  PowerCache cache(m);
  const SearchResult pi = positive_exponent(cache, k_max, tol);
  if (!pi.found()) {
    const std::string why = "power positivity not established: pi " + pi.to_string();
    for (const char* id : {"T3.i", "T3.ii", "T3.equiv", "T3.iii"}) {
      out.push_back(clause(id, Status::inapplicable, why));
    }
    return out;
  }
  const SearchResult nu = nonneg_exponent(cache, k_max, tol);
  std::optional<EigenTriple> triple;
  try {
    triple = dominant_eigentriple(m, nu.k, tol);
  } catch (const AmbiguousDominant& e) {
    out.push_back(clause("T3.i", Status::fail, e.what()));
    for (const char* id : {"T3.ii", "T3.equiv", "T3.iii"}) {
      out.push_back(clause(id, Status::inapplicable, "no dominant eigenvalue"));
    }
    return out;
  }

  const PowerLimitCheck check = power_limit_check(m, *triple, tol);
  out.push_back(pass_or_fail("T3.i", check.gap.strict,
                             "pi = " + std::to_string(pi.k) + ", lambda1 = " +
                                 fmt(triple->lambda1) + ", |lambda2|/|lambda1| = " +
                                 fmt(check.gap.ratio)));
  const bool ii = check.converged && check.limit_positive;
  out.push_back(pass_or_fail("T3.ii", ii,
                             "p* = " + std::to_string(check.p_star) + ", err = " + fmt(check.err) +
                                 ", limit positive " + (check.limit_positive ? "yes" : "no")));
  out.push_back(pass_or_fail("T3.equiv", check.gap.strict == ii,
                             std::string("gap ") + (check.gap.strict ? "holds" : "fails") +
                                 ", convergence " + (ii ? "holds" : "fails")));

  if (triple->positivity != Positivity::both_positive) {
    out.push_back(clause("T3.iii", Status::fail, "dominant eigenvectors not positive"));
    return out;
  }
  try {
    const auto t = doubly_stochastic_similar(m, *triple, tol, k_max);
    const double bound = 1e-10 * static_cast<double>(m.order());
    const bool ok = t.row_sum_residual <= bound && t.column_sum_residual <= bound;
    out.push_back(pass_or_fail("T3.iii", ok,
                               "row residual " + fmt(t.row_sum_residual) + ", column residual " +
                                   fmt(t.column_sum_residual)));
  } catch (const IllConditioned& e) {
    out.push_back(clause("T3.iii", Status::inconclusive, e.what()));
  }
  return out;
}

}  // namespace powermat
