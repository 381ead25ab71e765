#include <cmath>
#include <numbers>
#include <numeric>

#include "common.hpp"
#include "powermat/transforms.hpp"

namespace powermat {

using detail::clause;
using detail::fmt;
using detail::pass_or_fail;
using Status = ClauseReport::Status;

std::string to_string(ClauseReport::Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::inapplicable:
      return "inapplicable";
    case Status::inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

constexpr const char* kAfterI[] = {"T2.ii", "T2.iii", "T2.iv", "T2.iv.b", "T2.v", "T2.vi", "T2.vii"};

void mark_rest(std::vector<ClauseReport>& out, Status status, const std::string& why) {
  for (const char* id : kAfterI) out.push_back(clause(id, status, why));
}

ClauseReport stochastic_clause(const CMatrix& m, const EigenTriple& triple, unsigned k_max,
                               const ToleranceConfig& tol) {
  if (triple.positivity != Positivity::both_positive) {
    return clause("T2.v", Status::inapplicable, "eigenvectors not positive");
  }
  const double n = static_cast<double>(m.order());
  const auto row = row_stochastic_similar(m, triple, tol, k_max);
  const auto col = column_stochastic_similar(m, triple, tol, k_max);
  const bool ok = row.row_sum_residual <= 1e-10 * n && col.column_sum_residual <= 1e-10 * n &&
                  row.pattern_preserved && col.pattern_preserved && row.nu_preserved &&
                  col.nu_preserved;
  return pass_or_fail("T2.v", ok,
                      "R row-sum residual " + fmt(row.row_sum_residual) +
                          ", C column-sum residual " + fmt(col.column_sum_residual) +
                          ", pattern " + (row.pattern_preserved && col.pattern_preserved ? "kept" : "changed") +
                          ", nu(R) " + row.nu_transformed.to_string() + ", nu(C) " +
                          col.nu_transformed.to_string() + ", nu(A/lambda1) " +
                          row.nu_input.to_string() + ", nu(A) " + row.nu_unscaled.to_string());
}

}  // namespace

std::vector<ClauseReport> verify_power_nonneg_theorem(const CMatrix& m, unsigned k_max,
                                                      const ToleranceConfig& tol) {
  std::vector<ClauseReport> out;
  PowerCache cache(m);
  const SearchResult nu = nonneg_exponent(cache, k_max, tol);
  if (!nu.found()) {
    out.push_back(clause("T2.i", Status::inconclusive, "nu " + nu.to_string()));
    mark_rest(out, Status::inapplicable, "power nonnegativity not established");
    return out;
  }

  if (is_nilpotent(m, tol)) {
    out.push_back(clause("T2.i", Status::pass, "rho = 0 (nilpotent), lambda1 = 0"));
    mark_rest(out, Status::inapplicable, "nilpotent: no nonnegative irreducible power");
    return out;
  }

  const Spectrum s = spectrum(m, tol);
  std::optional<EigenTriple> triple;
  try {
    triple = dominant_eigentriple(m, nu.k, tol);
  } catch (const AmbiguousDominant& e) {
    out.push_back(clause("T2.i", Status::fail, std::string("nu = ") + std::to_string(nu.k) +
                                                   " but " + e.what()));
    mark_rest(out, Status::inapplicable, "no dominant eigenvalue");
    return out;
  }
  const Complex l1 = triple->lambda1;

  {
    const double two_pi = 2.0 * std::numbers::pi;
    const auto nu_d = static_cast<double>(nu.k);
    long h = std::lround(principal_arg(l1) * nu_d / two_pi);
    if (h == 0) h = static_cast<long>(nu.k);
    const Complex target = std::polar(s.rho, two_pi * static_cast<double>(h) / nu_d);
    const bool ok = std::abs(l1 - target) <= tol.eig_cluster_tol * (1.0 + s.rho) * nu_d;
    out.push_back(pass_or_fail("T2.i", ok,
                               "lambda1 = " + fmt(l1) + " = rho exp(2 pi i " + std::to_string(h) +
                                   "/" + std::to_string(nu.k) + "), rho = " + fmt(s.rho)));
  }

  const SearchResult k = least_irreducible_nonneg_power(cache, k_max, tol);
  if (!k.found()) {
    mark_rest(out, Status::inapplicable,
              "no nonnegative irreducible power A^k: " + k.to_string());
    return out;
  }

  const SpectralGap gap = spectral_gap(s, l1, tol);
  const bool rho_in = rho_in_spectrum(s, tol);
  const bool l1_is_rho = std::abs(l1 - s.rho) <= s.cluster_radius;
  {
    const bool ok = gap.multiplicity1 == 1 && std::abs(l1) > s.cluster_radius && rho_in == l1_is_rho;
    out.push_back(pass_or_fail("T2.ii", ok,
                               "multiplicity " + std::to_string(gap.multiplicity1) + ", |lambda1| " +
                                   fmt(std::abs(l1)) + ", rho in sigma " + (rho_in ? "yes" : "no") +
                                   ", lambda1 = rho " + (l1_is_rho ? "yes" : "no")));
  }

  out.push_back(pass_or_fail("T2.iii", triple->positivity == Positivity::both_positive,
                             "k = " + std::to_string(k.k) + ", residuals " +
                                 fmt(triple->residual_right) + "/" + fmt(triple->residual_left)));

  const unsigned g = std::gcd(nu.k, k.k);
  if (g == 1) {
    out.push_back(pass_or_fail("T2.iv", rho_in,
                               "gcd(" + std::to_string(nu.k) + ", " + std::to_string(k.k) +
                                   ") = 1, rho in sigma " + (rho_in ? "yes" : "no")));
  } else {
    out.push_back(clause("T2.iv", Status::inapplicable,
                         "gcd(" + std::to_string(nu.k) + ", " + std::to_string(k.k) + ") = " +
                             std::to_string(g)));
  }

  if (!rho_in && (detail::is_prime(nu.k) || detail::is_prime(k.k))) {
    out.push_back(pass_or_fail("T2.iv.b", k.k == nu.k,
                               "least nonnegative irreducible power " + std::to_string(k.k) +
                                   ", nu " + std::to_string(nu.k)));
  } else {
    out.push_back(clause("T2.iv.b", Status::inapplicable,
                         "needs rho not in sigma and nu or k prime"));
  }

  out.push_back(stochastic_clause(m, *triple, k_max, tol));

  const PeripheralStructure ps = peripheral_structure(m, k.k, tol);
  out.push_back(pass_or_fail("T2.vi", ps.angles_ok,
                             "p = " + std::to_string(ps.p) + ", pk = " +
                                 std::to_string(ps.p * static_cast<int>(k.k))));

  const CMatrix mk = mat_power(m, k.k);
  const double tau = threshold(mk, tol);
  bool positive_diagonal = false;
  for (Index i = 0; i < m.order(); ++i) positive_diagonal |= mk(i, i).real() > tau;
  if (positive_diagonal) {
    out.push_back(pass_or_fail("T2.vii", gap.strict,
                               "|lambda1| = " + fmt(std::abs(l1)) + ", |lambda2| = " +
                                   fmt(gap.modulus2)));
  } else {
    out.push_back(clause("T2.vii", Status::inapplicable, "A^k has zero diagonal"));
  }
  return out;
}

}  // namespace powermat
