#include <algorithm>
#include <cmath>
#include <vector>

#include "common.hpp"

namespace powermat {

using detail::clause;
using detail::fmt;
using detail::pass_or_fail;
using Status = ClauseReport::Status;

namespace {

/// Smallest odd k in [from, k_max] whose power satisfies `pred`, or 0.
template <class Pred>
unsigned first_odd_power(PowerCache& cache, unsigned from, unsigned k_max, Pred pred) {
  for (unsigned k = from | 1u; k <= k_max; k += 2) {
    const CMatrix* p = cache.power(k);
    if (p == nullptr) return 0;
    if (pred(*p)) return k;
  }
  return 0;
}

CMatrix normalized(const CMatrix& m, const ToleranceConfig& tol) {
  if (is_nilpotent(m, tol)) return m;
  const double rho = spectrum(m, tol).rho;
  return rho > 0.0 ? CMatrix(m.data() / rho) : m;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::vector<ClauseReport> check_real_equivalences(const CMatrix& m, unsigned k_max,
                                                  const ToleranceConfig& tol) {
  std::vector<ClauseReport> out;
  if (!is_real(m, tol)) {
    for (const char* id : {"C5", "C6", "C7", "C8"}) {
      out.push_back(clause(id, Status::inapplicable, "matrix is not real"));
    }
    return out;
  }
  const CMatrix b = normalized(m, tol);
  PowerCache cache(b);
  const SearchResult pi = positive_exponent(cache, k_max, tol);
  const SearchResult nu = nonneg_exponent(cache, k_max, tol);
  const bool power_positive = pi.found();
  const unsigned odd_positive =
      power_positive
          ? first_odd_power(cache, pi.k, k_max, [&](const CMatrix& p) { return is_positive(p, tol); })
          : 0;
  const EventualPositivity ep = eventually_positive(m, tol);
  const EventualPositivity ep_neg = eventually_positive(CMatrix(-m.data()), tol);

  if (!power_positive) {
    out.push_back(clause("C5", Status::inapplicable, "not power positive: pi " + pi.to_string()));
  } else {
    const Spectrum s = spectrum(m, tol);
    bool right = false;
    std::string why = "rho not in sigma";
    if (rho_in_spectrum(s, tol) && s.rho > s.cluster_radius) {
      const SpectralGap gap = spectral_gap(s, s.rho, tol);
      const EigenTriple t = eigentriple_for(m, s.rho, tol);
      right = gap.strict && t.positivity == Positivity::both_positive;
      why = "rho dominant " + yes_no(gap.strict) + ", eigenvectors positive " +
            yes_no(t.positivity == Positivity::both_positive);
    }
    const bool left = odd_positive != 0;
    out.push_back(pass_or_fail("C5", left == right,
                               "odd positive power " +
                                   (left ? std::to_string(odd_positive) : std::string("none")) +
                                   "; " + why));
  }

  {
    const bool right = ep.value || ep_neg.value;
    out.push_back(pass_or_fail("C6", power_positive == right,
                               "power positive " + yes_no(power_positive) +
                                   ", A eventually positive " + yes_no(ep.value) +
                                   ", -A eventually positive " + yes_no(ep_neg.value)));
  }

  {
    const bool left = power_positive && odd_positive != 0;
    out.push_back(pass_or_fail("C7", left == ep.value,
                               "power positive with odd positive power " + yes_no(left) +
                                   ", eventually positive " + yes_no(ep.value) + " (" + ep.detail +
                                   ")"));
  }

  if (!nu.found()) {
    out.push_back(clause("C8", Status::inapplicable, "not power nonnegative: nu " + nu.to_string()));
  } else {
    const unsigned k = first_odd_power(cache, nu.k, k_max, [&](const CMatrix& p) {
      return is_nonnegative(p, tol) && is_irreducible(p, tol);
    });
    if (k == 0) {
      out.push_back(clause("C8", Status::inapplicable,
                           "no odd k <= " + std::to_string(k_max) +
                               " with A^k nonnegative irreducible"));
    } else {
      const bool rho_in = rho_in_spectrum(m, tol);
      out.push_back(pass_or_fail("C8", rho_in,
                                 "k = " + std::to_string(k) + " odd, rho in sigma " + yes_no(rho_in)));
    }
  }
  return out;
}

ClauseReport check_nilpotent_lemma(const CMatrix& m, unsigned k_max, const ToleranceConfig& tol) {
  if (!is_nilpotent(m, tol)) return clause("L6", Status::inapplicable, "rho > 0");
  const auto x = find_positive_kernel_vector(m, tol);
  if (!x) return clause("L6", Status::inapplicable, "no positive kernel vector found");
  const SearchResult nu = nonneg_exponent(m, k_max, tol);
  if (!nu.found()) return clause("L6", Status::inconclusive, "nu " + nu.to_string());
  const CMatrix p = mat_power(m, nu.k);
  const double scale =
      std::pow(static_cast<double>(m.order()) * m.max_abs(), static_cast<double>(nu.k));
  const double size = p.max_abs();
  return pass_or_fail("L6", size <= tol.abs_tol + tol.rel_tol * scale,
                      "nu = " + std::to_string(nu.k) + ", max|A^nu| = " + fmt(size));
}

ClauseReport check_weakly_stochastic_corollary(const CMatrix& m, unsigned k_max,
                                               const ToleranceConfig& tol) {
  if (!is_weakly_stochastic(m, StochasticMode::column, tol)) {
    return clause("C9", Status::inapplicable, "column sums are not all 1");
  }
  const SearchResult nu = nonneg_exponent(m, k_max, tol);
  if (!nu.found()) return clause("C9", Status::inapplicable, "nu " + nu.to_string());
  const Spectrum s = spectrum(m, tol);
  bool one_in = false;
  for (const auto& c : s.distinct) one_in |= std::abs(c.value - 1.0) <= s.cluster_radius;
  const bool ok = one_in && std::abs(s.rho - 1.0) <= s.cluster_radius;
  return pass_or_fail("C9", ok, "rho = " + fmt(s.rho) + ", 1 in sigma " + yes_no(one_in));
}

ClauseReport check_eventual_perron(const CMatrix& m, unsigned k_max, const ToleranceConfig& tol) {
  const CertificateOutcome cert = certify_eventually_nonneg(m, k_max, tol);
  std::string route;
  if (cert.certificate && cert.certificate->q == 1) {
    route = "certificate F = " + std::to_string(cert.certificate->F);
  } else {
    const EventualPositivity ep = eventually_positive(m, tol);
    if (!ep.value) {
      return clause("EN", Status::inapplicable, "eventual nonnegativity not established");
    }
    route = "eventually positive from p* = " + std::to_string(ep.p_star);
  }
  const Spectrum s = spectrum(m, tol);
  if (s.rho <= s.cluster_radius) {
    return clause("EN", Status::inapplicable, route + ", rho = 0");
  }
  const bool rho_in = rho_in_spectrum(s, tol);
  if (!rho_in) return clause("EN", Status::fail, route + ", rho not in sigma");
  const EigenTriple t = eigentriple_for(m, s.rho, tol);
  const bool ok = detail::is_nonnegative_vector(t.x, tol) && detail::is_nonnegative_vector(t.y, tol);
  return pass_or_fail("EN", ok, route + ", rho = " + fmt(s.rho) + ", eigenvectors nonnegative " +
                                    yes_no(ok));
}

namespace {

// Merges clusters closer than `radius` (single linkage, weighted means).
Spectrum coarsen(const Spectrum& s, double radius) {
  std::vector<Spectrum::Cluster> groups;
  std::vector<std::size_t> parent(s.distinct.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < s.distinct.size(); ++i) {
    for (std::size_t j = i + 1; j < s.distinct.size(); ++j) {
      if (std::abs(s.distinct[i].value - s.distinct[j].value) <= radius) parent[find(j)] = find(i);
    }
  }
  Spectrum out = s;
  out.distinct.clear();
  for (std::size_t i = 0; i < s.distinct.size(); ++i) {
    if (find(i) != i) continue;
    Complex sum = 0.0;
    int mult = 0;
    for (std::size_t j = 0; j < s.distinct.size(); ++j) {
      if (find(j) != i) continue;
      sum += s.distinct[j].value * static_cast<double>(s.distinct[j].multiplicity);
      mult += s.distinct[j].multiplicity;
    }
    out.distinct.push_back({sum / static_cast<double>(mult), mult});
  }
  out.cluster_radius = radius;
  return out;
}

}  // namespace

ClauseReport check_distinct_powers(const CMatrix& m, const ToleranceConfig& tol) {
  // Defective eigenvalues split by about sqrt(eps); merge at that scale.
  const double scale = std::sqrt(tol.eig_cluster_tol);
  const Spectrum s0 = spectrum(m, tol);
  const Spectrum s = coarsen(s0, scale * (1.0 + s0.rho));
  unsigned k = 0;
  try {
    k = distinct_power_exponent(s, tol);
  } catch (const ReconstructionFailure& e) {
    return clause("L3", Status::inconclusive, e.what());
  }
  bool defective = false;
  for (const auto& c : s.distinct) defective = defective || c.multiplicity > 1;
  const Spectrum sk0 = spectrum(mat_power(m, k), tol);
  const double radius = defective ? scale * (1.0 + sk0.rho) : 0.0;
  const Spectrum sk = defective ? coarsen(sk0, radius) : sk0;
  const double match = std::max(radius, sk.cluster_radius * static_cast<double>(k));
  std::vector<Complex> targets;
  for (const auto& c : s.distinct) targets.push_back(std::pow(c.value, static_cast<double>(k)));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (std::abs(targets[i] - targets[j]) <= 2.0 * match) {
        return clause("L3", Status::inconclusive,
                      "k = " + std::to_string(k) + ", powers closer than the resolution " +
                          std::to_string(match));
      }
    }
  }
  bool ok = sk.distinct.size() == s.distinct.size();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    bool found = false;
    for (const auto& d : sk.distinct) {
      if (std::abs(d.value - targets[i]) <= match) {
        found = d.multiplicity == s.distinct[i].multiplicity;
        break;
      }
    }
    ok = ok && found;
  }
  return pass_or_fail("L3", ok,
                      "k = " + std::to_string(k) + ", distinct eigenvalues " +
                          std::to_string(s.distinct.size()) + " -> " +
                          std::to_string(sk.distinct.size()));
}

}  // namespace powermat
