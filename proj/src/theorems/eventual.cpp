#include <cmath>
#include <numbers>
#include <numeric>

#include "common.hpp"

namespace powermat {

using detail::clause;
using detail::fmt;
using detail::pass_or_fail;
using Status = ClauseReport::Status;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Every power M^p, p in [from, from + count], is entrywise positive. M is
/// rescaled by `scale` first; sign patterns are unaffected.
bool positive_window(const CMatrix& m, double scale, unsigned from, unsigned count,
                     const ToleranceConfig& tol) {
  const CMatrix b(m.data() / scale);
  CMatrix p = mat_power(b, from);
  for (unsigned i = 0;; ++i) {
    if (!is_positive(p, tol)) return false;
    if (i == count) return true;
    p = p * b;
  }
}

}  // namespace

CertificateOutcome certify_eventually_nonneg(const CMatrix& m, unsigned k_max,
                                             const ToleranceConfig& tol) {
  CertificateOutcome out;
  PowerCache cache(m);
  const SearchResult nu = nonneg_exponent(cache, k_max, tol);
  if (!nu.found()) {
    out.reason = "inconclusive: nu " + nu.to_string();
    return out;
  }
  const SearchResult k = least_irreducible_nonneg_power(cache, k_max, tol);
  if (!k.found()) {
    out.reason = "inconclusive: no nonnegative irreducible power (" + k.to_string() + ")";
    return out;
  }
  EventualCertificate c;
  c.nu = nu.k;
  c.k = k.k;
  c.q = std::gcd(nu.k, k.k);
  c.nu_prime = c.nu / c.q;
  c.k_prime = c.k / c.q;
  const FrobeniusPair fp = frobenius_pair(c.nu_prime, c.k_prime);
  c.F = fp.F;

  const CMatrix aq = mat_power(m, c.q);
  const double scale = aq.max_abs();
  const CMatrix b = scale > 0.0 ? CMatrix(aq.data() / scale) : aq;
  const unsigned first = static_cast<unsigned>(std::max<long long>(c.F + 1, 1));
  const unsigned count = c.nu_prime * c.k_prime;
  CMatrix p = mat_power(b, first);
  for (unsigned i = 0; i < count; ++i) {
    const unsigned e = first + i;
    if (!is_nonnegative(p, tol)) {
      out.reason = "window check failed: (A^q)^" + std::to_string(e) + " has a negative entry";
      return out;
    }
    c.verified_window.push_back(e);
    p = p * b;
  }
  out.reason = "certified: (A^" + std::to_string(c.q) + ")^m >= O for all m > " +
               std::to_string(c.F);
  out.certificate = std::move(c);
  return out;
}

std::optional<RotationResult> find_eventually_positive_rotation(const CMatrix& m, unsigned k_max,
                                                                const ToleranceConfig& tol) {
  PowerCache cache(m);
  const SearchResult pi = positive_exponent(cache, k_max, tol);
  if (!pi.found()) return std::nullopt;
  const SearchResult nu = nonneg_exponent(cache, k_max, tol);
  EigenTriple triple = [&] {
    try {
      return dominant_eigentriple(m, nu.k, tol);
    } catch (const AmbiguousDominant&) {
      return EigenTriple{0.0, CVector::ones(m.order()), CVector::ones(m.order())};
    }
  }();
  if (std::abs(triple.lambda1) == 0.0) return std::nullopt;

  RotationResult r;
  r.k = pi.k;
  const long h_arg = std::lround(principal_arg(triple.lambda1) * pi.k / kTwoPi) %
                     static_cast<long>(pi.k);
  r.h = static_cast<int>((static_cast<long>(pi.k) - h_arg) % static_cast<long>(pi.k));
  r.theta = kTwoPi * r.h / pi.k;

  const CMatrix rotated(m.data() * std::polar(1.0, r.theta));
  const Spectrum s = spectrum(rotated, tol);
  const SpectralGap gap = spectral_gap(s, s.rho, tol);
  if (!gap.strict || !rho_in_spectrum(s, tol)) return std::nullopt;
  r.p_star = gap_steps(gap.ratio, 1e-8);
  r.window_ok = positive_window(rotated, s.rho, r.p_star, r.k, tol);
  return r;
}

IrreducibleSequenceResult check_irreducible_power_sequence(const CMatrix& m, unsigned m_max,
                                                           const ToleranceConfig& tol) {
  if (!is_nonnegative(m, tol) || !is_irreducible(m, tol)) {
    throw HypothesisViolation("irreducible power sequence requires nonnegative irreducible input");
  }
  IrreducibleSequenceResult out;
  const CyclicStructure cs = cyclicity_index(m, tol);
  out.p = cs.p;
  const PatternDigraph g(m, tol);
  for (Index v = 0; v < m.order(); ++v) {
    const Index len = g.shortest_cycle_through(v);
    out.s = lcm(out.s, len / out.p);
  }
  const double rho = spectrum(m, tol).rho;
  const CMatrix b(m.data() / rho);
  for (unsigned j = 0; j <= m_max; ++j) {
    const auto e = static_cast<unsigned>(static_cast<Index>(j) * out.s * out.p + 1);
    const bool ok = is_irreducible(mat_power(b, e), tol);
    out.reports.push_back(pass_or_fail("irr.m=" + std::to_string(j), ok,
                                       "A^" + std::to_string(e) +
                                           (ok ? " irreducible" : " reducible")));
  }
  return out;
}

std::optional<CMatrix> resolvent_real_part(const CMatrix& m, Complex sigma) {
  const Index n = m.order();
  const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n, n) - m.data() / sigma;
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  if (!(lu.rcond() > 1e-14)) return std::nullopt;
  const Eigen::MatrixXcd z = lu.inverse();
  if (!z.allFinite()) return std::nullopt;
  return CMatrix(Eigen::MatrixXcd(z.real().cast<Complex>()));
}

MTypeScanResult m_type_scan(const CMatrix& m, unsigned k, int grid_radii, int grid_angles,
                            const ToleranceConfig& tol) {
  if (k == 0 || grid_radii < 1 || grid_angles < 1) {
    throw InvalidParams("m_type_scan needs k >= 1 and a nonempty grid");
  }
  const CMatrix mk = mat_power(m, k);
  if (!is_nonnegative(mk, tol) || !is_irreducible(mk, tol)) {
    throw HypothesisViolation("M^" + std::to_string(k) + " is not nonnegative irreducible");
  }
  const SearchResult nu = nonneg_exponent(m, std::max(k, default_k_max(m.order())), tol);
  MTypeScanResult out;
  out.lambda1 = dominant_eigentriple(m, nu.found() ? nu.k : k, tol).lambda1;
  const double mod = std::abs(out.lambda1);
  const double base_arg = std::arg(out.lambda1);
  const double lo = 1e-6 * mod;
  const double hi = 0.5 * mod;
  for (int i = 0; i < grid_radii; ++i) {
    const double r = grid_radii == 1 || i == grid_radii - 1
                         ? hi
                         : lo * std::pow(hi / lo, static_cast<double>(i) / (grid_radii - 1));
    for (int j = 0; j < grid_angles; ++j) {
      const double phi = kTwoPi * j / grid_angles;
      const Complex sigma = out.lambda1 + std::polar(r, base_arg + phi);
      if (std::abs(sigma) <= mod) continue;
      out.grid.push_back(sigma);
      const auto z = resolvent_real_part(m, sigma);
      if (!z) {
        out.singular.push_back(sigma);
        continue;
      }
      if (is_positive(*z, tol)) {
        out.witnesses.push_back(sigma);
        const double eps = std::abs(sigma - out.lambda1);
        out.max_eps_on_grid = std::max(out.max_eps_on_grid.value_or(0.0), eps);
      }
    }
  }
  return out;
}

EventualPositivity eventually_positive(const CMatrix& m, const ToleranceConfig& tol) {
  EventualPositivity out;
  if (is_nilpotent(m, tol)) {
    out.detail = "nilpotent";
    return out;
  }
  const Spectrum s = spectrum(m, tol);
  if (s.rho <= s.cluster_radius || !rho_in_spectrum(s, tol)) {
    out.detail = "rho is not a positive eigenvalue";
    return out;
  }
  const SpectralGap gap = spectral_gap(s, s.rho, tol);
  if (!gap.strict) {
    out.detail = "no strict spectral gap at rho";
    return out;
  }
  out.p_star = gap_steps(gap.ratio, 1e-8);
  const auto n = static_cast<unsigned>(m.order());
  out.value = positive_window(m, s.rho, out.p_star, n, tol);
  out.detail = std::string("powers ") + std::to_string(out.p_star) + ".." +
               std::to_string(out.p_star + n) + (out.value ? " positive" : " not all positive") +
               ", |lambda2|/rho = " + fmt(gap.ratio);
  return out;
}

}  // namespace powermat
