#pragma once

#include <optional>
#include <string>
#include <vector>

#include "powermat/exponents.hpp"
#include "powermat/matrix.hpp"
#include "powermat/pattern.hpp"
#include "powermat/spectral.hpp"

namespace powermat {

/// Result of checking one clause. `inapplicable` means the clause's own
/// hypothesis test failed; `fail` always carries the violating witness in
/// `detail`.
struct ClauseReport {
  enum class Status { pass, fail, inapplicable, inconclusive };

  std::string clause_id;
  Status status = Status::inapplicable;
  std::string detail;
};

std::string to_string(ClauseReport::Status s);

/// Finite proof that A^q is eventually nonnegative: every m > F splits as
/// a nu' + b k' (a, b >= 0), so (A^q)^m = A^(a nu) A^(b k) >= O.
struct EventualCertificate {
  unsigned nu = 0;
  unsigned k = 0;
  unsigned q = 0;
  unsigned nu_prime = 0;
  unsigned k_prime = 0;
  long long F = 0;
  /// Exponents m, nu' k' consecutive values starting at max(F + 1, 1),
  /// with (A^q)^m confirmed nonnegative.
  std::vector<unsigned> verified_window;
};

struct CertificateOutcome {
  std::optional<EventualCertificate> certificate;
  std::string reason;
};

/// Per-clause check of the power-nonnegative Perron-Frobenius theorem:
/// T2.i, T2.ii, T2.iii, T2.iv, T2.iv.b, T2.v (via transforms), T2.vi, T2.vii.
std::vector<ClauseReport> verify_power_nonneg_theorem(const CMatrix& m, unsigned k_max,
                                                      const ToleranceConfig& tol = {});

struct CesaroResult {
  CMatrix average;
  CMatrix target;
  double err = 0.0;
};

/// (1/(1+K)) sum_{s=0..K} lambda1^-s A^s by running accumulation, compared
/// with x y^T / (x^T y). Requires a nonnegative irreducible power of A
/// (HypothesisViolation); throws DivergingAccumulation when the normalized
/// powers blow up (wrong lambda1).
CesaroResult cesaro_limit(const CMatrix& m, Complex lambda1, unsigned K,
                          const ToleranceConfig& tol = {});

/// err(K) at every checkpoint (ascending), from a single accumulation pass.
std::vector<double> cesaro_errors(const CMatrix& m, Complex lambda1,
                                  const std::vector<unsigned>& checkpoints,
                                  const ToleranceConfig& tol = {});

/// T3.i (simple dominant eigenvalue with strict gap), T3.ii (normalized powers
/// reach x y^T/(x^T y) > O at the gap-derived step p*), T3.equiv ((i) <=> (ii)),
/// T3.iii (doubly stochastic transform, via transforms).
std::vector<ClauseReport> verify_power_positive_theorem(const CMatrix& m, unsigned k_max,
                                                        const ToleranceConfig& tol = {});

/// Result of iterating B = lambda1^-1 A up to p* and comparing with the
/// rank-one limit.
struct PowerLimitCheck {
  SpectralGap gap;
  unsigned p_star = 0;
  double err = 0.0;
  bool limit_positive = false;
  bool converged = false;
};

/// Convergence of (lambda1^-1 A)^p at p* = gap_steps(ratio, target_err); when
/// the gap fails, the power at `fallback_steps` is tested instead.
PowerLimitCheck power_limit_check(const CMatrix& m, const EigenTriple& triple,
                                  const ToleranceConfig& tol = {}, double target_err = 1e-8,
                                  double accept_err = 1e-6, unsigned fallback_steps = 200);

CertificateOutcome certify_eventually_nonneg(const CMatrix& m, unsigned k_max,
                                             const ToleranceConfig& tol = {});

struct RotationResult {
  /// e^(2 pi i h / k) M is eventually positive.
  int h = 0;
  unsigned k = 1;
  double theta = 0.0;
  unsigned p_star = 1;
  bool window_ok = false;
};

std::optional<RotationResult> find_eventually_positive_rotation(const CMatrix& m, unsigned k_max,
                                                                const ToleranceConfig& tol = {});

struct IrreducibleSequenceResult {
  Index s = 1;
  Index p = 1;
  std::vector<ClauseReport> reports;
};

/// A^(m s p + 1) irreducible for m = 0..m_max. Requires nonnegative
/// irreducible input.
IrreducibleSequenceResult check_irreducible_power_sequence(const CMatrix& m, unsigned m_max,
                                                           const ToleranceConfig& tol = {});

struct MTypeScanResult {
  Complex lambda1;
  std::vector<Complex> grid;
  std::vector<Complex> witnesses;
  /// Shifts skipped because I - A/sigma was numerically singular.
  std::vector<Complex> singular;
  /// Largest |sigma - lambda1| over witnesses; nullopt when there are none.
  std::optional<double> max_eps_on_grid;
};

/// Scans sigma = lambda1 + r e^(i(arg lambda1 + phi)) over `grid_radii`
/// log-spaced r in [1e-6, 0.5] |lambda1| and `grid_angles` uniform phi,
/// keeping |sigma| > |lambda1|; a witness has Re (I - A/sigma)^-1 > tau.
/// Requires M^k nonnegative irreducible.
MTypeScanResult m_type_scan(const CMatrix& m, unsigned k, int grid_radii = 12,
                            int grid_angles = 16, const ToleranceConfig& tol = {});

/// Re (I - A/sigma)^-1 for one shift; nullopt when singular.
std::optional<CMatrix> resolvent_real_part(const CMatrix& m, Complex sigma);

/// Operational "eventually positive": lambda1 = rho simple with a strict gap,
/// and M^p > O for every p in [p*, p* + n].
struct EventualPositivity {
  bool value = false;
  unsigned p_star = 0;
  std::string detail;
};

EventualPositivity eventually_positive(const CMatrix& m, const ToleranceConfig& tol = {});

/// Real-matrix equivalences C5 (odd positive power <=> rho dominant with
/// positive eigenvectors), C6 (power positive <=> A or -A eventually
/// positive), C7 (power positive with odd positive power <=> eventually
/// positive), C8 (odd irreducible nonnegative power => rho in sigma).
std::vector<ClauseReport> check_real_equivalences(const CMatrix& m, unsigned k_max,
                                                  const ToleranceConfig& tol = {});

/// Nilpotent matrix with a positive kernel vector satisfies A^nu = O.
ClauseReport check_nilpotent_lemma(const CMatrix& m, unsigned k_max,
                                   const ToleranceConfig& tol = {});

/// Weakly (column) stochastic and power nonnegative implies 1 = rho in sigma.
ClauseReport check_weakly_stochastic_corollary(const CMatrix& m, unsigned k_max,
                                               const ToleranceConfig& tol = {});

/// Eventually nonnegative (certified) implies rho in sigma with nonnegative
/// eigenvectors. Evaluated on A itself when a certificate with q = 1 exists.
ClauseReport check_eventual_perron(const CMatrix& m, unsigned k_max,
                                   const ToleranceConfig& tol = {});

/// k-th powers of distinct eigenvalues stay distinct for the prime exponent
/// returned by distinct_power_exponent.
ClauseReport check_distinct_powers(const CMatrix& m, const ToleranceConfig& tol = {});

}  // namespace powermat
