#pragma once

#include <optional>
#include <set>
#include <vector>

#include "powermat/matrix.hpp"

namespace powermat {

/// Largest order accepted by the dense eigen solver.
inline constexpr Index kMaxSpectrumOrder = 64;

/// Eigenvalues sorted by nonincreasing modulus (ties by increasing argument
/// in [0, 2pi)). Computed eigenvalues closer than eig_cluster_tol * (1 + rho)
/// are merged into one cluster and reported at the cluster mean, which is far
/// more accurate than the individual members for defective eigenvalues.
struct Spectrum {
  struct Cluster {
    Complex value;
    int multiplicity = 1;
  };

  /// n entries, each replaced by its cluster mean, in the sort order above.
  std::vector<Complex> eigenvalues;
  /// Distinct clustered eigenvalues, same order.
  std::vector<Cluster> distinct;
  double rho = 0.0;
  /// Absolute distance below which two eigenvalues are considered equal.
  double cluster_radius = 0.0;
};

Spectrum spectrum(const CMatrix& m, const ToleranceConfig& tol = {});

/// Argument in [0, 2pi); values within 1e-12 of 2pi wrap to 0.
double principal_arg(Complex z);

enum class Positivity { both_positive, not_positive };

/// Dominant eigenvalue with right (Ax = lambda x) and left (y^T A = lambda y^T)
/// eigenvectors. Both vectors are phase-normalized so their largest-modulus
/// entry is real positive and scaled to unit max-norm.
struct EigenTriple {
  Complex lambda1;
  CVector x;
  CVector y;
  double residual_right = 0.0;
  double residual_left = 0.0;
  Positivity positivity = Positivity::not_positive;
};

/// lambda1 is the maximal-modulus eigenvalue whose nu-th power is real
/// positive, ties broken by smallest argument. Throws AmbiguousDominant when
/// no peripheral eigenvalue qualifies.
EigenTriple dominant_eigentriple(const CMatrix& m, unsigned nu, const ToleranceConfig& tol = {});

/// Right/left eigenvectors for a known eigenvalue by inverse iteration.
EigenTriple eigentriple_for(const CMatrix& m, Complex lambda, const ToleranceConfig& tol = {},
                            const Eigen::VectorXcd* seed = nullptr);

bool rho_in_spectrum(const CMatrix& m, const ToleranceConfig& tol = {});
bool rho_in_spectrum(const Spectrum& s, const ToleranceConfig& tol = {});

struct PeripheralStructure {
  int p = 0;
  bool angles_ok = false;
  /// h for each peripheral eigenvalue, 0 where no integer matched.
  std::vector<int> h;
};

/// Requires M^k nonnegative irreducible (HypothesisViolation otherwise).
PeripheralStructure peripheral_structure(const CMatrix& m, unsigned k,
                                         const ToleranceConfig& tol = {});

/// Denominators d of rational argument differences (arg l - arg m) / 2pi = s/d
/// over pairs of distinct nonzero eigenvalues. Continued-fraction
/// reconstruction with denominators capped at 1e6.
std::set<long long> argument_denominators(const Spectrum& s);

/// Prime k outside argument_denominators(s) such that k-th powers of distinct
/// eigenvalues stay distinct (checked before returning).
unsigned distinct_power_exponent(const Spectrum& s, const ToleranceConfig& tol = {});

/// Denominator of the best rational approximation of x in [0, 1) with
/// |x - s/d| <= tol and d <= max_den, or nullopt when none exists.
std::optional<long long> rational_denominator(double x, double tol = 1e-9,
                                              long long max_den = 1000000);

/// Number of eigenvalues (with multiplicity) within `radius` of lambda. A
/// Jordan block of size j splits into a ring of radius ~ eps^(1/j), so
/// algebraic multiplicities of defective eigenvalues need a wider radius than
/// the clustering one, e.g. sqrt(eig_cluster_tol) * (1 + rho).
int multiplicity_near(const Spectrum& s, Complex lambda, double radius);

/// Second-largest distinct modulus relative to a chosen lambda1, plus the
/// simplicity of lambda1 in the clustered spectrum.
struct SpectralGap {
  Complex lambda1;
  double modulus2 = 0.0;
  int multiplicity1 = 0;
  /// lambda1 simple, nonzero and strictly dominating every other eigenvalue.
  bool strict = false;
  /// |lambda2| / |lambda1|.
  double ratio = 1.0;
};

SpectralGap spectral_gap(const Spectrum& s, Complex lambda1, const ToleranceConfig& tol = {});

/// Steps p with ratio^p <= target_err: ceil(ln target_err / ln ratio), and
/// 1 when ratio is 0. Requires 0 <= ratio < 1.
unsigned gap_steps(double ratio, double target_err);

/// M^n == O within abs_tol + rel_tol * (n * max|m_ij|)^n. Decided on the
/// power rather than on computed eigenvalues, which scatter like eps^(1/j)
/// around a defective zero eigenvalue.
bool is_nilpotent(const CMatrix& m, const ToleranceConfig& tol = {});

/// A positive real vector x (max-norm 1) with ||Mx||_inf <= tau(M), searched
/// in an orthonormal basis of the real kernel of [Re M; Im M] by maximizing
/// the smallest entry (coarse sampling plus subgradient refinement).
/// Heuristic: nullopt means "none found", not "none exists".
std::optional<CVector> find_positive_kernel_vector(const CMatrix& m,
                                                   const ToleranceConfig& tol = {});

}  // namespace powermat
