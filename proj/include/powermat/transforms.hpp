#pragma once

#include <optional>
#include <string>

#include "powermat/exponents.hpp"
#include "powermat/matrix.hpp"
#include "powermat/spectral.hpp"

namespace powermat {

struct SimilarityResult {
  enum class Kind { row_stochastic, column_stochastic, doubly_stochastic, nilpotent_zero_rowsum };

  Kind kind = Kind::row_stochastic;
  CMatrix transformed;
  /// D_x or D_y (row/column kinds), or the positive kernel vector (nilpotent).
  std::optional<CVector> diagonal;
  /// S of the diagonal-plus-rank-one transform (doubly kind only).
  std::optional<CMatrix> S;

  /// max |row sum - 1| and max |column sum - 1| of `transformed`
  /// (max |row sum| for the nilpotent kind).
  double row_sum_residual = 0.0;
  double column_sum_residual = 0.0;
  /// ||Sx - e||_inf and ||S^T e - n y||_inf (doubly kind only).
  double sx_residual = 0.0;
  double ste_residual = 0.0;

  bool pattern_preserved = false;
  /// nu(transformed) == nu(lambda1^-1 A). The similarity is diagonal, so this
  /// is exact; nu(A) itself differs whenever lambda1 is not real positive.
  bool nu_preserved = false;
  /// nu(lambda1^-1 A) (nu(A) for the nilpotent kind).
  SearchResult nu_input;
  SearchResult nu_transformed;
  /// nu(A) of the untransformed input.
  SearchResult nu_unscaled;
};

std::string to_string(SimilarityResult::Kind kind);

/// R = lambda1^-1 D_x^-1 M D_x with D_x = diag(x). Requires both eigenvectors
/// positive and lambda1 != 0 (HypothesisViolation otherwise).
SimilarityResult row_stochastic_similar(const CMatrix& m, const EigenTriple& triple,
                                        const ToleranceConfig& tol = {}, unsigned k_max = 0);

/// C = lambda1^-1 D_y M D_y^-1 with D_y = diag(y).
SimilarityResult column_stochastic_similar(const CMatrix& m, const EigenTriple& triple,
                                           const ToleranceConfig& tol = {}, unsigned k_max = 0);

/// T = lambda1^-1 S M S^-1 with S = D_y + (e - D_y x) y^T after rescaling y
/// so that y^T x = 1. Throws IllConditioned when cond(S) exceeds 1e12.
SimilarityResult doubly_stochastic_similar(const CMatrix& m, const EigenTriple& triple,
                                           const ToleranceConfig& tol = {}, unsigned k_max = 0);

/// Diagonal-plus-rank-one matrix S (y is rescaled so y^T x = 1 first).
CMatrix diagonal_plus_rank_one(const CVector& x, const CVector& y);

struct StochasticClassification {
  std::optional<SimilarityResult> result;
  /// Why the classification is inapplicable, or a summary when it applies.
  std::string reason;
};

/// rho > 0 with a positive dominant eigenvector: row-stochastic branch.
/// rho == 0 with a positive kernel vector: nilpotent branch (L = D^-1 M D has
/// zero row sums and M^nu == O). Anything else is inapplicable.
StochasticClassification classify_stochastic_similarity(const CMatrix& m, unsigned k_max,
                                                        const ToleranceConfig& tol = {});

/// Same nonzero pattern: |a_ij| > tau(A) iff |b_ij| > tau(B).
bool same_pattern(const CMatrix& a, const CMatrix& b, const ToleranceConfig& tol = {});

}  // namespace powermat
