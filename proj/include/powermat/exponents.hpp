#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "powermat/matrix.hpp"

namespace powermat {

/// Outcome of a bounded exponent search. A not-found result means
/// "inconclusive within the bound", never "the exponent does not exist".
struct SearchResult {
  enum class Kind { found, not_found, aborted };

  Kind kind = Kind::not_found;
  /// found: the exponent. not_found: the bound searched. aborted: the
  /// power at which the growth guard fired.
  unsigned k = 0;
  std::string note;

  static SearchResult found_at(unsigned k) { return {Kind::found, k, {}}; }
  static SearchResult not_found_up_to(unsigned k) { return {Kind::not_found, k, {}}; }

  bool found() const { return kind == Kind::found; }
  std::string to_string() const;
};

/// Consecutive powers M^1, M^2, ... built lazily by repeated multiplication
/// so that minimality claims are witnessed power by power.
///
/// The cache aborts once any power has max modulus above `growth_limit`;
/// callers should rescale M (e.g. by 1/rho) in that case.
class PowerCache {
 public:
  static constexpr double kGrowthLimit = 1e150;

  explicit PowerCache(CMatrix m);

  const CMatrix& base() const { return powers_.front(); }
  /// M^k for k >= 1, or nullptr when the growth guard fired before k.
  const CMatrix* power(unsigned k);
  /// Power at which growth aborted the cache, if it did.
  std::optional<unsigned> overflowed_at() const { return overflow_at_; }

 private:
  std::deque<CMatrix> powers_;  // powers_[k-1] == M^k
  std::optional<unsigned> overflow_at_;
};

/// Default search bound max(4 n^2, 64).
unsigned default_k_max(Index n);

SearchResult nonneg_exponent(PowerCache& cache, unsigned k_max, const ToleranceConfig& tol);
SearchResult positive_exponent(PowerCache& cache, unsigned k_max, const ToleranceConfig& tol);
SearchResult least_irreducible_nonneg_power(PowerCache& cache, unsigned k_max,
                                            const ToleranceConfig& tol);

SearchResult nonneg_exponent(const CMatrix& m, unsigned k_max, const ToleranceConfig& tol = {});
SearchResult positive_exponent(const CMatrix& m, unsigned k_max, const ToleranceConfig& tol = {});
SearchResult least_irreducible_nonneg_power(const CMatrix& m, unsigned k_max,
                                            const ToleranceConfig& tol = {});

/// Exponent gamma of a primitive matrix, searched up to the Wielandt bound
/// (n-1)^2 + 1. Throws HypothesisViolation unless M is nonnegative primitive.
SearchResult primitivity_exponent(const CMatrix& m, const ToleranceConfig& tol = {});

struct ExponentReport {
  SearchResult nu;
  SearchResult pi;
  /// Only meaningful for nonnegative primitive input; nullopt otherwise.
  std::optional<SearchResult> gamma;
  SearchResult least_irreducible_nonneg_power;
  unsigned k_max = 0;
};

ExponentReport exponent_report(const CMatrix& m, unsigned k_max, const ToleranceConfig& tol = {});

/// Eventually periodic power sequence: M^(start + period) == M^start within
/// tau, with no earlier repetition found in the window.
struct PowerCycle {
  unsigned start = 0;
  unsigned period = 0;
  /// Whether some power in the cycle fails is_nonnegative. Combined with the
  /// repetition this proves M is not eventually nonnegative.
  bool has_non_nonnegative_member = false;
};

std::optional<PowerCycle> detect_power_cycle(PowerCache& cache, unsigned k_max,
                                             const ToleranceConfig& tol);
std::optional<PowerCycle> detect_power_cycle(const CMatrix& m, unsigned k_max,
                                             const ToleranceConfig& tol = {});

}  // namespace powermat
