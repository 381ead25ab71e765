#include "powermat/exponents.hpp"

#include <algorithm>

#include "powermat/pattern.hpp"

namespace powermat {

std::string SearchResult::to_string() const {
  switch (kind) {
    case Kind::found:
      return "found(" + std::to_string(k) + ")";
    case Kind::not_found:
      return "not_found_up_to(" + std::to_string(k) + ")";
    case Kind::aborted:
      return "aborted_at(" + std::to_string(k) + ")";
  }
  return "?";
}

PowerCache::PowerCache(CMatrix m) { powers_.push_back(std::move(m)); }

const CMatrix* PowerCache::power(unsigned k) {
  if (k == 0) throw InvalidParams("PowerCache holds powers k >= 1");
  while (powers_.size() < k) {
    if (overflow_at_) return nullptr;
    const CMatrix& last = powers_.back();
    if (last.max_abs() > kGrowthLimit) {
      overflow_at_ = static_cast<unsigned>(powers_.size());
      return nullptr;
    }
    try {
      powers_.push_back(last * powers_.front());
    } catch (const NonFinite&) {
      overflow_at_ = static_cast<unsigned>(powers_.size()) + 1;
      return nullptr;
    }
  }
  if (overflow_at_ && k > *overflow_at_) return nullptr;
  return &powers_[k - 1];
}

unsigned default_k_max(Index n) {
  const auto nn = static_cast<unsigned>(n);
  return std::max(4U * nn * nn, 64U);
}

namespace {

template <typename Pred>
SearchResult first_power(PowerCache& cache, unsigned k_max, Pred pred) {
  if (k_max < 1) throw InvalidParams("k_max must be at least 1");
  for (unsigned k = 1; k <= k_max; ++k) {
    const CMatrix* mk = cache.power(k);
    if (mk == nullptr) {
      SearchResult r{SearchResult::Kind::aborted, k,
                     "entry growth exceeded 1e150; divide the matrix by its spectral "
                     "radius and retry"};
      return r;
    }
    if (pred(*mk)) return SearchResult::found_at(k);
  }
  return SearchResult::not_found_up_to(k_max);
}

}  // namespace

SearchResult nonneg_exponent(PowerCache& cache, unsigned k_max, const ToleranceConfig& tol) {
  return first_power(cache, k_max, [&](const CMatrix& p) { return is_nonnegative(p, tol); });
}

SearchResult positive_exponent(PowerCache& cache, unsigned k_max, const ToleranceConfig& tol) {
  return first_power(cache, k_max, [&](const CMatrix& p) { return is_positive(p, tol); });
}

SearchResult least_irreducible_nonneg_power(PowerCache& cache, unsigned k_max,
                                            const ToleranceConfig& tol) {
  return first_power(cache, k_max, [&](const CMatrix& p) {
    return is_nonnegative(p, tol) && is_irreducible(p, tol);
  });
}

SearchResult nonneg_exponent(const CMatrix& m, unsigned k_max, const ToleranceConfig& tol) {
  PowerCache cache(m);
  return nonneg_exponent(cache, k_max, tol);
}

SearchResult positive_exponent(const CMatrix& m, unsigned k_max, const ToleranceConfig& tol) {
  PowerCache cache(m);
  return positive_exponent(cache, k_max, tol);
}

SearchResult least_irreducible_nonneg_power(const CMatrix& m, unsigned k_max,
                                            const ToleranceConfig& tol) {
  PowerCache cache(m);
  return least_irreducible_nonneg_power(cache, k_max, tol);
}

SearchResult primitivity_exponent(const CMatrix& m, const ToleranceConfig& tol) {
  if (!is_primitive(m, tol)) {
    throw HypothesisViolation("primitivity_exponent requires a nonnegative primitive matrix");
  }
  const auto n = static_cast<unsigned>(m.order());
  const unsigned bound = (n - 1) * (n - 1) + 1;
  // Primitive matrices grow like rho^k; rescaling by a positive constant
  // leaves the sign pattern of every power unchanged.
  const double scale = m.max_abs();
  PowerCache cache(Complex(1.0 / scale) * m);
  return positive_exponent(cache, bound, tol);
}

ExponentReport exponent_report(const CMatrix& m, unsigned k_max, const ToleranceConfig& tol) {
  PowerCache cache(m);
  ExponentReport r;
  r.k_max = k_max;
  r.nu = nonneg_exponent(cache, k_max, tol);
  r.pi = positive_exponent(cache, k_max, tol);
  r.least_irreducible_nonneg_power = least_irreducible_nonneg_power(cache, k_max, tol);
  if (r.nu.found() && r.nu.k == 1 && is_primitive(m, tol)) {
    r.gamma = primitivity_exponent(m, tol);
  }
  return r;
}

std::optional<PowerCycle> detect_power_cycle(PowerCache& cache, unsigned k_max,
                                             const ToleranceConfig& tol) {
  // Compare each new power against a bounded window of earlier ones.
  constexpr unsigned kWindow = 64;
  for (unsigned j = 2; j <= k_max; ++j) {
    const CMatrix* mj = cache.power(j);
    if (mj == nullptr) return std::nullopt;
    const double tau = threshold(*mj, tol);
    const unsigned lo = j > kWindow ? j - kWindow : 1;
    for (unsigned i = lo; i < j; ++i) {
      const CMatrix* mi = cache.power(i);
      if (max_abs_diff(*mi, *mj) <= tau) {
        PowerCycle c;
        c.start = i;
        c.period = j - i;
        for (unsigned t = i; t < j; ++t) {
          if (!is_nonnegative(*cache.power(t), tol)) c.has_non_nonnegative_member = true;
        }
        return c;
      }
    }
  }
  return std::nullopt;
}

std::optional<PowerCycle> detect_power_cycle(const CMatrix& m, unsigned k_max,
                                             const ToleranceConfig& tol) {
  PowerCache cache(m);
  return detect_power_cycle(cache, k_max, tol);
}

}  // namespace powermat
