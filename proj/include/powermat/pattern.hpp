#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "powermat/matrix.hpp"

namespace powermat {

/// Directed graph of the nonzero pattern: arc i -> j iff |m_ij| > tau(M).
class PatternDigraph {
 public:
  PatternDigraph(const CMatrix& m, const ToleranceConfig& tol);

  Index size() const { return static_cast<Index>(out_.size()); }
  const std::vector<Index>& successors(Index v) const { return out_[v]; }
  bool has_arc(Index i, Index j) const;
  std::vector<std::pair<Index, Index>> arcs() const;

  bool strongly_connected() const;
  /// Length of the shortest closed walk through v, or 0 when v lies on no cycle.
  Index shortest_cycle_through(Index v) const;

 private:
  std::vector<std::vector<Index>> out_;
};

/// Index of imprimitivity with the cyclic classes realizing the block-cyclic
/// normal form: after permuting by `permutation`, arcs only run from class t
/// to class t+1 (mod p).
struct CyclicStructure {
  Index p = 1;
  std::vector<std::vector<Index>> classes;
  /// permutation[new_position] = original index.
  std::vector<Index> permutation;
};

bool is_irreducible(const CMatrix& m, const ToleranceConfig& tol = {});

/// Requires a nonnegative irreducible input (HypothesisViolation otherwise).
CyclicStructure cyclicity_index(const CMatrix& m, const ToleranceConfig& tol = {});

/// Nonnegative irreducible with p = 1. Throws HypothesisViolation when M is
/// not nonnegative.
bool is_primitive(const CMatrix& m, const ToleranceConfig& tol = {});

/// P M P^T for the permutation stored as new_position -> original index.
CMatrix permute(const CMatrix& m, const std::vector<Index>& permutation);

/// Coprime pair with its Frobenius number F = ab - a - b and explicit
/// representations of every m in (F, F + ab].
struct FrobeniusPair {
  std::int64_t a = 1;
  std::int64_t b = 1;
  std::int64_t F = -1;

  struct Representation {
    std::int64_t m;
    std::int64_t coef_a;
    std::int64_t coef_b;
  };
  std::vector<Representation> witnesses;
};

FrobeniusPair frobenius_pair(std::int64_t a, std::int64_t b);

/// Nonnegative coefficients (x, y) with x*a + y*b == m, if any exist.
bool representable(std::int64_t m, std::int64_t a, std::int64_t b,
                   std::int64_t* coef_a = nullptr, std::int64_t* coef_b = nullptr);

std::int64_t lcm(std::int64_t a, std::int64_t b);

}  // namespace powermat
