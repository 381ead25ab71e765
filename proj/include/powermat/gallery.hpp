#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "powermat/matrix.hpp"
#include "powermat/theorems.hpp"

namespace powermat {

using Json = nlohmann::json;

/// String-valued constructor parameters, e.g. {"x": "0.5"}.
using ParamMap = std::map<std::string, std::string>;

/// A machine-checkable claim about a gallery matrix.
///
/// Properties understood by evaluate_expectation:
///   nu, pi (int or null for "not found"), spectrum ([[re, im], ...]),
///   rho_in_spectrum, irreducible, real (bool),
///   power_irreducible, power_nonnegative, power_real, power_zero ({k}: bool),
///   power_scaled_ones ({k, scale}: bool), powers_reducible ({from, to}: bool),
///   odd_powers_not_nonnegative ({to}: bool), power_cycle_not_nonnegative (bool),
///   weakly_stochastic ({mode}: bool), product_zero ({lhs, rhs}: bool; part names),
///   rho_multiplicity (int), nu_divides ({k}: bool).
struct Expectation {
  std::string property;
  Json args = Json::object();
  Json expected;
};

struct GalleryEntry {
  /// Canonical id including parameters, e.g. "example-block:x=0.5".
  std::string id;
  CMatrix matrix;
  std::vector<Expectation> expectations;
  /// Where the example comes from, in words.
  std::string provenance;
  /// Named building blocks referenced by product_zero expectations.
  std::map<std::string, CMatrix> parts;
};

struct CatalogItem {
  std::string id;
  std::string params;
  std::string summary;
};

const std::vector<CatalogItem>& catalog();

/// Throws UnknownId or InvalidParams.
GalleryEntry build(const std::string& id, const ParamMap& params = {});

/// Parses "id" or "id:k=v,k=v" and builds the entry.
GalleryEntry build_from_spec(const std::string& spec);

struct CirculantSpec {
  Complex theta;
  Index n = 2;
};

/// C(theta) = (1 - n theta) I + theta E.
CMatrix circulant(const CirculantSpec& spec);

struct CirculantPower {
  CMatrix closed_form;
  Complex theta_k;
};

/// C(theta)^k = C(theta_k), theta_k = (1 - (1 - n theta)^k) / n.
CirculantPower circulant_power(const CirculantSpec& spec, unsigned k);

/// -1/(n-1) <= (1 - n theta)^k <= 1 with a real value, relative tolerance rel.
bool circulant_power_nonneg_criterion(const CirculantSpec& spec, unsigned k, double rel = 1e-12);

/// v in span(u)^perp with no zero entries: u2 e1 - u1 e2 plus a damped
/// projection of (1, 2, ..., n) onto span(u)^perp.
std::vector<double> orthogonal_dense_vector(const std::vector<double>& u);

/// Checks the double-multiplicity hypotheses on X1, X2 (n x n) and y:
/// symmetric nonnegative irreducible, rank <= n - 2, y in both kernels with
/// entries of both signs. Returns an empty string when valid, else the reason.
std::string validate_double_multiplicity(const CMatrix& x1, const CMatrix& x2,
                                         const std::vector<double>& y,
                                         const ToleranceConfig& tol = {});

/// Random families; identical (n, seed) always give identical matrices.
CMatrix random_nonneg_irreducible(Index n, std::uint64_t seed, bool primitive = false);
/// Nonnegative irreducible with cyclicity index exactly p (2 <= p <= n).
CMatrix random_cyclic(Index n, Index p, std::uint64_t seed);
/// Entries uniform in [0.1, 1).
CMatrix random_positive(Index n, std::uint64_t seed);
/// Entries uniform in [-1, 1).
CMatrix random_real(Index n, std::uint64_t seed);

ClauseReport evaluate_expectation(const GalleryEntry& entry, const Expectation& e,
                                  unsigned k_max = 0, const ToleranceConfig& tol = {});

Json to_json(const Expectation& e);

}  // namespace powermat
