#include <doctest.h>

#include <numbers>

#include "../oracles.hpp"
#include "powermat/gallery.hpp"
#include "powermat/transforms.hpp"

using namespace powermat;

namespace {

EigenTriple triple_of(const CMatrix& m) {
  return dominant_eigentriple(m, nonneg_exponent(m, 64).k);
}

void check_sums(const CMatrix& t, bool rows, bool cols) {
  const double n = static_cast<double>(t.order());
  const Eigen::VectorXcd e = Eigen::VectorXcd::Ones(t.order());
  if (rows) CHECK((t.data() * e - e).cwiseAbs().maxCoeff() <= 1e-10 * n);
  if (cols) CHECK((t.data().transpose() * e - e).cwiseAbs().maxCoeff() <= 1e-10 * n);
}

}  // namespace

TEST_CASE("row stochastic") {
  const CMatrix ones = CMatrix::ones(2);
  const SimilarityResult r = row_stochastic_similar(ones, triple_of(ones));
  CHECK(max_abs_diff(r.transformed, CMatrix(ones.data() / 2.0)) < 1e-12);
  const CMatrix m = CMatrix::from_real({{1, 2}, {2, 1}});
  const SimilarityResult s = row_stochastic_similar(m, triple_of(m));
  CHECK(max_abs_diff(s.transformed, CMatrix::from_real({{1.0 / 3, 2.0 / 3}, {2.0 / 3, 1.0 / 3}})) < 1e-12);
  const CMatrix a = build("example-block").matrix;
  const SimilarityResult e = row_stochastic_similar(a, triple_of(a), {}, 64);
  check_sums(e.transformed, true, false);
  CHECK(e.pattern_preserved);
  CHECK(oracle::pattern(e.transformed.data()) == oracle::pattern(a.data()));
  CHECK(e.nu_transformed.k == 2);
  CHECK(e.nu_preserved);
}

TEST_CASE("column stochastic") {
  const CMatrix ones = CMatrix::ones(2);
  CHECK(max_abs_diff(column_stochastic_similar(ones, triple_of(ones)).transformed,
                     CMatrix(ones.data() / 2.0)) < 1e-12);
  const CMatrix m = CMatrix::from_real({{1, 2}, {2, 1}});
  CHECK(max_abs_diff(column_stochastic_similar(m, triple_of(m)).transformed,
                     CMatrix::from_real({{1.0 / 3, 2.0 / 3}, {2.0 / 3, 1.0 / 3}})) < 1e-12);
  const CMatrix a = build("example-block").matrix;
  const SimilarityResult c = column_stochastic_similar(a, triple_of(a), {}, 64);
  check_sums(c.transformed, false, true);
  CHECK(c.pattern_preserved);
}

TEST_CASE("doubly stochastic") {
  const CMatrix ones = CMatrix::ones(2);
  const SimilarityResult t = doubly_stochastic_similar(ones, triple_of(ones));
  CHECK(max_abs_diff(t.transformed, CMatrix(ones.data() / 2.0)) < 1e-12);
  const CMatrix m = CMatrix::from_real({{1, 2}, {2, 1}});
  const SimilarityResult d = doubly_stochastic_similar(m, triple_of(m));
  const Eigen::VectorXcd e = Eigen::VectorXcd::Ones(2);
  CHECK((d.transformed.data() * e - e).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((d.transformed.data().transpose() * e - e).cwiseAbs().maxCoeff() <= 1e-12);
  const CMatrix rot(m.data() * std::polar(1.0, std::numbers::pi / 3));
  const SimilarityResult r = doubly_stochastic_similar(rot, triple_of(rot));
  check_sums(r.transformed, true, true);
  CHECK(r.sx_residual <= 1e-10);
  CHECK(r.ste_residual <= 1e-10);
}

TEST_CASE("S identities re-verified") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const CMatrix m = random_positive(2 + static_cast<Index>(seed % 6), seed);
    const EigenTriple t = triple_of(m);
    const CMatrix s = diagonal_plus_rank_one(t.x, t.y);
    const Eigen::VectorXcd y = t.y.data() / (t.y.data().transpose() * t.x.data())(0, 0);
    const Eigen::VectorXcd e = Eigen::VectorXcd::Ones(m.order());
    CHECK((s.data() * t.x.data() - e).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((s.data().transpose() * e - static_cast<double>(m.order()) * y).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("transforms preserve spectrum, pattern and scaled exponent") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CMatrix base = random_nonneg_irreducible(2 + static_cast<Index>(seed % 6), seed);
    const CMatrix m(base.data() * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(seed % 3) / 3));
    const EigenTriple t = triple_of(m);
    REQUIRE(t.positivity == Positivity::both_positive);
    for (const SimilarityResult& r : {row_stochastic_similar(m, t, {}, 64), column_stochastic_similar(m, t, {}, 64)}) {
      CHECK(r.pattern_preserved);
      CHECK(r.nu_preserved);
      CHECK(r.nu_transformed.k == r.nu_input.k);
      std::vector<Complex> scaled;
      for (const Complex& z : spectrum(r.transformed).eigenvalues) scaled.push_back(z * t.lambda1);
      CHECK(oracle::same_multiset(scaled, spectrum(m).eigenvalues, 1e-6));
    }
  }
}

TEST_CASE("the unscaled exponent can differ under rotation") {
  // e^(2 pi i / 3) ones(3): nu(A) = 3 while the stochastic forms are nonnegative.
  const CMatrix m(CMatrix::ones(3).data() * std::polar(1.0, 2 * std::numbers::pi / 3));
  const SimilarityResult r = row_stochastic_similar(m, triple_of(m), {}, 64);
  CHECK(r.nu_unscaled.k == 3);
  CHECK(r.nu_transformed.k == 1);
  CHECK(r.nu_preserved);
}

TEST_CASE("classify_stochastic_similarity") {
  const StochasticClassification a = classify_stochastic_similarity(CMatrix::ones(3), 64);
  REQUIRE(a.result.has_value());
  CHECK(a.result->kind == SimilarityResult::Kind::row_stochastic);
  CHECK(max_abs_diff(a.result->transformed, CMatrix(CMatrix::ones(3).data() / 3.0)) < 1e-12);
  const StochasticClassification b =
      classify_stochastic_similarity(build_from_spec("rank-one-nilpotent:orient=uv").matrix, 64);
  REQUIRE(b.result.has_value());
  CHECK(b.result->kind == SimilarityResult::Kind::nilpotent_zero_rowsum);
  CHECK(b.result->nu_input.k == 2);
  CHECK_FALSE(classify_stochastic_similarity(CMatrix::from_real({{0, 1}, {0, 0}}), 64).result.has_value());
}

TEST_CASE("hypothesis violations") {
  const CMatrix rot = CMatrix::from_real({{0, 1}, {-1, 0}});
  const EigenTriple t = dominant_eigentriple(rot, 4);
  CHECK_THROWS_AS(row_stochastic_similar(rot, t), HypothesisViolation);
  CHECK(same_pattern(CMatrix::ones(2), CMatrix(CMatrix::ones(2).data() * 2.0)));
  CHECK_FALSE(same_pattern(CMatrix::ones(2), CMatrix::identity(2)));
}
