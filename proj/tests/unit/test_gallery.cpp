#include <doctest.h>

#include <numbers>

#include "../oracles.hpp"
#include "powermat/gallery.hpp"

using namespace powermat;
using Status = ClauseReport::Status;

TEST_CASE("every catalog entry's expectations pass") {
  for (const auto& item : catalog()) {
    const GalleryEntry e = build(item.id);
    CHECK_FALSE(e.provenance.empty());
    CHECK_FALSE(e.expectations.empty());
    for (const auto& x : e.expectations) {
      const ClauseReport r = evaluate_expectation(e, x);
      INFO(e.id << " " << x.property << " " << x.args.dump() << ": " << r.detail);
      CHECK(r.status == Status::pass);
    }
  }
}

TEST_CASE("parameter variants keep their expectations") {
  for (const char* spec : {"example-block:x=0.2", "rank-one-nilpotent:u=2;1;1;3", "rank-one-nilpotent:orient=uv",
                           "block-A1A2:u=1;1;2", "circulant:theta=0.3,n=5", "a-s-family:s=5,n=4",
                           "rotated-nonneg:h=3,k=4,seed=11,n=6", "neg-identity-block:b=3;1;2;2"}) {
    const GalleryEntry e = build_from_spec(spec);
    for (const auto& x : e.expectations) {
      INFO(spec << " " << x.property);
      CHECK(evaluate_expectation(e, x).status == Status::pass);
    }
  }
}

TEST_CASE("build examples") {
  const GalleryEntry eb = build("example-block", {{"x", "0.5"}});
  CHECK(eb.id == "example-block:x=0.5");
  bool has_spectrum = false;
  for (const auto& x : eb.expectations) has_spectrum = has_spectrum || x.property == "spectrum";
  CHECK(has_spectrum);
  CHECK(max_abs_diff(build("circulant", {{"theta", "0"}, {"n", "4"}}).matrix, CMatrix::identity(4)) == 0.0);
  const CMatrix a3 = build("a-s-family", {{"s", "3"}, {"n", "3"}}).matrix;
  CHECK(is_nonnegative(mat_power(a3, 12)));
}

TEST_CASE("build errors") {
  CHECK_THROWS_AS(build("no-such-entry"), UnknownId);
  CHECK_THROWS_AS(build("example-block", {{"x", "1.5"}}), InvalidParams);
  CHECK_THROWS_AS(build("example-block", {{"y", "0.5"}}), InvalidParams);
  CHECK_THROWS_AS(build_from_spec("circulant:theta"), InvalidParams);
  CHECK_THROWS_AS(build("rank-one-nilpotent", {{"u", "1;-2"}}), InvalidParams);
}

TEST_CASE("circulant closed form") {
  for (Index n = 2; n <= 8; ++n) {
    for (int j = 0; j < 20; ++j) {
      const Complex theta = std::polar(1.9 / static_cast<double>(n) * (j + 1) / 20.0, 0.7 * j);
      const CirculantSpec spec{theta, n};
      oracle::Mat p = oracle::Mat::Identity(n, n);
      const double z = std::abs(1.0 - static_cast<double>(n) * theta);
      for (unsigned k = 1; k <= 40; ++k) {
        p = p * circulant(spec).data();
        const CirculantPower cp = circulant_power(spec, k);
        CHECK((p - cp.closed_form.data()).cwiseAbs().maxCoeff() <= 1e-12 * std::pow(1 + z, k));
        CHECK(std::abs(cp.theta_k - (1.0 - std::pow(1.0 - static_cast<double>(n) * theta, static_cast<int>(k))) /
                                        static_cast<double>(n)) < 1e-12 * std::pow(1 + z, k));
      }
    }
  }
}

TEST_CASE("circulant nonnegativity criterion") {
  CHECK(circulant_power_nonneg_criterion({0.1, 3}, 1));
  CHECK_FALSE(circulant_power_nonneg_criterion({-0.1, 3}, 1));
  // 1 - n theta = -1 / (n - 1) exactly at the boundary.
  CHECK(circulant_power_nonneg_criterion({0.5, 3}, 1));
  CHECK_FALSE(circulant_power_nonneg_criterion({0.6, 3}, 1));
  CHECK_FALSE(circulant_power_nonneg_criterion({Complex(0.1, 0.1), 3}, 1));
}

TEST_CASE("orthogonal dense vector") {
  for (const std::vector<double>& u : std::vector<std::vector<double>>{{1, 2, 3}, {1, 1}, {1, 1, 1, 1}, {5, 1, 2, 7, 3}}) {
    const auto v = orthogonal_dense_vector(u);
    double dot = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      dot += u[i] * v[i];
      mx = std::max(mx, std::abs(v[i]));
    }
    CHECK(std::abs(dot) < 1e-12 * mx);
    for (double vi : v) CHECK(std::abs(vi) > 1e-3 * mx);
  }
  CHECK(orthogonal_dense_vector({1, 2, 3}) == orthogonal_dense_vector({1, 2, 3}));
}

TEST_CASE("double multiplicity validator") {
  const GalleryEntry e = build("double-multiplicity");
  const CMatrix& x1 = e.parts.at("X1");
  const CMatrix& x2 = e.parts.at("X2");
  CHECK(validate_double_multiplicity(x1, x2, {1, -1, 1, -1}).empty());
  CHECK_FALSE(validate_double_multiplicity(x1, x2, {1, 1, 1, 1}).empty());
  CHECK_FALSE(validate_double_multiplicity(CMatrix::identity(4), x2, {1, -1, 1, -1}).empty());
}

TEST_CASE("random families are deterministic and well formed") {
  CHECK(max_abs_diff(random_nonneg_irreducible(5, 3), random_nonneg_irreducible(5, 3)) == 0.0);
  CHECK(max_abs_diff(random_nonneg_irreducible(5, 3), random_nonneg_irreducible(5, 4)) > 0.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CMatrix a = random_nonneg_irreducible(6, seed, true);
    CHECK(is_nonnegative(a));
    CHECK(oracle::irreducible(oracle::pattern(a.data())));
    const CMatrix c = random_cyclic(6, 3, seed);
    CHECK(oracle::period(oracle::pattern(c.data())) == 3);
    CHECK(is_positive(random_positive(4, seed)));
    CHECK(random_real(4, seed).max_abs() <= 1.0);
  }
}

TEST_CASE("expectation serialization") {
  const Expectation x{"nu", Json::object(), 2};
  const Json j = to_json(x);
  CHECK(j["property"] == "nu");
  CHECK(j["expected"] == 2);
}
