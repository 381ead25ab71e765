#include "powermat/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "powermat/exponents.hpp"
#include "powermat/pattern.hpp"
#include "powermat/spectral.hpp"

namespace powermat {

namespace {

constexpr double kPi = std::numbers::pi;

// ---- parameter parsing ------------------------------------------------------

double parse_double(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidParams("parameter " + key + ": expected a number, got '" + s + "'");
  }
}

double get_double(const ParamMap& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : parse_double(key, it->second);
}

long long get_int(const ParamMap& p, const std::string& key, long long fallback) {
  const auto it = p.find(key);
  if (it == p.end()) return fallback;
  const double v = parse_double(key, it->second);
  if (v != std::floor(v)) throw InvalidParams("parameter " + key + ": expected an integer");
  return static_cast<long long>(v);
}

std::vector<double> get_list(const ParamMap& p, const std::string& key,
                             std::vector<double> fallback) {
  const auto it = p.find(key);
  if (it == p.end()) return fallback;
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ';')) out.push_back(parse_double(key, item));
  if (out.empty()) throw InvalidParams("parameter " + key + ": empty list");
  return out;
}

void reject_unknown(const ParamMap& p, std::initializer_list<const char*> allowed,
                    const std::string& id) {
  for (const auto& [key, value] : p) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                [&](const char* a) { return key == a; });
    if (!ok) throw InvalidParams("unknown parameter '" + key + "' for " + id);
  }
}

std::string fmt_param(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + fmt_param(v[i]);
  return s;
}

// ---- small builders ---------------------------------------------------------

Eigen::MatrixXcd outer(const std::vector<double>& a, const std::vector<double>& b) {
  Eigen::MatrixXcd m(static_cast<Index>(a.size()), static_cast<Index>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) = a[i] * b[j];
    }
  }
  return m;
}

Json complex_list(const std::vector<Complex>& z) {
  Json out = Json::array();
  for (const Complex& c : z) out.push_back({c.real(), c.imag()});
  return out;
}

Expectation expect(std::string property, Json expected, Json args = Json::object()) {
  return Expectation{std::move(property), std::move(args), std::move(expected)};
}

void require_positive(const std::vector<double>& u, const char* name) {
  for (double x : u) {
    if (!(x > 0.0)) throw InvalidParams(std::string(name) + " must be entrywise positive");
  }
}

// ---- catalog entries --------------------------------------------------------

GalleryEntry rotation2(const ParamMap& p) {
  reject_unknown(p, {}, "rotation2");
  GalleryEntry e{"rotation2", CMatrix::from_real({{0, 1}, {-1, 0}}), {}, "rotation example: A^2 = -I, A^4 = I", {}};
  e.expectations = {
      expect("nu", 4),
      expect("spectrum", complex_list({{0, 1}, {0, -1}})),
      expect("rho_in_spectrum", false),
      expect("power_cycle_not_nonnegative", true),
  };
  return e;
}

GalleryEntry example_block(const ParamMap& p) {
  reject_unknown(p, {"x"}, "example-block");
  const double x = get_double(p, "x", 0.5);
  if (!(x > 0.0 && x < 1.0)) throw InvalidParams("example-block needs x in (0, 1)");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(4, 4);
  a.block(0, 2, 2, 2) << 1, 1, 1, 1;
  a.block(2, 0, 2, 2) << 1, -x, 0, 2;
  const double r = std::sqrt(3.0 - x);
  GalleryEntry e{"example-block:x=" + fmt_param(x), CMatrix(a), {},
                 "block matrix [[O, B], [C, O]] with B = ones(2), C = [[1, -x], [0, 2]]", {}};
  e.expectations = {
      expect("irreducible", true),
      expect("nu", 2),
      expect("power_irreducible", false, {{"k", 2}}),
      expect("power_nonnegative", true, {{"k", 3}}),
      expect("power_irreducible", true, {{"k", 3}}),
      expect("spectrum", complex_list({{r, 0}, {-r, 0}, {0, 0}, {0, 0}})),
      expect("rho_in_spectrum", true),
  };
  return e;
}

GalleryEntry complex_eventually(const ParamMap& p) {
  reject_unknown(p, {}, "complex-eventually");
  const CMatrix u = CMatrix::ones(3);
  const CMatrix v = CMatrix::from_real({{1, 1, -2}, {-1, -1, 2}, {0, 0, 0}});
  const CMatrix a(u.data() + Complex(0, 1) * v.data());
  GalleryEntry e{"complex-eventually", a, {}, "A = U + iV with U = ones(3) and V real nilpotent", {{"U", u}, {"V", v}}};
  e.expectations = {
      expect("product_zero", true, {{"lhs", "U"}, {"rhs", "V"}}),
      expect("product_zero", true, {{"lhs", "V"}, {"rhs", "U"}}),
      expect("product_zero", true, {{"lhs", "V"}, {"rhs", "V"}}),
      expect("real", false),
      expect("nu", 2),
  };
  for (int k = 2; k <= 6; ++k) {
    e.expectations.push_back(
        expect("power_scaled_ones", true, {{"k", k}, {"scale", std::pow(3.0, k - 1)}}));
  }
  return e;
}

GalleryEntry neg_identity_block(const ParamMap& p) {
  reject_unknown(p, {"b"}, "neg-identity-block");
  const std::vector<double> b = get_list(p, "b", {2, 1, 1, 2});
  const auto m = static_cast<Index>(std::lround(std::sqrt(static_cast<double>(b.size()))));
  if (m < 1 || static_cast<std::size_t>(m * m) != b.size()) {
    throw InvalidParams("neg-identity-block: b must list a square matrix row by row");
  }
  Eigen::MatrixXcd bm(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) bm(i, j) = b[static_cast<std::size_t>(i * m + j)];
  }
  const CMatrix bc(bm);
  if (!is_positive(bc) || !(spectrum(bc).rho > 1.0)) {
    throw InvalidParams("neg-identity-block: B must be positive with rho(B) > 1");
  }
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  a.topLeftCorner(m, m) = bm;
  a.bottomRightCorner(m, m) = -Eigen::MatrixXcd::Identity(m, m);
  GalleryEntry e{"neg-identity-block:b=" + fmt_list(b), CMatrix(a), {},
                 "diag(B, -I) with B positive and rho(B) > 1: power nonnegative, not eventually nonnegative", {}};
  e.expectations = {
      expect("nu", 2),
      expect("rho_in_spectrum", true),
      expect("odd_powers_not_nonnegative", true, {{"to", 9}}),
  };
  return e;
}

GalleryEntry rank_one_nilpotent(const ParamMap& p) {
  reject_unknown(p, {"u", "orient"}, "rank-one-nilpotent");
  const std::vector<double> u = get_list(p, "u", {1, 2, 3});
  require_positive(u, "u");
  if (u.size() < 2) throw InvalidParams("rank-one-nilpotent needs n >= 2");
  const auto it = p.find("orient");
  const std::string orient = it == p.end() ? "vu" : it->second;
  if (orient != "vu" && orient != "uv") throw InvalidParams("orient must be vu or uv");
  const std::vector<double> v = orthogonal_dense_vector(u);
  const CMatrix a(orient == "vu" ? outer(v, u) : outer(u, v));
  GalleryEntry e{"rank-one-nilpotent:u=" + fmt_list(u) + ",orient=" + orient, a, {},
                 orient == "vu" ? "rank-one v u^T with u > 0 and v orthogonal to u without zero entries"
                                : "rank-one u v^T with u > 0 in its kernel", {}};
  e.expectations = {
      expect("irreducible", true),
      expect("power_zero", true, {{"k", 2}}),
      expect("power_irreducible", false, {{"k", 2}}),
  };
  return e;
}

GalleryEntry block_a1a2(const ParamMap& p) {
  reject_unknown(p, {"u", "v"}, "block-A1A2");
  const std::vector<double> u = get_list(p, "u", {1, 2, 3});
  require_positive(u, "u");
  const std::vector<double> v = get_list(p, "v", orthogonal_dense_vector(u));
  if (v.size() != u.size()) throw InvalidParams("block-A1A2: u and v must have equal length");
  double dot = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    scale += std::abs(u[i] * v[i]);
    if (v[i] == 0.0) throw InvalidParams("block-A1A2: v must have no zero entries");
  }
  if (std::abs(dot) > 1e-12 * scale) throw InvalidParams("block-A1A2: v must be orthogonal to u");
  const auto n = static_cast<Index>(u.size());
  Eigen::MatrixXcd a1 = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  Eigen::MatrixXcd a2 = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  a1.bottomLeftCorner(n, n) = outer(u, u);
  a2.topLeftCorner(n, n) = outer(v, u);
  a2.topRightCorner(n, n) = outer(v, v);
  a2.bottomRightCorner(n, n) = outer(u, v);
  GalleryEntry e{"block-A1A2:u=" + fmt_list(u) + ",v=" + fmt_list(v), CMatrix(Eigen::MatrixXcd(a1 + a2)), {},
                 "[[v u^T, v v^T], [u u^T, u v^T]] = A1 + A2: irreducible with every power from 2 on reducible",
                 {{"A1", CMatrix(a1)}, {"A2", CMatrix(a2)}}};
  e.expectations = {
      expect("irreducible", true),
      expect("product_zero", true, {{"lhs", "A1"}, {"rhs", "A1"}}),
      expect("product_zero", true, {{"lhs", "A1"}, {"rhs", "A2"}}),
      expect("product_zero", true, {{"lhs", "A2"}, {"rhs", "A1"}}),
      expect("powers_reducible", true, {{"from", 2}, {"to", 4 * n}}),
  };
  return e;
}

GalleryEntry double_multiplicity(const ParamMap& p) {
  reject_unknown(p, {}, "double-multiplicity");
  const std::vector<double> u{1, 1, 1, 1};
  const std::vector<double> w{1, 1, 0, 0};
  const std::vector<double> z{0, 1, 1, 0};
  const std::vector<double> y{1, -1, 1, -1};
  const CMatrix x1(Eigen::MatrixXcd(outer(u, u) + outer(w, w)));
  const CMatrix x2(Eigen::MatrixXcd(outer(u, u) + outer(z, z)));
  const std::string invalid = validate_double_multiplicity(x1, x2, y);
  if (!invalid.empty()) throw InvalidParams("built-in double-multiplicity instance: " + invalid);
  Eigen::MatrixXcd xm = Eigen::MatrixXcd::Zero(8, 8);
  xm.topLeftCorner(4, 4) = x1.data();
  xm.bottomRightCorner(4, 4) = x1.data();
  xm.bottomLeftCorner(4, 4) = x2.data();
  Eigen::MatrixXcd ym = Eigen::MatrixXcd::Zero(8, 8);
  ym.topRightCorner(4, 4) = outer(y, y);
  GalleryEntry e{"double-multiplicity", CMatrix(Eigen::MatrixXcd(xm + ym)), {},
                 "X + Y with X = [[X1, O], [X2, X1]] and Y = [[O, y y^T], [O, O]]: rho has algebraic multiplicity two",
                 {{"X", CMatrix(xm)}, {"Y", CMatrix(ym)}, {"X1", x1}, {"X2", x2}}};
  e.expectations = {
      expect("product_zero", true, {{"lhs", "Y"}, {"rhs", "Y"}}),
      expect("product_zero", true, {{"lhs", "X"}, {"rhs", "Y"}}),
      expect("product_zero", true, {{"lhs", "Y"}, {"rhs", "X"}}),
      expect("irreducible", true),
      expect("nu", 2),
      expect("rho_in_spectrum", true),
      expect("rho_multiplicity", 2),
  };
  return e;
}

GalleryEntry circulant_entry(const ParamMap& p) {
  reject_unknown(p, {"theta", "theta_im", "n"}, "circulant");
  const Complex theta(get_double(p, "theta", 0.1), get_double(p, "theta_im", 0.0));
  const long long n = get_int(p, "n", 3);
  if (n < 2 || n > 512) throw InvalidParams("circulant needs 2 <= n <= 512");
  GalleryEntry e{"circulant:theta=" + fmt_param(theta.real()) + ",theta_im=" + fmt_param(theta.imag()) +
                     ",n=" + std::to_string(n),
                 circulant({theta, static_cast<Index>(n)}), {},
                 "circulant C(theta) = (1 - n theta) I + theta E", {}};
  e.expectations = {expect("weakly_stochastic", true, {{"mode", "doubly"}})};
  return e;
}

GalleryEntry a_s_family(const ParamMap& p) {
  reject_unknown(p, {"s", "n"}, "a-s-family");
  const long long s = get_int(p, "s", 3);
  const long long n = get_int(p, "n", 3);
  if (s < 2 || s > 1000) throw InvalidParams("a-s-family needs 2 <= s <= 1000");
  if (n < 2 || n > 512) throw InvalidParams("a-s-family needs 2 <= n <= 512");
  const Complex theta = std::polar(1.0 / static_cast<double>(n), kPi / static_cast<double>(s));
  GalleryEntry e{"a-s-family:s=" + std::to_string(s) + ",n=" + std::to_string(n),
                 circulant({theta, static_cast<Index>(n)}), {},
                 "A_s = C(e^(i pi / s) / n): non-real with real and nonnegative powers", {}};
  e.expectations = {expect("real", false)};
  for (long long m = 1; m <= 3; ++m) {
    e.expectations.push_back(expect("power_real", true, {{"k", 2 * m * s}}));
    if (s >= 3) e.expectations.push_back(expect("power_nonnegative", true, {{"k", 4 * m * s}}));
  }
  return e;
}

GalleryEntry rotated_nonneg(const ParamMap& p) {
  reject_unknown(p, {"h", "k", "seed", "n"}, "rotated-nonneg");
  const long long h = get_int(p, "h", 1);
  const long long k = get_int(p, "k", 3);
  const long long seed = get_int(p, "seed", 1);
  const long long n = get_int(p, "n", 4);
  if (k < 1 || k > 64) throw InvalidParams("rotated-nonneg needs 1 <= k <= 64");
  if (n < 1 || n > 64) throw InvalidParams("rotated-nonneg needs 1 <= n <= 64");
  if (seed < 0) throw InvalidParams("rotated-nonneg needs seed >= 0");
  const CMatrix base = random_nonneg_irreducible(static_cast<Index>(n), static_cast<std::uint64_t>(seed));
  const Complex phase = std::polar(1.0, 2.0 * kPi * static_cast<double>(h) / static_cast<double>(k));
  GalleryEntry e{"rotated-nonneg:h=" + std::to_string(h) + ",k=" + std::to_string(k) +
                     ",seed=" + std::to_string(seed) + ",n=" + std::to_string(n),
                 CMatrix(Eigen::MatrixXcd(phase * base.data())), {},
                 "e^(2 pi i h / k) times a seeded random nonnegative irreducible matrix", {}};
  e.expectations = {expect("nu_divides", true, {{"k", k}})};
  return e;
}

using Builder = GalleryEntry (*)(const ParamMap&);

const std::vector<std::pair<CatalogItem, Builder>>& registry() {
  static const std::vector<std::pair<CatalogItem, Builder>> r = {
      {{"rotation2", "", "[[0, 1], [-1, 0]]"}, rotation2},
      {{"example-block", "x=0.5", "[[O, ones(2)], [[1, -x], [0, 2]], O]], x in (0, 1)"}, example_block},
      {{"complex-eventually", "", "ones(3) + iV with V real nilpotent"}, complex_eventually},
      {{"neg-identity-block", "b=2;1;1;2", "diag(B, -I), B positive row-major"}, neg_identity_block},
      {{"rank-one-nilpotent", "u=1;2;3,orient=vu", "v u^T (or u v^T) with v orthogonal to u > 0"}, rank_one_nilpotent},
      {{"block-A1A2", "u=1;2;3[,v=...]", "[[v u^T, v v^T], [u u^T, u v^T]]"}, block_a1a2},
      {{"double-multiplicity", "", "8 x 8 instance with a double eigenvalue rho"}, double_multiplicity},
      {{"circulant", "theta=0.1,theta_im=0,n=3", "(1 - n theta) I + theta E"}, circulant_entry},
      {{"a-s-family", "s=3,n=3", "C(e^(i pi / s) / n)"}, a_s_family},
      {{"rotated-nonneg", "h=1,k=3,seed=1,n=4", "e^(2 pi i h / k) times random nonnegative irreducible"}, rotated_nonneg},
  };
  return r;
}

// ---- random generation ------------------------------------------------------

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  // Fixed mapping from 53 random bits so results do not depend on the
  // standard library's distribution implementation.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::vector<Index> shuffled(Index n, std::mt19937_64& rng) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

// ---- expectation helpers ----------------------------------------------------

CMatrix rho_normalized(const CMatrix& m, const ToleranceConfig& tol) {
  if (is_nilpotent(m, tol)) return m;
  const double rho = m.order() <= kMaxSpectrumOrder ? spectrum(m, tol).rho : m.max_abs();
  return rho > 0.0 ? CMatrix(Eigen::MatrixXcd(m.data() / rho)) : m;
}

bool multiset_match(std::vector<Complex> got, const std::vector<Complex>& want, double radius) {
  if (got.size() != want.size()) return false;
  for (const Complex& w : want) {
    auto best = got.end();
    double best_d = radius;
    for (auto it = got.begin(); it != got.end(); ++it) {
      const double d = std::abs(*it - w);
      if (d <= best_d) {
        best_d = d;
        best = it;
      }
    }
    if (best == got.end()) return false;
    got.erase(best);
  }
  return true;
}

std::vector<Complex> complex_from_json(const Json& j) {
  std::vector<Complex> out;
  for (const auto& z : j) out.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  return out;
}

Json search_json(const SearchResult& r) {
  return r.found() ? Json(r.k) : Json(nullptr);
}

}  // namespace

const std::vector<CatalogItem>& catalog() {
  static const std::vector<CatalogItem> items = [] {
    std::vector<CatalogItem> v;
    for (const auto& [item, fn] : registry()) v.push_back(item);
    return v;
  }();
  return items;
}

GalleryEntry build(const std::string& id, const ParamMap& params) {
  for (const auto& [item, fn] : registry()) {
    if (item.id == id) return fn(params);
  }
  throw UnknownId("unknown gallery id '" + id + "'");
}

GalleryEntry build_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string id = spec.substr(0, colon);
  ParamMap params;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string kv;
    while (std::getline(ss, kv, ',')) {
      if (kv.empty()) continue;
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw InvalidParams("gallery parameter '" + kv + "' is not key=value");
      }
      params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
  }
  return build(id, params);
}

CMatrix circulant(const CirculantSpec& spec) {
  if (spec.n < 2) throw InvalidParams("circulant needs n >= 2");
  const auto n = static_cast<double>(spec.n);
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Constant(spec.n, spec.n, spec.theta);
  c.diagonal().array() += 1.0 - n * spec.theta;
  return CMatrix(std::move(c));
}

CirculantPower circulant_power(const CirculantSpec& spec, unsigned k) {
  if (k == 0) throw InvalidParams("circulant_power needs k >= 1");
  const auto n = static_cast<double>(spec.n);
  const Complex r = std::pow(1.0 - n * spec.theta, static_cast<int>(k));
  const Complex theta_k = (1.0 - r) / n;
  return CirculantPower{circulant({theta_k, spec.n}), theta_k};
}

bool circulant_power_nonneg_criterion(const CirculantSpec& spec, unsigned k, double rel) {
  const auto n = static_cast<double>(spec.n);
  const Complex r = std::pow(1.0 - n * spec.theta, static_cast<int>(k));
  const double slack = rel * std::max(1.0, std::abs(r));
  if (std::abs(r.imag()) > slack) return false;
  return r.real() >= -1.0 / (n - 1.0) - slack && r.real() <= 1.0 + slack;
}

std::vector<double> orthogonal_dense_vector(const std::vector<double>& u) {
  const std::size_t n = u.size();
  if (n < 2) throw InvalidParams("orthogonal_dense_vector needs n >= 2");
  require_positive(u, "u");
  std::vector<double> base(n, 0.0);
  base[0] = u[1];
  base[1] = -u[0];
  const double scale = *std::max_element(u.begin(), u.end());
  double uu = 0.0;
  for (double x : u) uu += x * x;
  // Candidate dense directions: alternating ramp, ramp, squares.
  for (int variant = 0; variant < 3; ++variant) {
    std::vector<double> dense(n);
    double ud = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = static_cast<double>(i + 1);
      dense[i] = variant == 0 ? (i % 2 ? -r : r) : variant == 1 ? r : r * r;
      ud += u[i] * dense[i];
    }
    for (std::size_t i = 0; i < n; ++i) dense[i] -= ud / uu * u[i];
    for (double delta = 0.5; delta > 1e-6; delta *= 0.5) {
      std::vector<double> v(n);
      double vmax = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = base[i] + delta * scale * dense[i];
        vmax = std::max(vmax, std::abs(v[i]));
      }
      const bool dense_enough = std::all_of(v.begin(), v.end(),
                                            [&](double x) { return std::abs(x) > 1e-3 * vmax; });
      if (dense_enough) return v;
    }
  }
  throw InvalidParams("could not construct a dense vector orthogonal to u");
}

std::string validate_double_multiplicity(const CMatrix& x1, const CMatrix& x2,
                                         const std::vector<double>& y,
                                         const ToleranceConfig& tol) {
  const Index n = x1.order();
  if (x2.order() != n || static_cast<Index>(y.size()) != n) return "dimension mismatch";
  for (const CMatrix* x : {&x1, &x2}) {
    if (max_abs_diff(*x, x->transpose()) > threshold(*x, tol)) return "X_i must be symmetric";
    if (!is_nonnegative(*x, tol) || !is_real(*x, tol)) return "X_i must be real nonnegative";
    if (!is_irreducible(*x, tol)) return "X_i must be irreducible";
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(x->data().real());
    const double cut = threshold(*x, tol) * static_cast<double>(n);
    Index rank = 0;
    for (Index i = 0; i < svd.singularValues().size(); ++i) rank += svd.singularValues()(i) > cut;
    if (rank > n - 2) return "X_i must have rank <= n - 2";
    Eigen::VectorXcd yv(n);
    for (Index i = 0; i < n; ++i) yv(i) = y[static_cast<std::size_t>(i)];
    if ((x->data() * yv).cwiseAbs().maxCoeff() > cut * yv.cwiseAbs().maxCoeff()) {
      return "y must lie in both kernels";
    }
  }
  const bool has_pos = std::any_of(y.begin(), y.end(), [](double v) { return v > 0.0; });
  const bool has_neg = std::any_of(y.begin(), y.end(), [](double v) { return v < 0.0; });
  if (!has_pos || !has_neg) return "y must have entries of both signs";
  return {};
}

CMatrix random_nonneg_irreducible(Index n, std::uint64_t seed, bool primitive) {
  if (n < 1) throw InvalidParams("n must be >= 1");
  auto rng = make_rng(seed, 1);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (uniform(rng, 0.0, 1.0) < 0.35) a(i, j) = uniform(rng, 0.1, 1.0);
    }
  }
  const std::vector<Index> cycle = shuffled(n, rng);
  for (Index i = 0; i < n; ++i) {
    const Index from = cycle[static_cast<std::size_t>(i)];
    const Index to = cycle[static_cast<std::size_t>((i + 1) % n)];
    if (a(from, to) == 0.0) a(from, to) = uniform(rng, 0.1, 1.0);
  }
  if (primitive) {
    const auto i = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
    if (a(i, i) == 0.0) a(i, i) = uniform(rng, 0.1, 1.0);
  }
  return CMatrix(std::move(a));
}

CMatrix random_cyclic(Index n, Index p, std::uint64_t seed) {
  if (p < 2 || p > n) throw InvalidParams("random_cyclic needs 2 <= p <= n");
  auto rng = make_rng(seed, 2);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::vector<Index> order = shuffled(n, rng);
    std::vector<Index> cls(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) cls[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i % p;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const bool allowed = cls[static_cast<std::size_t>(j)] == (cls[static_cast<std::size_t>(i)] + 1) % p;
        if (allowed && uniform(rng, 0.0, 1.0) < 0.6) a(i, j) = uniform(rng, 0.1, 1.0);
      }
    }
    // Walking `order` visits classes 0, 1, ..., p-1, 0, ...; closing the walk
    // gives a spanning closed walk when n is a multiple of p.
    for (Index i = 0; i + 1 < n; ++i) {
      const Index from = order[static_cast<std::size_t>(i)];
      const Index to = order[static_cast<std::size_t>(i + 1)];
      if (a(from, to) == 0.0) a(from, to) = uniform(rng, 0.1, 1.0);
    }
    const CMatrix m(std::move(a));
    if (is_irreducible(m) && cyclicity_index(m).p == p) return m;
  }
  throw InvalidParams("random_cyclic: no instance found for n = " + std::to_string(n) +
                      ", p = " + std::to_string(p));
}

CMatrix random_positive(Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidParams("n must be >= 1");
  auto rng = make_rng(seed, 3);
  Eigen::MatrixXcd a(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = uniform(rng, 0.1, 1.0);
  }
  return CMatrix(std::move(a));
}

CMatrix random_real(Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidParams("n must be >= 1");
  auto rng = make_rng(seed, 4);
  Eigen::MatrixXcd a(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = uniform(rng, -1.0, 1.0);
  }
  return CMatrix(std::move(a));
}

Json to_json(const Expectation& e) {
  return Json{{"property", e.property}, {"args", e.args}, {"expected", e.expected}};
}

ClauseReport evaluate_expectation(const GalleryEntry& entry, const Expectation& e,
                                  unsigned k_max, const ToleranceConfig& tol) {
  const CMatrix& m = entry.matrix;
  const unsigned bound = k_max == 0 ? default_k_max(m.order()) : k_max;
  const std::string& prop = e.property;
  Json got;

  auto arg_k = [&](const char* key) { return e.args.at(key).get<unsigned>(); };

  if (prop == "nu") {
    got = search_json(nonneg_exponent(m, bound, tol));
  } else if (prop == "pi") {
    got = search_json(positive_exponent(m, bound, tol));
  } else if (prop == "spectrum") {
    const Spectrum s = spectrum(m, tol);
    got = complex_list(s.eigenvalues);
    const bool ok = multiset_match(s.eigenvalues, complex_from_json(e.expected), 1e-8 * (1.0 + s.rho));
    return ClauseReport{prop, ok ? ClauseReport::Status::pass : ClauseReport::Status::fail,
                        "expected " + e.expected.dump() + ", got " + got.dump()};
  } else if (prop == "rho_in_spectrum") {
    got = rho_in_spectrum(m, tol);
  } else if (prop == "irreducible") {
    got = is_irreducible(m, tol);
  } else if (prop == "real") {
    got = is_real(m, tol);
  } else if (prop == "power_irreducible") {
    got = is_irreducible(mat_power(rho_normalized(m, tol), arg_k("k")), tol);
  } else if (prop == "power_nonnegative") {
    got = is_nonnegative(mat_power(rho_normalized(m, tol), arg_k("k")), tol);
  } else if (prop == "power_real") {
    const CMatrix pk = mat_power(rho_normalized(m, tol), arg_k("k"));
    got = pk.data().imag().cwiseAbs().maxCoeff() <= 1e-10 * pk.max_abs();
  } else if (prop == "power_zero") {
    const unsigned k = arg_k("k");
    const double scale = std::pow(static_cast<double>(m.order()) * m.max_abs(), static_cast<double>(k));
    got = mat_power(m, k).max_abs() <= tol.abs_tol + tol.rel_tol * scale;
  } else if (prop == "power_scaled_ones") {
    const double scale = e.args.at("scale").get<double>();
    const CMatrix pk = mat_power(m, arg_k("k"));
    const double diff = (pk.data() - Eigen::MatrixXcd::Constant(m.order(), m.order(), scale)).cwiseAbs().maxCoeff();
    got = diff <= 1e-10 * scale * static_cast<double>(m.order());
  } else if (prop == "powers_reducible") {
    const CMatrix b = rho_normalized(m, tol);
    bool all = true;
    for (unsigned k = arg_k("from"); k <= arg_k("to"); ++k) all = all && !is_irreducible(mat_power(b, k), tol);
    got = all;
  } else if (prop == "odd_powers_not_nonnegative") {
    const CMatrix b = rho_normalized(m, tol);
    bool all = true;
    for (unsigned k = 1; k <= arg_k("to"); k += 2) all = all && !is_nonnegative(mat_power(b, k), tol);
    got = all;
  } else if (prop == "power_cycle_not_nonnegative") {
    const auto cycle = detect_power_cycle(m, bound, tol);
    got = cycle.has_value() && cycle->has_non_nonnegative_member;
  } else if (prop == "weakly_stochastic") {
    const std::string mode = e.args.at("mode").get<std::string>();
    const StochasticMode sm = mode == "row"      ? StochasticMode::row
                              : mode == "column" ? StochasticMode::column
                                                 : StochasticMode::doubly;
    got = is_weakly_stochastic(m, sm, tol);
  } else if (prop == "product_zero") {
    const CMatrix& l = entry.parts.at(e.args.at("lhs").get<std::string>());
    const CMatrix& r = entry.parts.at(e.args.at("rhs").get<std::string>());
    const double scale = static_cast<double>(m.order()) * l.max_abs() * r.max_abs();
    got = (l * r).max_abs() <= tol.abs_tol + tol.rel_tol * scale;
  } else if (prop == "rho_multiplicity") {
    const Spectrum s = spectrum(m, tol);
    got = multiplicity_near(s, s.rho, std::sqrt(tol.eig_cluster_tol) * (1.0 + s.rho));
  } else if (prop == "nu_divides") {
    const SearchResult nu = nonneg_exponent(m, bound, tol);
    got = nu.found() && arg_k("k") % nu.k == 0;
  } else {
    throw InvalidParams("unknown expectation property '" + prop + "'");
  }
  const bool ok = got == e.expected;
  std::string id = prop;
  if (!e.args.empty()) id += e.args.dump();
  return ClauseReport{id, ok ? ClauseReport::Status::pass : ClauseReport::Status::fail,
                      "expected " + e.expected.dump() + ", got " + got.dump()};
}

}  // namespace powermat
