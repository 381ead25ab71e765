#include "powermat/spectral.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "powermat/pattern.hpp"

namespace powermat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Single-linkage clustering; returns a representative index per element.
std::vector<std::size_t> cluster_labels(const std::vector<Complex>& z, double radius) {
  std::vector<std::size_t> parent(z.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      if (std::abs(z[i] - z[j]) <= radius) parent[find(i)] = find(j);
    }
  }
  std::vector<std::size_t> label(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) label[i] = find(i);
  return label;
}

Eigen::VectorXcd phase_normalize(Eigen::VectorXcd v) {
  Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const double mag = std::abs(v(imax));
  if (mag == 0.0) return v;
  const Complex phase = std::conj(v(imax)) / mag;
  v *= phase / mag;
  v(imax) = Complex(v(imax).real(), 0.0);
  return v;
}

Eigen::VectorXcd inverse_iteration(const Eigen::MatrixXcd& a, Complex lambda,
                                   Eigen::VectorXcd v) {
  const Index n = a.rows();
  const double scale = 1.0 + a.cwiseAbs().maxCoeff();
  // Nudge the shift off the eigenvalue so the factorization stays usable.
  const Complex shift = lambda + Complex(1e-13 * scale, 1e-13 * scale);
  const Eigen::MatrixXcd shifted = a - shift * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  for (int it = 0; it < 6; ++it) {
    Eigen::VectorXcd w = lu.solve(v);
    const double norm = w.cwiseAbs().maxCoeff();
    if (!std::isfinite(norm) || norm == 0.0) break;
    v = w / norm;
  }
  return v;
}

}  // namespace

double principal_arg(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  if (kTwoPi - a < 1e-12) a = 0.0;
  return a;
}

Spectrum spectrum(const CMatrix& m, const ToleranceConfig& tol) {
  if (m.order() > kMaxSpectrumOrder) {
    throw InvalidParams("spectrum supports n <= 64, got n = " + std::to_string(m.order()));
  }
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m.data(), false);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("eigenvalue iteration did not converge");
  }
  std::vector<Complex> raw(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());

  double rho = 0.0;
  for (const auto& z : raw) rho = std::max(rho, std::abs(z));

  Spectrum s;
  s.cluster_radius = tol.eig_cluster_tol * (1.0 + rho);
  const auto label = cluster_labels(raw, s.cluster_radius);

  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (label[i] == i) reps.push_back(i);
  }
  for (std::size_t r : reps) {
    Complex sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (label[i] == r) {
        sum += raw[i];
        ++count;
      }
    }
    s.distinct.push_back({sum / static_cast<double>(count), count});
  }

  // Modulus descending; runs of equal modulus (within the cluster radius)
  // are then ordered by argument.
  auto& d = s.distinct;
  std::sort(d.begin(), d.end(), [](const auto& a, const auto& b) {
    return std::abs(a.value) > std::abs(b.value);
  });
  for (std::size_t lo = 0; lo < d.size();) {
    std::size_t hi = lo + 1;
    while (hi < d.size() &&
           std::abs(d[hi - 1].value) - std::abs(d[hi].value) <= s.cluster_radius) {
      ++hi;
    }
    std::sort(d.begin() + static_cast<std::ptrdiff_t>(lo),
              d.begin() + static_cast<std::ptrdiff_t>(hi), [](const auto& a, const auto& b) {
                return principal_arg(a.value) < principal_arg(b.value);
              });
    lo = hi;
  }

  s.rho = 0.0;
  for (const auto& c : d) {
    s.rho = std::max(s.rho, std::abs(c.value));
    for (int t = 0; t < c.multiplicity; ++t) s.eigenvalues.push_back(c.value);
  }
  return s;
}

EigenTriple eigentriple_for(const CMatrix& m, Complex lambda, const ToleranceConfig& tol,
                            const Eigen::VectorXcd* seed) {
  const Index n = m.order();
  const Eigen::VectorXcd start = seed ? *seed : Eigen::VectorXcd::Ones(n);
  Eigen::VectorXcd x = phase_normalize(inverse_iteration(m.data(), lambda, start));
  const Eigen::MatrixXcd at = m.data().transpose();
  Eigen::VectorXcd y = phase_normalize(inverse_iteration(at, lambda, start));

  EigenTriple t{lambda, CVector(x), CVector(y), 0.0, 0.0, Positivity::not_positive};
  t.residual_right = (m.data() * x - lambda * x).cwiseAbs().maxCoeff();
  t.residual_left = (at * y - lambda * y).cwiseAbs().maxCoeff();
  if (is_positive(t.x, tol) && is_positive(t.y, tol)) t.positivity = Positivity::both_positive;
  return t;
}

EigenTriple dominant_eigentriple(const CMatrix& m, unsigned nu, const ToleranceConfig& tol) {
  if (nu < 1) throw InvalidParams("nu must be at least 1");
  const Spectrum s = spectrum(m, tol);
  const double rho_nu = std::pow(s.rho, nu);

  std::optional<Complex> chosen;
  for (const auto& c : s.distinct) {
    if (std::abs(c.value) < s.rho - s.cluster_radius) break;  // left the periphery
    const Complex power = std::pow(c.value, static_cast<int>(nu));
    const double err = std::abs(power - rho_nu);
    if (err <= tol.eig_cluster_tol * (1.0 + rho_nu) * static_cast<double>(nu)) {
      // distinct is ordered by argument within the periphery.
      chosen = c.value;
      break;
    }
  }
  if (!chosen) {
    throw AmbiguousDominant("no maximal-modulus eigenvalue has a positive real " +
                            std::to_string(nu) + "-th power");
  }

  // Seed with the Perron vector of the nonnegative power M^nu, approximated
  // by a few normalized power iterations of I + M^nu.
  Eigen::VectorXcd seed = Eigen::VectorXcd::Ones(m.order());
  try {
    const CMatrix mnu = mat_power(m, nu);
    const double scale = mnu.max_abs();
    if (scale > 0.0) {
      const Eigen::MatrixXcd step =
          Eigen::MatrixXcd::Identity(m.order(), m.order()) + mnu.data() / scale;
      for (int it = 0; it < 20; ++it) {
        seed = step * seed;
        seed /= seed.cwiseAbs().maxCoeff();
      }
    }
  } catch (const NonFinite&) {
    seed = Eigen::VectorXcd::Ones(m.order());
  }
  return eigentriple_for(m, *chosen, tol, &seed);
}

bool rho_in_spectrum(const Spectrum& s, const ToleranceConfig& tol) {
  for (const auto& c : s.distinct) {
    if (std::abs(c.value - s.rho) <= tol.eig_cluster_tol * (1.0 + s.rho)) return true;
  }
  return false;
}

bool rho_in_spectrum(const CMatrix& m, const ToleranceConfig& tol) {
  return rho_in_spectrum(spectrum(m, tol), tol);
}

PeripheralStructure peripheral_structure(const CMatrix& m, unsigned k,
                                         const ToleranceConfig& tol) {
  if (k < 1) throw InvalidParams("k must be at least 1");
  const CMatrix mk = mat_power(m, k);
  if (!is_nonnegative(mk, tol) || !is_irreducible(mk, tol)) {
    throw HypothesisViolation("peripheral_structure requires M^k nonnegative irreducible");
  }
  const Spectrum s = spectrum(m, tol);
  PeripheralStructure out;
  std::vector<Complex> peripheral;
  for (const auto& c : s.distinct) {
    if (std::abs(c.value) >= s.rho * (1.0 - tol.eig_cluster_tol)) peripheral.push_back(c.value);
  }
  out.p = static_cast<int>(peripheral.size());
  const int pk = out.p * static_cast<int>(k);
  out.angles_ok = true;
  for (const auto& z : peripheral) {
    const double t = principal_arg(z) * pk / kTwoPi;
    int h = static_cast<int>(std::lround(t));
    if (h == 0) h = pk;
    const Complex target = std::polar(s.rho, kTwoPi * h / pk);
    if (std::abs(z - target) <= tol.eig_cluster_tol * (1.0 + s.rho)) {
      out.h.push_back(h);
    } else {
      out.h.push_back(0);
      out.angles_ok = false;
    }
  }
  return out;
}

std::optional<long long> rational_denominator(double x, double tol, long long max_den) {
  // Convergents h_n / k_n of the continued fraction of x.
  long long h_prev = 1, h = static_cast<long long>(std::floor(x));
  long long k_prev = 0, k = 1;
  double rem = x - std::floor(x);
  for (int it = 0; it < 64; ++it) {
    if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) return k;
    if (rem < 1e-15) break;
    const double inv = 1.0 / rem;
    const auto a = static_cast<long long>(std::floor(inv));
    rem = inv - static_cast<double>(a);
    const long long h_next = a * h + h_prev;
    const long long k_next = a * k + k_prev;
    if (k_next > max_den) return std::nullopt;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) return k;
  return std::nullopt;
}

std::set<long long> argument_denominators(const Spectrum& s) {
  std::set<long long> dens;
  const auto& d = s.distinct;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (std::abs(d[i].value) <= s.cluster_radius) continue;
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (std::abs(d[j].value) <= s.cluster_radius) continue;
      double frac = (principal_arg(d[i].value) - principal_arg(d[j].value)) / kTwoPi;
      frac -= std::floor(frac);
      if (1.0 - frac < 1e-12) frac = 0.0;
      if (auto den = rational_denominator(frac)) dens.insert(*den);
    }
  }
  return dens;
}

namespace {

bool is_prime(unsigned k) {
  if (k < 2) return false;
  for (unsigned d = 2; d * d <= k; ++d) {
    if (k % d == 0) return false;
  }
  return true;
}

}  // namespace

unsigned distinct_power_exponent(const Spectrum& s, const ToleranceConfig& tol) {
  const auto dens = argument_denominators(s);
  for (unsigned k = 2; k < 2000; ++k) {
    if (!is_prime(k) || dens.count(k) != 0) continue;
    const double radius = tol.eig_cluster_tol * (1.0 + std::pow(s.rho, k));
    bool distinct = true;
    for (std::size_t i = 0; i < s.distinct.size() && distinct; ++i) {
      for (std::size_t j = i + 1; j < s.distinct.size(); ++j) {
        const Complex a = std::pow(s.distinct[i].value, static_cast<int>(k));
        const Complex b = std::pow(s.distinct[j].value, static_cast<int>(k));
        if (std::abs(a - b) <= radius) {
          distinct = false;
          break;
        }
      }
    }
    if (distinct) return k;
  }
  throw ReconstructionFailure(
      "could not separate eigenvalue powers; argument differences are not resolvable at "
      "working precision");
}

}  // namespace powermat

namespace powermat {

int multiplicity_near(const Spectrum& s, Complex lambda, double radius) {
  int count = 0;
  for (const Complex& z : s.eigenvalues) count += std::abs(z - lambda) <= radius;
  return count;
}

SpectralGap spectral_gap(const Spectrum& s, Complex lambda1, const ToleranceConfig& tol) {
  SpectralGap g;
  g.lambda1 = lambda1;
  for (const auto& c : s.distinct) {
    if (std::abs(c.value - lambda1) <= s.cluster_radius) {
      g.multiplicity1 += c.multiplicity;
    } else {
      g.modulus2 = std::max(g.modulus2, std::abs(c.value));
    }
  }
  const double mod1 = std::abs(lambda1);
  g.ratio = mod1 > 0.0 ? g.modulus2 / mod1 : 1.0;
  g.strict = g.multiplicity1 == 1 && mod1 > s.cluster_radius &&
             g.modulus2 < mod1 * (1.0 - tol.eig_cluster_tol);
  return g;
}

unsigned gap_steps(double ratio, double target_err) {
  if (!(ratio >= 0.0 && ratio < 1.0)) throw InvalidParams("gap ratio must lie in [0, 1)");
  if (ratio == 0.0) return 1;
  const double p = std::ceil(std::log(target_err) / std::log(ratio));
  return static_cast<unsigned>(std::max(1.0, p));
}

bool is_nilpotent(const CMatrix& m, const ToleranceConfig& tol) {
  const Index n = m.order();
  const double scale = std::pow(static_cast<double>(n) * m.max_abs(), static_cast<double>(n));
  const CMatrix mn = mat_power(m, static_cast<unsigned>(n));
  return mn.max_abs() <= tol.abs_tol + tol.rel_tol * scale;
}

std::optional<CVector> find_positive_kernel_vector(const CMatrix& m, const ToleranceConfig& tol) {
  const Index n = m.order();
  Eigen::MatrixXd stacked(2 * n, n);
  stacked.topRows(n) = m.data().real();
  stacked.bottomRows(n) = m.data().imag();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const double cut = threshold(m, tol) * static_cast<double>(n);
  const auto& sv = svd.singularValues();
  std::vector<Index> kernel_cols;
  for (Index j = 0; j < n; ++j) {
    const double sj = j < sv.size() ? sv(j) : 0.0;
    if (sj <= cut) kernel_cols.push_back(j);
  }
  if (kernel_cols.empty()) return std::nullopt;

  const auto d = static_cast<Index>(kernel_cols.size());
  Eigen::MatrixXd basis(n, d);
  for (Index t = 0; t < d; ++t) basis.col(t) = svd.matrixV().col(kernel_cols[t]);

  auto min_entry = [&](const Eigen::VectorXd& c) { return (basis * c).minCoeff(); };

  // Coarse pass: signed basis directions plus deterministic pseudo-random ones.
  Eigen::VectorXd best = Eigen::VectorXd::Unit(d, 0);
  double best_val = min_entry(best);
  auto consider = [&](Eigen::VectorXd c) {
    const double norm = c.norm();
    if (norm == 0.0) return;
    c /= norm;
    const double v = min_entry(c);
    if (v > best_val) {
      best_val = v;
      best = c;
    }
  };
  for (Index t = 0; t < d; ++t) {
    consider(Eigen::VectorXd::Unit(d, t));
    consider(-Eigen::VectorXd::Unit(d, t));
  }
  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  auto next_uniform = [&] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) / 9007199254740992.0 * 2.0 - 1.0;
  };
  if (d > 1) {
    for (int sample = 0; sample < 256; ++sample) {
      Eigen::VectorXd c(d);
      for (Index t = 0; t < d; ++t) c(t) = next_uniform();
      consider(c);
    }
    // Refinement: projected subgradient ascent on min_i (Kc)_i over |c| = 1.
    Eigen::VectorXd c = best;
    double step = 0.5;
    for (int it = 0; it < 2000; ++it) {
      Index imin = 0;
      (basis * c).minCoeff(&imin);
      c += step * basis.row(imin).transpose();
      c /= c.norm();
      consider(c);
      step *= 0.995;
    }
  }

  Eigen::VectorXd x = basis * best;
  const double xmax = x.cwiseAbs().maxCoeff();
  if (xmax == 0.0) return std::nullopt;
  x /= xmax;
  CVector candidate(x.cast<Complex>());
  if (!is_positive(candidate, tol)) return std::nullopt;
  const double residual = (m.data() * candidate.data()).cwiseAbs().maxCoeff();
  if (residual > threshold(m, tol) * static_cast<double>(n)) return std::nullopt;
  return candidate;
}

}  // namespace powermat
