// Acceptance suite: one PASS/FAIL line per criterion. Library results are
// compared against the reference computations in oracles.hpp.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "powermat/exponents.hpp"
#include "powermat/gallery.hpp"
#include "powermat/pattern.hpp"
#include "powermat/spectral.hpp"
#include "powermat/theorems.hpp"
#include "powermat/transforms.hpp"
#include "suite.hpp"

using namespace powermat;
using Status = ClauseReport::Status;
using oracle::Mat;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  int problems = 0;

  /// Records a failed check; only the first few are kept in the detail line.
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (problems++ < 3) detail << (problems > 1 ? "; " : "") << what;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const CMatrix& example_block() {
  static const CMatrix m = build("example-block").matrix;
  return m;
}

double oracle_rho(const Mat& m) {
  double r = 0.0;
  for (const auto& z : oracle::eigenvalues(m)) r = std::max(r, std::abs(z));
  return r;
}

bool no_fail(const std::vector<ClauseReport>& clauses, Outcome& o, const std::string& where) {
  bool ok = true;
  for (const auto& c : clauses) {
    if (c.status == Status::fail) {
      o.expect(false, where + " " + c.clause_id + ": " + c.detail);
      ok = false;
    }
  }
  return ok;
}

Status status_of(const std::vector<ClauseReport>& clauses, const std::string& id) {
  for (const auto& c : clauses) {
    if (c.clause_id == id) return c.status;
  }
  return Status::inconclusive;
}

// 1 -----------------------------------------------------------------------------
void example_block_criterion(Outcome& o) {
  const CMatrix& a = example_block();
  const double r = std::sqrt(2.5);
  const Spectrum s = spectrum(a);
  o.expect(oracle::same_multiset(s.eigenvalues, {r, -r, 0.0, 0.0}, 1e-8), "spectrum mismatch");
  // Exact identities fixing the multiset: A^2 (A^2 - 2.5 I) = O, tr A = 0,
  // tr A^2 = 5, and A^2 has rank 2.
  const Mat sq = a.data() * a.data();
  const Mat id = Mat::Identity(4, 4);
  o.expect((sq * (sq - 2.5 * id)).cwiseAbs().maxCoeff() <= 1e-12 && std::abs(a.data().trace()) <= 1e-12 &&
               std::abs(sq.trace() - 5.0) <= 1e-12 &&
               Eigen::FullPivLU<Mat>(sq).rank() == 2,
           "reference identities fail");
  const SearchResult nu = nonneg_exponent(a, 64);
  o.expect(nu.found() && nu.k == 2, "nu = " + nu.to_string());
  o.expect(!oracle::nonneg(a.data()) && oracle::nonneg(oracle::naive_power(a.data(), 2)),
           "reference nu != 2");
  const Mat a2 = oracle::naive_power(a.data(), 2);
  const Mat a3 = oracle::naive_power(a.data(), 3);
  o.expect(!oracle::irreducible(oracle::pattern(a2)) && !is_irreducible(mat_power(a, 2)),
           "A^2 not reducible");
  o.expect(oracle::nonneg(a3) && oracle::irreducible(oracle::pattern(a3)) &&
               least_irreducible_nonneg_power(a, 64).k == 3,
           "A^3 not nonnegative irreducible");
  const auto clauses = verify_power_nonneg_theorem(a, 64);
  o.expect(status_of(clauses, "T2.iv") == Status::pass, "T2.iv did not pass");
  no_fail(clauses, o, "example-block");
  o.detail << (o.ok ? "sigma = {+-sqrt(2.5), 0, 0}, nu = 2, k = 3, T2.iv pass" : "");
}

// 2 -----------------------------------------------------------------------------
void rotation_criterion(Outcome& o) {
  const CMatrix a = CMatrix::from_real({{0, 1}, {-1, 0}});
  const SearchResult nu = nonneg_exponent(a, 64);
  o.expect(nu.found() && nu.k == 4, "nu = " + nu.to_string());
  const Spectrum s = spectrum(a);
  o.expect(oracle::same_multiset(s.eigenvalues, {Complex(0, 1), Complex(0, -1)}, 1e-12),
           "spectrum mismatch");
  o.expect(!rho_in_spectrum(s), "rho reported in spectrum");
  const CertificateOutcome cert = certify_eventually_nonneg(a, 64);
  o.expect(!cert.certificate.has_value(), "certificate emitted");
  const auto cycle = detect_power_cycle(a, 64);
  o.expect(cycle && cycle->start == 1 && cycle->period == 4 && cycle->has_non_nonnegative_member,
           "power cycle not detected");
  const Mat id = Mat::Identity(2, 2);
  const std::vector<Mat> expected = {a.data(), -id, -a.data(), id};
  for (unsigned k = 1; k <= 8; ++k) {
    o.expect((oracle::naive_power(a.data(), k) - expected[(k - 1) % 4]).cwiseAbs().maxCoeff() == 0.0,
             "A^" + std::to_string(k) + " outside {A, -I, -A, I}");
  }
  o.detail << (o.ok ? "nu = 4, sigma = {i, -i}, cycle {A, -I, -A, I}, no certificate" : "");
}

// 3 -----------------------------------------------------------------------------
void circulant_criterion(Outcome& o) {
  // Grid in z = 1 - n theta: 14 real values, and 6 complex values with
  // |z| >= 1 and arguments pi p / q, so z^k is either real or far from it.
  std::vector<Complex> zs;
  for (int j = 0; j < 14; ++j) zs.push_back(1.7 - 0.2 * j);
  for (const auto& [r, frac] : std::vector<std::pair<double, double>>{
           {1.0, 1.0 / 4}, {1.0, 2.0 / 3}, {1.05, 1.0 / 5}, {1.0, 1.0 / 6}, {1.02, 3.0 / 8}, {1.0, 1.0 / 2}}) {
    zs.push_back(std::polar(r, std::numbers::pi * frac));
  }
  double worst = 0.0;
  int agreements = 0;
  for (Index n = 2; n <= 8; ++n) {
    for (const Complex& z0 : zs) {
      const Complex theta = (1.0 - z0) / static_cast<double>(n);
      const CirculantSpec spec{theta, n};
      const Mat ref = (1.0 - static_cast<double>(n) * theta) * Mat::Identity(n, n) +
                      theta * Mat::Ones(n, n);
      const CMatrix c = circulant(spec);
      o.expect((c.data() - ref).cwiseAbs().maxCoeff() <= 1e-15, "C(theta) construction");
      Mat p = Mat::Identity(n, n);
      const double z = std::abs(1.0 - static_cast<double>(n) * theta);
      for (unsigned k = 1; k <= 40; ++k) {
        p = p * ref;
        const CirculantPower cp = circulant_power(spec, k);
        const double err = (p - cp.closed_form.data()).cwiseAbs().maxCoeff();
        const double bound = 1e-12 * std::pow(1.0 + z, static_cast<double>(k));
        worst = std::max(worst, err / bound);
        o.expect(err <= bound, "closed form err " + fmt(err) + " at n=" + std::to_string(n) +
                                   ", k=" + std::to_string(k));
        const bool crit = circulant_power_nonneg_criterion(spec, k);
        // Same relative scale as the criterion's own slack.
        const bool actual = is_nonnegative(cp.closed_form, ToleranceConfig{1e-12, 1e-12, 1e-8});
        o.expect(crit == actual, "criterion disagrees at n=" + std::to_string(n) +
                                     ", k=" + std::to_string(k));
        agreements += crit == actual;
      }
    }
  }
  if (o.ok) {
    o.detail << "7 orders x 20 grid points x 40 powers, worst err/bound " << fmt(worst)
             << ", criterion agreed " << agreements << " times";
  }
}

// 4 -----------------------------------------------------------------------------
void a_s_criterion(Outcome& o) {
  double min_entry = 1.0;
  for (int s = 3; s <= 6; ++s) {
    for (int n = 3; n <= 5; ++n) {
      const CMatrix a = build_from_spec("a-s-family:s=" + std::to_string(s) + ",n=" + std::to_string(n)).matrix;
      const Complex theta = std::polar(1.0, std::numbers::pi / s) / static_cast<double>(n);
      const Mat ref = (1.0 - static_cast<double>(n) * theta) * Mat::Identity(n, n) +
                      theta * Mat::Ones(n, n);
      o.expect((a.data() - ref).cwiseAbs().maxCoeff() <= 1e-15, "A_s construction");
      o.expect(!oracle::real(a.data(), 1e-10) && !is_real(a), "A_s is real");
      for (int m = 1; m <= 3; ++m) {
        const std::string at = " (s=" + std::to_string(s) + ", n=" + std::to_string(n) +
                               ", m=" + std::to_string(m) + ")";
        const Mat p2 = oracle::naive_power(ref, static_cast<unsigned>(2 * m * s));
        o.expect(oracle::real(p2, 1e-10), "A^(2ms) not real" + at);
        const Mat p4 = oracle::naive_power(ref, static_cast<unsigned>(4 * m * s));
        o.expect(oracle::nonneg(p4) && is_nonnegative(mat_power(a, static_cast<unsigned>(4 * m * s))),
                 "A^(4ms) not nonnegative" + at);
        if (s == 3) min_entry = std::min(min_entry, p4.real().minCoeff());
      }
    }
  }
  if (o.ok) o.detail << "36 cases; s = 3 boundary smallest entry " << fmt(min_entry);
}

// 5 -----------------------------------------------------------------------------
void cesaro_criterion(Outcome& o) {
  std::vector<std::pair<std::string, CMatrix>> cases = {
      {"example-block", example_block()},
      {"ones2", CMatrix::ones(2)},
      {"ones3", CMatrix::ones(3)},
      {"neg-ones2", CMatrix(-CMatrix::ones(2).data())},
      {"i-ones3", CMatrix(CMatrix::ones(3).data() * Complex(0, 1))},
  };
  const auto rnd = suite::random_nonneg();
  for (std::size_t i = 0; i < rnd.size(); ++i) cases.push_back({"random-" + std::to_string(i), rnd[i]});

  std::vector<unsigned> checkpoints;
  for (unsigned K = 1000; K <= 64000; K *= 2) checkpoints.push_back(K);
  checkpoints.push_back(100000);
  double worst = 0.0;
  for (const auto& [name, m] : cases) {
    const SearchResult nu = nonneg_exponent(m, default_k_max(m.order()));
    const EigenTriple t = dominant_eigentriple(m, nu.k);
    const auto errs = cesaro_errors(m, t.lambda1, checkpoints);
    worst = std::max(worst, errs.back());
    o.expect(errs.back() <= 1e-3, name + ": err(1e5) = " + fmt(errs.back()));
    for (std::size_t j = 0; j + 2 < errs.size(); ++j) {
      o.expect(errs[j + 1] <= 0.75 * errs[j] + 1e-12, name + ": no halving at K = " +
                                                          std::to_string(checkpoints[j]));
    }
    const CesaroResult r = cesaro_limit(m, t.lambda1, 1000);
    const Mat target = oracle::rank_one_limit(oracle::eigenpair_near(m.data(), t.lambda1));
    o.expect((r.target.data() - target).cwiseAbs().maxCoeff() <= 1e-8, name + ": limit differs");
    o.expect(oracle::positive(target), name + ": limit not positive");
    Mat sum = Mat::Zero(m.order(), m.order());
    Mat p = Mat::Identity(m.order(), m.order());
    const Mat b = m.data() / t.lambda1;
    for (unsigned s = 0; s <= 1000; ++s) {
      sum += p;
      p = p * b;
    }
    const double ref_err = (sum / 1001.0 - target).cwiseAbs().maxCoeff();
    o.expect(std::abs(ref_err - r.err) <= 1e-9, name + ": err(1000) " + fmt(r.err) +
                                                    " vs reference " + fmt(ref_err));
  }
  if (o.ok) o.detail << cases.size() << " matrices, worst err(1e5) " << fmt(worst);
}

// 6 -----------------------------------------------------------------------------
void power_positive_criterion(Outcome& o) {
  double worst = 0.0;
  int instances = 0;
  const auto pos = suite::random_positive();
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (int h = 0; h < 3; ++h) {
      const CMatrix a = suite::rotate(pos[i], h, 3);
      const std::string name = "positive-" + std::to_string(i) + "-h" + std::to_string(h);
      ++instances;
      const auto clauses = verify_power_positive_theorem(a, default_k_max(a.order()));
      o.expect(status_of(clauses, "T3.equiv") == Status::pass, name + ": gap/convergence mismatch");
      no_fail(clauses, o, name);
      const EigenTriple t = dominant_eigentriple(a, nonneg_exponent(a, 64).k);
      const PowerLimitCheck pl = power_limit_check(a, t);
      const oracle::Perron ref = oracle::eigenpair_near(a.data(), t.lambda1);
      const double rho = oracle_rho(a.data());
      o.expect(std::abs(std::abs(ref.lambda) - rho) <= 1e-10 * (1 + rho), name + ": lambda1 not dominant");
      const Mat bp = oracle::naive_power(a.data() / ref.lambda, pl.p_star);
      const double err = (bp - oracle::rank_one_limit(ref)).cwiseAbs().maxCoeff();
      worst = std::max(worst, err);
      o.expect(err <= 1e-6, name + ": err " + fmt(err) + " at p* = " + std::to_string(pl.p_star));
    }
  }
  if (o.ok) o.detail << instances << " instances, worst err at p* " << fmt(worst);
}

// 7 -----------------------------------------------------------------------------
bool certificate_sound(const CMatrix& m, const EventualCertificate& c, Outcome& o,
                       const std::string& name) {
  const Mat a = m.data();
  const double rho = oracle_rho(a);
  const Mat b = rho > 0.0 ? Mat(a / rho) : a;
  bool ok = true;
  auto check = [&](bool cond, const std::string& what) {
    if (!cond) o.expect(false, name + ": " + what);
    ok = ok && cond;
  };
  check(std::gcd(c.nu_prime, c.k_prime) == 1, "nu', k' not coprime");
  check(c.F == oracle::frobenius_brute(c.nu_prime, c.k_prime), "F wrong");
  check(oracle::nonneg(oracle::naive_power(b, c.nu)), "A^nu not nonnegative");
  check(oracle::nonneg(oracle::naive_power(b, c.k)), "A^k not nonnegative");
  const Mat bq = oracle::naive_power(b, c.q);
  const long long first = std::max<long long>(c.F + 1, 1);
  check(c.verified_window.size() == static_cast<std::size_t>(c.nu_prime * c.k_prime),
        "window length");
  for (long long m_exp = first; m_exp < first + 3LL * c.nu_prime * c.k_prime; ++m_exp) {
    check(oracle::representable(m_exp, c.nu_prime, c.k_prime), "m not representable");
    check(oracle::nonneg(oracle::naive_power(bq, static_cast<unsigned>(m_exp))),
          "(A^q)^" + std::to_string(m_exp) + " not nonnegative");
  }
  for (std::size_t j = 0; j < c.verified_window.size(); ++j) {
    check(c.verified_window[j] == first + static_cast<long long>(j), "window not consecutive");
  }
  return ok;
}

void certificate_criterion(Outcome& o) {
  const CertificateOutcome eb = certify_eventually_nonneg(example_block(), 64);
  o.expect(eb.certificate.has_value(), "example-block: no certificate (" + eb.reason + ")");
  if (eb.certificate) {
    const auto& c = *eb.certificate;
    o.expect(c.nu == 2 && c.k == 3 && c.q == 1 && c.F == 1, "example-block: (nu,k,q,F) wrong");
    o.expect(c.verified_window == std::vector<unsigned>{2, 3, 4, 5, 6, 7}, "example-block: window");
  }
  int certified = 0;
  for (const auto& [id, m] : suite::all()) {
    const CertificateOutcome r = certify_eventually_nonneg(m, default_k_max(m.order()));
    if (!r.certificate) continue;
    ++certified;
    certificate_sound(m, *r.certificate, o, id);
  }
  if (o.ok) {
    o.detail << "example-block (2,3,1,1) window 2..7; " << certified
             << " suite certificates brute-force sound";
  }
}

// 8 -----------------------------------------------------------------------------
std::optional<unsigned> reference_nu(const Mat& m, unsigned k_max) {
  Mat p = Mat::Identity(m.rows(), m.cols());
  for (unsigned k = 1; k <= k_max; ++k) {
    p = p * m;
    if (oracle::nonneg(p)) return k;
  }
  return std::nullopt;
}

void transforms_criterion(Outcome& o) {
  int applied = 0, skipped_ill = 0;
  for (const auto& [id, m] : suite::all()) {
    const unsigned k_max = default_k_max(m.order());
    const SearchResult nu = nonneg_exponent(m, k_max);
    if (!nu.found() || is_nilpotent(m)) continue;
    std::optional<EigenTriple> t;
    try {
      t = dominant_eigentriple(m, nu.k);
    } catch (const AmbiguousDominant&) {
      continue;
    }
    if (t->positivity != Positivity::both_positive) continue;
    ++applied;
    const double n = static_cast<double>(m.order());
    const Mat ones = Mat::Ones(m.order(), 1);
    const auto in_pattern = oracle::pattern(m.data());
    const auto nu_scaled = reference_nu(m.data() / t->lambda1, k_max);

    const SimilarityResult row = row_stochastic_similar(m, *t, {}, k_max);
    const double row_res = (row.transformed.data() * ones - ones).cwiseAbs().maxCoeff();
    o.expect(row_res <= 1e-10 * n, id + ": row sums " + fmt(row_res));
    o.expect(oracle::pattern(row.transformed.data()) == in_pattern, id + ": R pattern");
    o.expect(reference_nu(row.transformed.data(), k_max) == nu_scaled, id + ": nu(R)");

    const SimilarityResult col = column_stochastic_similar(m, *t, {}, k_max);
    const double col_res = (col.transformed.data().transpose() * ones - ones).cwiseAbs().maxCoeff();
    o.expect(col_res <= 1e-10 * n, id + ": column sums " + fmt(col_res));
    o.expect(oracle::pattern(col.transformed.data()) == in_pattern, id + ": C pattern");
    o.expect(reference_nu(col.transformed.data(), k_max) == nu_scaled, id + ": nu(C)");

    try {
      const SimilarityResult d = doubly_stochastic_similar(m, *t, {}, k_max);
      const Mat& tm = d.transformed.data();
      o.expect((tm * ones - ones).cwiseAbs().maxCoeff() <= 1e-10 * n, id + ": Te != e");
      o.expect((tm.transpose() * ones - ones).cwiseAbs().maxCoeff() <= 1e-10 * n, id + ": T^Te != e");
      const Mat& s = d.S->data();
      const oracle::Vec x = t->x.data();
      const oracle::Vec y = t->y.data() / (t->y.data().transpose() * x)(0, 0);
      o.expect((s * x - ones).cwiseAbs().maxCoeff() <= 1e-10, id + ": Sx != e");
      o.expect((s.transpose() * ones - n * y).cwiseAbs().maxCoeff() <= 1e-10, id + ": S^Te != ny");
    } catch (const IllConditioned&) {
      ++skipped_ill;
    }
  }
  if (o.ok) {
    o.detail << applied << " applicable suite matrices";
    if (skipped_ill > 0) o.detail << ", " << skipped_ill << " ill-conditioned S skipped";
  }
}

// 9 -----------------------------------------------------------------------------
void irr_criterion(Outcome& o) {
  const auto cyc = suite::random_cyclic();
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    const std::string name = "cyclic-" + std::to_string(i);
    const auto pattern = oracle::pattern(cyc[i].data());
    const long long p = oracle::period(pattern);
    o.expect(p >= 2, name + ": reference period " + std::to_string(p));
    const IrreducibleSequenceResult r = check_irreducible_power_sequence(cyc[i], 5);
    o.expect(r.p == p, name + ": period " + std::to_string(r.p) + " vs " + std::to_string(p));
    for (const auto& c : r.reports) o.expect(c.status == Status::pass, name + ": " + c.detail);
    for (long long m = 0; m <= 5; ++m) {
      const auto e = static_cast<std::uint64_t>(m * r.s * r.p + 1);
      o.expect(oracle::irreducible(oracle::bool_power(pattern, e)),
               name + ": A^" + std::to_string(e) + " reducible");
    }
  }
  if (o.ok) o.detail << cyc.size() << " matrices with p >= 2, m = 0..5";
}

// 10 ----------------------------------------------------------------------------
void mtype_criterion(Outcome& o) {
  std::vector<std::pair<std::string, CMatrix>> cases = {{"ones2", CMatrix::ones(2)},
                                                       {"example-block", example_block()}};
  for (int i = 0; i < 10; ++i) {
    const CMatrix base = random_nonneg_irreducible(2 + i % 6, 400 + static_cast<std::uint64_t>(i));
    cases.push_back({"rotated-" + std::to_string(i), suite::rotate(base, i % 3, 3)});
  }
  std::size_t fewest = 1000000;
  for (const auto& [name, m] : cases) {
    const SearchResult k = least_irreducible_nonneg_power(m, 64);
    o.expect(k.found(), name + ": no irreducible nonnegative power");
    if (!k.found()) continue;
    const MTypeScanResult r = m_type_scan(m, k.k);
    fewest = std::min(fewest, r.witnesses.size());
    o.expect(!r.witnesses.empty(), name + ": no witness");
    for (const Complex& sigma : r.witnesses) {
      const Mat z = (Mat::Identity(m.order(), m.order()) - m.data() / sigma).inverse();
      o.expect(oracle::positive(Mat(z.real().cast<Complex>())), name + ": witness not positive");
    }
  }
  const auto z = resolvent_real_part(CMatrix::ones(2), 3.0);
  const Mat hand = Mat::Identity(2, 2) + Mat::Ones(2, 2);
  o.expect(z && (z->data() - hand).cwiseAbs().maxCoeff() <= 1e-12, "ones2 at sigma = 3 != I + ones");
  const MTypeScanResult r = m_type_scan(CMatrix::ones(2), 1);
  bool has3 = false;
  for (const Complex& s : r.witnesses) has3 = has3 || std::abs(s - 3.0) <= 1e-12;
  o.expect(has3, "sigma = 3 not a grid witness for ones2");
  if (o.ok) o.detail << cases.size() << " matrices, each with >= " << fewest << " witnesses; sigma = 3 hand value";
}

// 11 ----------------------------------------------------------------------------
void real_criterion(Outcome& o) {
  const CMatrix neg = CMatrix(-CMatrix::ones(2).data());
  std::vector<std::pair<std::string, CMatrix>> cases = {
      {"ones2", CMatrix::ones(2)}, {"neg-ones2", neg}, {"example-block", example_block()}};
  const auto pos = suite::random_positive(20, 500);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    cases.push_back({"real-" + std::to_string(i), i % 2 ? CMatrix(-pos[i].data()) : pos[i]});
  }
  for (const auto& [name, m] : cases) {
    const auto clauses = check_real_equivalences(m, 64);
    no_fail(clauses, o, name);
    for (const char* id : {"C6", "C7"}) {
      o.expect(status_of(clauses, id) == Status::pass, name + ": " + id + " not pass");
    }
  }
  o.expect(positive_exponent(neg, 64).found(), "-ones2 not power positive");
  o.expect(!eventually_positive(neg).value, "-ones2 classified eventually positive");
  for (unsigned k = 1; k <= 41; ++k) {
    const Mat p = oracle::naive_power(neg.data(), k);
    o.expect(oracle::positive(k % 2 ? Mat(-p) : p), "(-J)^k sign pattern");
  }
  if (o.ok) o.detail << cases.size() << " real matrices; -ones2 power positive, not eventually positive";
}

// 12 ----------------------------------------------------------------------------
void oracle_criterion(Outcome& o) {
  double worst_power = 0.0;
  for (int i = 0; i < 20; ++i) {
    const CMatrix re = random_real(5, 600 + static_cast<std::uint64_t>(i));
    const CMatrix im = random_real(5, 700 + static_cast<std::uint64_t>(i));
    const CMatrix a(re.data() + Complex(0, 1) * im.data());
    for (unsigned k : {1u, 2u, 3u, 7u, 16u, 31u}) {
      const Mat ref = oracle::naive_power(a.data(), k);
      const double err = (mat_power(a, k).data() - ref).cwiseAbs().maxCoeff() /
                         std::max(1.0, oracle::max_abs(ref));
      worst_power = std::max(worst_power, err);
      o.expect(err <= 1e-10, "mat_power rel err " + fmt(err));
    }
  }
  int spectra = 0;
  for (int i = 0; i < 20; ++i) {
    const Index n = 2 + i % 5;
    const CMatrix a = random_real(n, 800 + static_cast<std::uint64_t>(i));
    const Spectrum s = spectrum(a);
    for (unsigned k = 1; k <= 5; ++k) {
      std::vector<Complex> powered;
      for (const Complex& z : s.eigenvalues) powered.push_back(std::pow(z, static_cast<int>(k)));
      const Spectrum sk = spectrum(mat_power(a, k));
      o.expect(oracle::same_multiset(sk.eigenvalues, powered, 1e-6 * (1.0 + std::pow(s.rho, k))),
               "spectral mapping n=" + std::to_string(n) + ", k=" + std::to_string(k));
      ++spectra;
    }
  }
  int pairs = 0;
  auto check_pair = [&](std::int64_t a, std::int64_t b) {
    ++pairs;
    const FrobeniusPair fp = frobenius_pair(a, b);
    o.expect(fp.F == oracle::frobenius_brute(a, b),
             "F(" + std::to_string(a) + "," + std::to_string(b) + ")");
    for (const auto& w : fp.witnesses) {
      o.expect(w.coef_a >= 0 && w.coef_b >= 0 && w.coef_a * a + w.coef_b * b == w.m, "witness");
    }
  };
  for (std::int64_t a = 1; a <= 15; ++a) {
    for (std::int64_t b = 1; b <= 15; ++b) {
      if (std::gcd(a, b) == 1) check_pair(a, b);
    }
  }
  for (const auto& [id, m] : suite::all()) {
    const CertificateOutcome r = certify_eventually_nonneg(m, default_k_max(m.order()));
    if (r.certificate) check_pair(r.certificate->nu_prime, r.certificate->k_prime);
  }
  if (o.ok) {
    o.detail << "mat_power worst rel err " << fmt(worst_power) << "; " << spectra
             << " spectral mappings; " << pairs << " Frobenius pairs";
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"example-block spectrum, exponents and coprime clause", example_block_criterion},
      {"rotation matrix exponents, spectrum and power cycle", rotation_criterion},
      {"circulant closed form and nonnegativity criterion", circulant_criterion},
      {"A_s family reality and nonnegativity of powers", a_s_criterion},
      {"Cesaro averages converge to the rank-one limit", cesaro_criterion},
      {"power-positive limit at the gap-derived step", power_positive_criterion},
      {"eventual nonnegativity certificates", certificate_criterion},
      {"stochastic similarity transforms", transforms_criterion},
      {"irreducible power sequence", irr_criterion},
      {"M-type resolvent scan", mtype_criterion},
      {"real-matrix equivalences", real_criterion},
      {"oracle equivalences", oracle_criterion},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << " ("
              << fmt(secs) << " s): " << o.detail.str() << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
