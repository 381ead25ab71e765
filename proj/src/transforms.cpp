#include "powermat/transforms.hpp"

#include <cmath>

#include "powermat/pattern.hpp"

namespace powermat {

namespace {

enum class Needs { right, left, both };

void require_positive_triple(const EigenTriple& t, Needs needs, const ToleranceConfig& tol,
                             const char* op) {
  const bool ok = needs == Needs::right  ? is_positive(t.x, tol)
                  : needs == Needs::left ? is_positive(t.y, tol)
                                         : t.positivity == Positivity::both_positive;
  if (!ok) {
    throw HypothesisViolation(std::string(op) + " requires a positive dominant eigenvector");
  }
  if (std::abs(t.lambda1) == 0.0) {
    throw HypothesisViolation(std::string(op) + " requires a nonzero dominant eigenvalue");
  }
}

double row_residual(const Eigen::MatrixXcd& a) {
  const Eigen::VectorXcd e = Eigen::VectorXcd::Ones(a.rows());
  return (a * e - e).cwiseAbs().maxCoeff();
}

double column_residual(const Eigen::MatrixXcd& a) {
  const Eigen::VectorXcd e = Eigen::VectorXcd::Ones(a.rows());
  return (a.transpose() * e - e).cwiseAbs().maxCoeff();
}

void fill_invariants(SimilarityResult& r, const CMatrix& input, Complex lambda1,
                     const ToleranceConfig& tol, unsigned k_max) {
  const unsigned bound = k_max == 0 ? default_k_max(input.order()) : k_max;
  r.row_sum_residual = row_residual(r.transformed.data());
  r.column_sum_residual = column_residual(r.transformed.data());
  r.pattern_preserved = same_pattern(input, r.transformed, tol);
  r.nu_unscaled = nonneg_exponent(input, bound, tol);
  r.nu_input = nonneg_exponent(CMatrix(input.data() / lambda1), bound, tol);
  r.nu_transformed = nonneg_exponent(r.transformed, bound, tol);
  r.nu_preserved = r.nu_input.kind == r.nu_transformed.kind && r.nu_input.k == r.nu_transformed.k;
}

}  // namespace

std::string to_string(SimilarityResult::Kind kind) {
  switch (kind) {
    case SimilarityResult::Kind::row_stochastic:
      return "row_stochastic";
    case SimilarityResult::Kind::column_stochastic:
      return "column_stochastic";
    case SimilarityResult::Kind::doubly_stochastic:
      return "doubly_stochastic";
    case SimilarityResult::Kind::nilpotent_zero_rowsum:
      return "nilpotent_zero_rowsum";
  }
  return "?";
}

bool same_pattern(const CMatrix& a, const CMatrix& b, const ToleranceConfig& tol) {
  if (a.order() != b.order()) return false;
  const double ta = threshold(a, tol);
  const double tb = threshold(b, tol);
  for (Index i = 0; i < a.order(); ++i) {
    for (Index j = 0; j < a.order(); ++j) {
      if ((std::abs(a(i, j)) > ta) != (std::abs(b(i, j)) > tb)) return false;
    }
  }
  return true;
}

SimilarityResult row_stochastic_similar(const CMatrix& m, const EigenTriple& triple,
                                        const ToleranceConfig& tol, unsigned k_max) {
  require_positive_triple(triple, Needs::right, tol, "row_stochastic_similar");
  const Eigen::VectorXcd& x = triple.x.data();
  Eigen::MatrixXcd r = m.data();
  for (Index i = 0; i < r.rows(); ++i) {
    for (Index j = 0; j < r.cols(); ++j) r(i, j) *= x(j) / (x(i) * triple.lambda1);
  }
  SimilarityResult out{.kind = SimilarityResult::Kind::row_stochastic,
                       .transformed = CMatrix(std::move(r)),
                       .diagonal = triple.x};
  fill_invariants(out, m, triple.lambda1, tol, k_max);
  return out;
}

SimilarityResult column_stochastic_similar(const CMatrix& m, const EigenTriple& triple,
                                           const ToleranceConfig& tol, unsigned k_max) {
  require_positive_triple(triple, Needs::left, tol, "column_stochastic_similar");
  const Eigen::VectorXcd& y = triple.y.data();
  Eigen::MatrixXcd c = m.data();
  for (Index i = 0; i < c.rows(); ++i) {
    for (Index j = 0; j < c.cols(); ++j) c(i, j) *= y(i) / (y(j) * triple.lambda1);
  }
  SimilarityResult out{.kind = SimilarityResult::Kind::column_stochastic,
                       .transformed = CMatrix(std::move(c)),
                       .diagonal = triple.y};
  fill_invariants(out, m, triple.lambda1, tol, k_max);
  return out;
}

CMatrix diagonal_plus_rank_one(const CVector& x, const CVector& y) {
  const Complex ytx = (y.data().transpose() * x.data())(0);
  if (std::abs(ytx) == 0.0) throw HypothesisViolation("y^T x vanishes");
  const Eigen::VectorXcd ys = y.data() / ytx;
  const Index n = x.size();
  const Eigen::VectorXcd e = Eigen::VectorXcd::Ones(n);
  const Eigen::VectorXcd dyx = ys.cwiseProduct(x.data());
  Eigen::MatrixXcd s = (e - dyx) * ys.transpose();
  s.diagonal() += ys;
  return CMatrix(std::move(s));
}

SimilarityResult doubly_stochastic_similar(const CMatrix& m, const EigenTriple& triple,
                                           const ToleranceConfig& tol, unsigned k_max) {
  require_positive_triple(triple, Needs::both, tol, "doubly_stochastic_similar");
  const Index n = m.order();
  const Complex ytx = (triple.y.data().transpose() * triple.x.data())(0);
  const Eigen::VectorXcd y = triple.y.data() / ytx;
  const CMatrix s = diagonal_plus_rank_one(triple.x, triple.y);

  const Eigen::VectorXcd e = Eigen::VectorXcd::Ones(n);
  const double sx_res = (s.data() * triple.x.data() - e).cwiseAbs().maxCoeff();
  const double ste_res =
      (s.data().transpose() * e - static_cast<double>(n) * y).cwiseAbs().maxCoeff();
  if (sx_res > 1e-10 || ste_res > 1e-10) {
    throw HypothesisViolation("diagonal-plus-rank-one identities Sx = e, S^T e = n y failed");
  }

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(s.data());
  const double rcond = lu.rcond();
  if (!(rcond > 1e-12)) {
    throw IllConditioned("S has condition estimate above 1e12");
  }
  const Eigen::MatrixXcd s_inv = lu.inverse();
  Eigen::MatrixXcd t = (s.data() * m.data() * s_inv) / triple.lambda1;

  SimilarityResult out{.kind = SimilarityResult::Kind::doubly_stochastic,
                       .transformed = CMatrix(std::move(t)),
                       .diagonal = CVector(y),
                       .S = s};
  out.sx_residual = sx_res;
  out.ste_residual = ste_res;
  fill_invariants(out, m, triple.lambda1, tol, k_max);
  return out;
}

StochasticClassification classify_stochastic_similarity(const CMatrix& m, unsigned k_max,
                                                        const ToleranceConfig& tol) {
  StochasticClassification out;
  if (is_nilpotent(m, tol)) {
    const auto x = find_positive_kernel_vector(m, tol);
    if (!x) {
      out.reason = "rho = 0 but no positive kernel vector found";
      return out;
    }
    const Eigen::VectorXcd& d = x->data();
    Eigen::MatrixXcd l = m.data();
    for (Index i = 0; i < l.rows(); ++i) {
      for (Index j = 0; j < l.cols(); ++j) l(i, j) *= d(j) / d(i);
    }
    SimilarityResult r{.kind = SimilarityResult::Kind::nilpotent_zero_rowsum,
                       .transformed = CMatrix(std::move(l)),
                       .diagonal = *x};
    r.row_sum_residual = (r.transformed.data() * Eigen::VectorXcd::Ones(m.order()))
                             .cwiseAbs()
                             .maxCoeff();
    r.column_sum_residual = 0.0;
    r.pattern_preserved = same_pattern(m, r.transformed, tol);
    r.nu_input = nonneg_exponent(m, k_max, tol);
    r.nu_unscaled = r.nu_input;
    r.nu_transformed = nonneg_exponent(r.transformed, k_max, tol);
    r.nu_preserved =
        r.nu_input.kind == r.nu_transformed.kind && r.nu_input.k == r.nu_transformed.k;
    if (r.nu_input.found()) {
      const CMatrix mnu = mat_power(m, r.nu_input.k);
      const double scale = std::pow(static_cast<double>(m.order()) * m.max_abs(),
                                    static_cast<double>(r.nu_input.k));
      const bool zero = mnu.max_abs() <= tol.abs_tol + tol.rel_tol * scale;
      out.reason = zero ? "nilpotent branch: L e = 0 and M^nu = O"
                        : "nilpotent branch: M^nu != O (lemma violated)";
    } else {
      out.reason = "nilpotent branch: nu not found within k_max";
    }
    out.result = std::move(r);
    return out;
  }

  const SearchResult nu = nonneg_exponent(m, k_max, tol);
  if (!nu.found()) {
    out.reason = "power nonnegativity not established (nu " + nu.to_string() + ")";
    return out;
  }
  EigenTriple triple = [&] {
    try {
      return dominant_eigentriple(m, nu.k, tol);
    } catch (const AmbiguousDominant&) {
      return EigenTriple{0.0, CVector::ones(m.order()), CVector::ones(m.order())};
    }
  }();
  if (std::abs(triple.lambda1) == 0.0 || !is_positive(triple.x, tol)) {
    out.reason = "no positive dominant eigenvector";
    return out;
  }
  out.result = row_stochastic_similar(m, triple, tol, k_max);
  out.reason = "row-stochastic branch";
  return out;
}

}  // namespace powermat
