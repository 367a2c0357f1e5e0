#pragma once

// Qplectic cone theories and their affine bijection onto qplexes, plus
// the Jordan-algebra foil arithmetic: anticommutator and spin-factor
// products, formal-reality spot checks, parameter counts, polygonal
// numbers, and a real equiangular-line search.

#include "qplex/operator_core.hpp"
#include "qplex/optim.hpp"
#include "qplex/qplex.hpp"

#include <vector>

namespace qplex {

struct ConeTheory {
  int N = 0;
  QplexParams params;
  RealMatrix basis;       // columns e_i, Gram 1 + NL(delta - 1)
  RealVector order_unit;  // <I, I> = 1/(1 + L - NL)
  RealVector center;      // c = I / <I, I> = (1/N) sum e_k
  RealMatrix dual_basis;  // columns, biorthogonal to the basis
};

// Concrete realization in R^N via the diagonal-plus-flat ansatz
// e_i = a u_i + b 1 with a = sqrt(NL); the Gram determines the
// configuration up to isometry.
inline ConeTheory build_cone(const QplexParams& params) {
  const int n = params.N;
  const double nl = n * params.L;
  if (params.L <= 0.0 || nl >= 1.0)
    throw std::invalid_argument("build_cone: need 0 < L < 1/N (L = 0 Gram is singular)");
  ConeTheory cone;
  cone.N = n;
  cone.params = params;

  const double a = std::sqrt(nl);
  // solve N b^2 + 2 a b - (1 - NL) = 0 for the flat coefficient
  const double b = (-a + std::sqrt(nl + n * (1.0 - nl))) / n;
  cone.basis = RealMatrix::Constant(n, n, b);
  cone.basis.diagonal().array() += a;

  const double iota_sq = 1.0 / (1.0 + params.L - nl);  // <I, I>
  cone.center = cone.basis.rowwise().sum() / n;
  cone.order_unit = iota_sq * cone.center;

  cone.dual_basis.resize(n, n);
  const double shrink = (1.0 - nl) * iota_sq;
  for (int i = 0; i < n; ++i)
    cone.dual_basis.col(i) = (cone.basis.col(i) - shrink * cone.center) / nl;
  return cone;
}

// f(v)_i = (1 - NL) <dual_i, v> + L for v on the normalized hyperplane.
inline ProbVector f_map(const ConeTheory& cone, const RealVector& v) {
  if (v.size() != cone.N) throw std::invalid_argument("f_map: dimension mismatch");
  if (std::abs(cone.order_unit.dot(v) - 1.0) > 1e-10)
    throw std::invalid_argument("f_map: v is not on the normalized hyperplane");
  const double nl = cone.N * cone.params.L;
  return (1.0 - nl) * (cone.dual_basis.transpose() * v).array() + cone.params.L;
}

// v = sum_j (p_j - L)/(1 - NL) e_j; exact inverse of f_map.
inline RealVector f_inverse(const ConeTheory& cone, const ProbVector& p) {
  if (p.size() != cone.N) throw std::invalid_argument("f_inverse: dimension mismatch");
  const double nl = cone.N * cone.params.L;
  RealVector coeffs = (p.array() - cone.params.L) / (1.0 - nl);
  return cone.basis * coeffs;
}

// (x y + y x)/2 on Hermitian matrices.
inline ComplexMatrix jordan_product(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw std::invalid_argument("jordan_product: dimension mismatch");
  if ((x - x.adjoint()).cwiseAbs().maxCoeff() > 1e-10 ||
      (y - y.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("jordan_product: inputs must be Hermitian");
  return 0.5 * (x * y + y * x);
}

// Element of the spin factor R^d + R.
struct SpinFactorElement {
  RealVector v;
  double alpha = 0.0;
};

// (v, alpha) o (w, beta) = (alpha w + beta v, v.w + alpha beta)
inline SpinFactorElement spin_factor_product(const SpinFactorElement& a,
                                             const SpinFactorElement& b) {
  if (a.v.size() != b.v.size())
    throw std::invalid_argument("spin_factor_product: vector length mismatch");
  return SpinFactorElement{a.alpha * b.v + b.alpha * a.v, a.v.dot(b.v) + a.alpha * b.alpha};
}

// Formal reality on an instance: if sum x_k o x_k vanishes, every x_k
// must vanish.
inline bool formally_real_check(const std::vector<ComplexMatrix>& xs) {
  if (xs.empty()) return true;
  ComplexMatrix sum = ComplexMatrix::Zero(xs[0].rows(), xs[0].cols());
  for (const auto& x : xs) sum += jordan_product(x, x);
  if (sum.cwiseAbs().maxCoeff() >= 1e-12) return true;  // hypothesis not triggered
  for (const auto& x : xs)
    if (x.cwiseAbs().maxCoeff() >= 1e-8) return false;
  return true;
}

inline bool formally_real_check(const std::vector<SpinFactorElement>& xs) {
  if (xs.empty()) return true;
  SpinFactorElement sum{RealVector::Zero(xs[0].v.size()), 0.0};
  for (const auto& x : xs) {
    SpinFactorElement sq = spin_factor_product(x, x);
    sum.v += sq.v;
    sum.alpha += sq.alpha;
  }
  double norm = std::sqrt(sum.v.squaredNorm() + sum.alpha * sum.alpha);
  if (norm >= 1e-12) return true;
  for (const auto& x : xs)
    if (std::sqrt(x.v.squaredNorm() + x.alpha * x.alpha) >= 1e-8) return false;
  return true;
}

enum class JordanFamily { Real, Complex, Quaternionic };

// Real parameters in a d x d self-adjoint matrix over each division
// algebra; matches polygonal_number at q = 1, 2, 4.
inline int jordan_param_count(JordanFamily family, int d) {
  if (d < 1) throw std::invalid_argument("jordan_param_count: d must be >= 1");
  switch (family) {
    case JordanFamily::Real: return d * (d + 1) / 2;
    case JordanFamily::Complex: return d * d;
    case JordanFamily::Quaternionic: return d * (2 * d - 1);
  }
  throw std::invalid_argument("jordan_param_count: unknown family");
}

struct EquiangularSearchResult {
  std::vector<RealVector> lines;  // unit vectors
  double common_cos_sq = 0.0;     // co-optimized mu
  double objective = 0.0;         // sum of squared deviations of (v_j.v_k)^2 from mu
  double max_dev = 0.0;
  bool success = false;
};

namespace detail {

struct EquiangularObjective {
  int d, n;

  std::vector<RealVector> unit_vectors(const Eigen::VectorXd& x) const {
    std::vector<RealVector> vs(n);
    for (int j = 0; j < n; ++j) vs[j] = x.segment(j * d, d).normalized();
    return vs;
  }

  double mu_star(const std::vector<RealVector>& vs) const {
    double sum = 0.0;
    int pairs = 0;
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k, ++pairs) {
        double g = vs[j].dot(vs[k]);
        sum += g * g;
      }
    return pairs ? sum / pairs : 0.0;
  }

  double value(const Eigen::VectorXd& x) const {
    auto vs = unit_vectors(x);
    double mu = mu_star(vs);
    double f = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        double g = vs[j].dot(vs[k]);
        double e = g * g - mu;
        f += e * e;
      }
    return f;
  }

  // At mu = mu_star the partial through mu vanishes, so only the
  // direct vector dependence contributes.
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    auto vs = unit_vectors(x);
    double mu = mu_star(vs);
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(x.size());
    for (int j = 0; j < n; ++j) {
      double norm_j = x.segment(j * d, d).norm();
      RealVector gj = RealVector::Zero(d);
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        double g = vs[j].dot(vs[k]);
        double e = g * g - mu;
        gj += 4.0 * e * g * (vs[k] - g * vs[j]);
      }
      grad.segment(j * d, d) = gj / norm_j;
    }
    return grad;
  }
};

}  // namespace detail

// Joint minimization over unit vectors and the common cosine-squared.
// Success reports only search evidence, never a nonexistence proof.
inline EquiangularSearchResult real_equiangular_search(int d, int n_lines, int restarts,
                                                       std::uint64_t seed,
                                                       double tol = 1e-10) {
  if (d < 2 || d > 8) throw std::invalid_argument("real_equiangular_search: need 2 <= d <= 8");
  if (n_lines < 2 || n_lines > d * (d + 1) / 2)
    throw std::invalid_argument("real_equiangular_search: n_lines out of range");
  detail::EquiangularObjective obj{d, n_lines};

  // The objective has degenerate zeros where lines coincide (mu = 1);
  // among restarts below tolerance, keep the most spread configuration.
  double best_f = std::numeric_limits<double>::infinity();
  double best_mu = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(detail::mix_seed(seed, static_cast<std::uint64_t>(r)));
    Eigen::VectorXd x0(n_lines * d);
    for (int k = 0; k < x0.size(); ++k) x0(k) = rng.gaussian();
    LbfgsOptions opt;
    opt.max_iters = 3000;
    opt.grad_tol = 1e-14;
    opt.f_tol = tol * 1e-2;
    auto res = lbfgs_minimize([&](const Eigen::VectorXd& x) { return obj.value(x); },
                              [&](const Eigen::VectorXd& x) { return obj.gradient(x); },
                              std::move(x0), opt);
    double mu = obj.mu_star(obj.unit_vectors(res.x));
    bool better = best_f > tol ? res.f < best_f : (res.f <= tol && mu < best_mu);
    if (better) {
      best_f = res.f;
      best_mu = mu;
      best_x = std::move(res.x);
    }
  }

  EquiangularSearchResult result;
  result.lines = obj.unit_vectors(best_x);
  result.common_cos_sq = obj.mu_star(result.lines);
  result.objective = best_f;
  for (int j = 0; j < n_lines; ++j)
    for (int k = j + 1; k < n_lines; ++k) {
      double g = result.lines[j].dot(result.lines[k]);
      result.max_dev = std::max(result.max_dev, std::abs(g * g - result.common_cos_sq));
    }
  result.success = best_f < tol;
  return result;
}

}  // namespace qplex
