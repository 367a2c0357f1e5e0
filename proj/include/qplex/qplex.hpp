#pragma once

// Generalized-qplex constants, basis distributions, Phi, consistency
// classification, the urgleichung, state<->probability conversion, MMD
// sets, the zeros bound, and the QBic boundary residuals.

#include "qplex/operator_core.hpp"
#include "qplex/sic.hpp"

#include <cmath>
#include <vector>

namespace qplex {

struct QplexParams {
  int d = 0;
  int q = 0;
  int N = 0;
  double L = 0.0;
  double U = 0.0;
};

inline int polygonal_number(int d, int q) {
  if (d < 1 || q < 0) throw std::invalid_argument("polygonal_number: d >= 1, q >= 0");
  return d + q * d * (d - 1) / 2;
}

// Fixing q fixes N, L, U in terms of d. L is pinned by requiring the
// MMD size bound 1 + r_out^2/r_mid^2 to equal d, jointly with
// U = 1 + L(N-1)(NL-2). The resulting quadratic in L always has the
// spurious root L = 1/N; the physical one is L = (N-d)/(N(N-1)),
// which gives 1/(d(d+1)) at q=2 and 0 at q=0.
inline QplexParams make_params(int d, int q) {
  if (d < 2 || q < 0) throw std::invalid_argument("make_params: d >= 2, q >= 0");
  QplexParams p;
  p.d = d;
  p.q = q;
  p.N = polygonal_number(d, q);
  p.L = static_cast<double>(p.N - d) / (static_cast<double>(p.N) * (p.N - 1));
  p.U = 1.0 + p.L * (p.N - 1) * (p.N * p.L - 2.0);
  if (!(p.L >= 0.0 && p.L < 1.0 / p.N))
    throw std::runtime_error("make_params: no admissible L in [0, 1/N)");
  return p;
}

using ProbVector = RealVector;

inline void check_prob_vector(const ProbVector& p, double tol = 1e-12) {
  if (std::abs(p.sum() - 1.0) > tol)
    throw std::invalid_argument("probability vector does not sum to 1");
}

// e_k(j) = (1 - NL) delta_jk + L
inline ProbVector basis_distribution(const QplexParams& params, int k) {
  if (k < 0 || k >= params.N) throw std::out_of_range("basis_distribution: bad index");
  ProbVector e = ProbVector::Constant(params.N, params.L);
  e(k) += 1.0 - params.N * params.L;
  return e;
}

// Phi = (I - L J)/(1 - NL); inverse of the basis-distribution matrix,
// preserves the flat distribution.
inline RealMatrix phi_matrix(const QplexParams& params) {
  const double nl = params.N * params.L;
  if (std::abs(1.0 - nl) < 1e-14) throw std::runtime_error("phi_matrix: NL = 1 singularity");
  RealMatrix phi = RealMatrix::Constant(params.N, params.N, -params.L / (1.0 - nl));
  phi.diagonal().array() += 1.0 / (1.0 - nl);
  return phi;
}

enum class Consistency { BelowL, InBand, AboveU };

inline Consistency consistency(const ProbVector& p1, const ProbVector& p2,
                               const QplexParams& params, double tol = 1e-12) {
  if (p1.size() != params.N || p2.size() != params.N)
    throw std::invalid_argument("consistency: dimension mismatch");
  double ip = p1.dot(p2);
  if (ip < params.L - tol) return Consistency::BelowL;
  if (ip > params.U + tol) return Consistency::AboveU;
  return Consistency::InBand;
}

// Conditional-probability matrix: M outcomes by N conditions, each
// column a distribution.
struct CondMatrix {
  RealMatrix entries;  // M x N

  int outcomes() const { return static_cast<int>(entries.rows()); }
  int conditions() const { return static_cast<int>(entries.cols()); }
};

inline CondMatrix make_cond_matrix(RealMatrix entries, double tol = 1e-12) {
  for (int i = 0; i < entries.cols(); ++i)
    if (std::abs(entries.col(i).sum() - 1.0) > tol)
      throw std::invalid_argument("make_cond_matrix: column is not a distribution");
  return CondMatrix{std::move(entries)};
}

struct UrgleichungResult {
  RealVector q;
  bool has_negative = false;  // diagnoses non-realizable (r, p) pairs
};

// q = r Phi p. Negative entries are flagged, never clipped.
inline UrgleichungResult urgleichung(const CondMatrix& r, const ProbVector& p,
                                     const QplexParams& params) {
  if (r.conditions() != params.N || p.size() != params.N)
    throw std::invalid_argument("urgleichung: dimension mismatch");
  RealVector q = r.entries * (phi_matrix(params) * p);
  bool neg = (q.array() < -1e-12).any();
  return UrgleichungResult{std::move(q), neg};
}

// p(j) = tr(rho Pi_j)/d
inline ProbVector state_to_probs(const DensityOperator& rho, const Sic& sic) {
  if (rho.dim() != sic.dim) throw std::invalid_argument("state_to_probs: dimension mismatch");
  const int n = sic.dim * sic.dim;
  ProbVector p(n);
  for (int j = 0; j < n; ++j)
    p(j) = (rho.matrix * sic.projectors[j]).trace().real() / sic.dim;
  return p;
}

struct StateFromProbs {
  ComplexMatrix rho;
  bool psd = false;
  double min_eigenvalue = 0.0;
};

// rho = sum_i [(d+1) p(i) - 1/d] Pi_i. Hermitian and unit trace by
// construction; PSD only when p lies inside the Hilbert qplex.
inline StateFromProbs probs_to_state(const ProbVector& p, const Sic& sic) {
  const int d = sic.dim;
  if (p.size() != d * d) throw std::invalid_argument("probs_to_state: need d^2 entries");
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d * d; ++i)
    rho += ((d + 1.0) * p(i) - 1.0 / d) * sic.projectors[i];
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  double min_eig = es.eigenvalues().minCoeff();
  return StateFromProbs{std::move(rho), min_eig >= -1e-10, min_eig};
}

// floor of 1 + (U - 1/N)/(1/N - L); equals d by construction of L.
inline int mmd_bound(const QplexParams& params) {
  double r_mid_sq = 1.0 / params.N - params.L;
  if (r_mid_sq <= 0.0) throw std::runtime_error("mmd_bound: L >= 1/N");
  double r_out_sq = params.U - 1.0 / params.N;
  return static_cast<int>(std::floor(1.0 + r_out_sq / r_mid_sq + 1e-9));
}

struct MmdReport {
  double max_diag_dev = 0.0;   // <p_k, p_k> vs U
  double max_offdiag_dev = 0.0;// <p_k, p_l> vs L
  double gram_dev = 0.0;       // vs (U-L) I + L J
  double sum_dev = 0.0;        // saturated sets: sum_k p_k vs m c
  bool saturated = false;
  bool pass = false;
};

inline MmdReport mmd_verify(const std::vector<ProbVector>& set, const QplexParams& params,
                            double tol) {
  if (set.empty()) throw std::invalid_argument("mmd_verify: empty set");
  const int m = static_cast<int>(set.size());
  MmdReport rep;
  for (int k = 0; k < m; ++k) {
    if (set[k].size() != params.N) throw std::invalid_argument("mmd_verify: bad dimension");
    for (int l = 0; l < m; ++l) {
      double ip = set[k].dot(set[l]);
      double target = k == l ? params.U : params.L;
      double dev = std::abs(ip - target);
      rep.gram_dev = std::max(rep.gram_dev, dev);
      if (k == l)
        rep.max_diag_dev = std::max(rep.max_diag_dev, dev);
      else
        rep.max_offdiag_dev = std::max(rep.max_offdiag_dev, dev);
    }
  }
  rep.pass = rep.max_diag_dev <= tol && rep.max_offdiag_dev <= tol;
  rep.saturated = m == mmd_bound(params);
  if (rep.saturated) {
    RealVector sum = RealVector::Zero(params.N);
    for (const auto& p : set) sum += p;
    rep.sum_dev = (sum.array() - static_cast<double>(m) / params.N).abs().maxCoeff();
    rep.pass = rep.pass && rep.sum_dev <= tol;
  }
  return rep;
}

// r(k|i) = (N/m) p_k(i); only defined for saturated verified sets,
// where sum_k p_k = m c makes the columns normalize.
inline CondMatrix mmd_to_measurement(const std::vector<ProbVector>& set,
                                     const QplexParams& params, double tol = 1e-9) {
  MmdReport rep = mmd_verify(set, params, tol);
  if (!rep.pass || !rep.saturated)
    throw std::runtime_error("mmd_to_measurement: set is not a saturated MMD set");
  const int m = static_cast<int>(set.size());
  RealMatrix r(m, params.N);
  for (int k = 0; k < m; ++k)
    r.row(k) = (static_cast<double>(params.N) / m) * set[k].transpose();
  return CondMatrix{std::move(r)};
}

// Number of zeros in a qplex point cannot exceed N - 1/U.
inline int zeros_bound(const QplexParams& params) {
  return static_cast<int>(std::floor(params.N - 1.0 / params.U + 1e-9));
}

inline int count_zeros(const ProbVector& p, double tol) {
  int n = 0;
  for (int i = 0; i < p.size(); ++i)
    if (p(i) < tol) ++n;
  return n;
}

struct QbicResiduals {
  double quadratic = 0.0;  // | sum p^2 - 2/(d(d+1)) |
  double cubic = 0.0;      // | sum p p p C - (d+7)/(d+1)^3 |
};

inline QbicResiduals qbic_residuals(const ProbVector& p, const TripleProducts& trip, int d) {
  if (p.size() != d * d) throw std::invalid_argument("qbic_residuals: need d^2 entries");
  QbicResiduals r;
  r.quadratic = std::abs(p.squaredNorm() - 2.0 / (d * (d + 1.0)));
  double rhs = (d + 7.0) / std::pow(d + 1.0, 3);
  r.cubic = std::abs(trip.cubic_contraction(p) - rhs);
  return r;
}

struct SimplexMembership {
  bool member = false;
  RealVector coefficients;  // expansion of p in the basis distributions
};

// lambda = Phi p; membership in the basis simplex iff all lambda >= 0.
inline SimplexMembership basis_simplex_membership(const ProbVector& p,
                                                  const QplexParams& params) {
  if (p.size() != params.N)
    throw std::invalid_argument("basis_simplex_membership: dimension mismatch");
  RealVector lambda = phi_matrix(params) * p;
  bool member = (lambda.array() >= -1e-12).all();
  return SimplexMembership{member, std::move(lambda)};
}

}  // namespace qplex
