#pragma once

// Minimal informationally complete POVMs: Gram matrices, dual bases,
// state reconstruction, the Hilbert-Schmidt/Gram identity, the
// self-duality gap, and the orthogonal-overlap diagnostic.

#include "qplex/operator_core.hpp"
#include "qplex/qplex.hpp"
#include "qplex/sic.hpp"

#include <vector>

namespace qplex {

struct Mic {
  int dim = 0;
  std::vector<ComplexMatrix> elements;
  RealMatrix gram;      // gram(i,j) = tr(E_i E_j)
  RealMatrix gram_inv;
  std::vector<ComplexMatrix> duals;  // tr(dual_i E_j) = delta_ij
};

struct MicReport {
  double psd_dev = 0.0;           // most negative element eigenvalue
  double completeness_dev = 0.0;  // sum E_i vs I
  double min_gram_eigenvalue = 0.0;
  bool pass = false;
};

inline MicReport mic_verify(const std::vector<ComplexMatrix>& elements, double tol) {
  if (elements.empty()) throw std::invalid_argument("mic_verify: empty set");
  const int d = static_cast<int>(elements[0].rows());
  if (static_cast<int>(elements.size()) != d * d)
    throw std::invalid_argument("mic_verify: expected d^2 elements");
  MicReport rep;
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : elements) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(e, Eigen::EigenvaluesOnly);
    double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < 0.0) rep.psd_dev = std::max(rep.psd_dev, -min_eig);
    sum += e;
  }
  rep.completeness_dev = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  const int n = d * d;
  RealMatrix gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram(i, j) = (elements[i] * elements[j]).trace().real();
  Eigen::SelfAdjointEigenSolver<RealMatrix> ges(gram, Eigen::EigenvaluesOnly);
  rep.min_gram_eigenvalue = ges.eigenvalues().minCoeff();
  rep.pass = rep.psd_dev <= tol && rep.completeness_dev <= tol &&
             rep.min_gram_eigenvalue > tol;
  return rep;
}

// Builds the Gram, its inverse (condition-number guard 1e12), and the
// dual basis dual_i = sum_j [G^{-1}]_ij E_j.
inline Mic make_mic(std::vector<ComplexMatrix> elements) {
  const int d = static_cast<int>(elements[0].rows());
  const int n = d * d;
  if (static_cast<int>(elements.size()) != n)
    throw std::invalid_argument("make_mic: expected d^2 elements");
  Mic mic;
  mic.dim = d;
  mic.gram.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      mic.gram(i, j) = (elements[i] * elements[j]).trace().real();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(mic.gram);
  const RealVector& lam = es.eigenvalues();
  if (lam.minCoeff() <= 0.0 || lam.maxCoeff() / lam.minCoeff() > 1e12)
    throw std::runtime_error("make_mic: Gram matrix singular or ill-conditioned");
  mic.gram_inv = es.eigenvectors() * lam.cwiseInverse().asDiagonal() *
                 es.eigenvectors().transpose();
  mic.duals.reserve(n);
  for (int i = 0; i < n; ++i) {
    ComplexMatrix dual = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < n; ++j) dual += mic.gram_inv(i, j) * elements[j];
    mic.duals.push_back(std::move(dual));
  }
  mic.elements = std::move(elements);
  return mic;
}

// E_i = Pi_i / d; duals come out as (d+1) Pi_i - I.
inline Mic mic_from_sic(const Sic& sic) {
  std::vector<ComplexMatrix> elements;
  elements.reserve(sic.projectors.size());
  for (const auto& p : sic.projectors) elements.push_back(p / sic.dim);
  return make_mic(std::move(elements));
}

// d^2 random rank-1 operators, completeness repaired by conjugating
// with S^{-1/2}, S = sum E_i.
inline Mic random_rank1_mic(int d, std::uint64_t seed) {
  Rng rng(seed);
  const int n = d * d;
  std::vector<ComplexMatrix> elements;
  elements.reserve(n);
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    PureState psi = random_pure_state(d, rng);
    elements.push_back(projector(psi));
    s += elements.back();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
  ComplexMatrix fix = es.eigenvectors() *
                      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                      es.eigenvectors().adjoint();
  for (auto& e : elements) e = fix * e * fix;
  return make_mic(std::move(elements));
}

inline ProbVector born_probs(const DensityOperator& rho, const Mic& mic) {
  const int n = mic.dim * mic.dim;
  ProbVector p(n);
  for (int i = 0; i < n; ++i) p(i) = (rho.matrix * mic.elements[i]).trace().real();
  return p;
}

// rho = sum_i p(i) dual_i
inline ComplexMatrix reconstruct(const ProbVector& p, const Mic& mic) {
  const int n = mic.dim * mic.dim;
  if (p.size() != n) throw std::invalid_argument("reconstruct: need d^2 entries");
  ComplexMatrix rho = ComplexMatrix::Zero(mic.dim, mic.dim);
  for (int i = 0; i < n; ++i) rho += p(i) * mic.duals[i];
  return rho;
}

// tr(rho sigma) = p_rho^T G^{-1} p_sigma
inline double hs_via_gram(const ProbVector& p1, const ProbVector& p2, const Mic& mic) {
  if (p1.size() != p2.size() || p1.size() != mic.gram_inv.rows())
    throw std::invalid_argument("hs_via_gram: dimension mismatch");
  return p1.dot(mic.gram_inv * p2);
}

// ||G^{-1} - I||_F; strictly positive for every MIC (no MIC is
// self-dual).
inline double self_duality_gap(const Mic& mic) {
  return (mic.gram_inv - RealMatrix::Identity(mic.gram_inv.rows(), mic.gram_inv.cols()))
      .norm();
}

struct OverlapCheckReport {
  double min_inner_product = 0.0;
  int trials = 0;
  bool strictly_positive = false;
};

// Samples orthogonal pure-state pairs and reports the minimum Euclidean
// inner product of their Born vectors; positive for every rank-1 MIC.
inline OverlapCheckReport orthogonal_overlap_check(const Mic& mic, int trials,
                                                   std::uint64_t seed) {
  Rng rng(seed);
  OverlapCheckReport rep;
  rep.trials = trials;
  rep.min_inner_product = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    auto [a, b] = random_orthogonal_pair(mic.dim, rng);
    ProbVector pa = born_probs(pure_density(a), mic);
    ProbVector pb = born_probs(pure_density(b), mic);
    rep.min_inner_product = std::min(rep.min_inner_product, pa.dot(pb));
  }
  rep.strictly_positive = rep.min_inner_product > 0.0;
  return rep;
}

}  // namespace qplex
