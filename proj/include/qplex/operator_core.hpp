#pragma once

// Complex linear-algebra substrate: pure states, density operators,
// Hilbert-Schmidt inner products, seeded Haar sampling, and the
// homogeneity map rho^{1/2} X rho^{1/2}.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace qplex {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

// Deterministic RNG: splitmix-seeded xoshiro-free mt19937_64 with a
// hand-rolled Box-Muller transform, so streams are pinned across
// platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  // splitmix64
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1]
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

struct PureState {
  ComplexVector amplitudes;

  int dim() const { return static_cast<int>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
};

struct DensityOperator {
  ComplexMatrix matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

// tr(a^dagger b)
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hs_inner: dimension mismatch");
  return (a.adjoint() * b).trace();
}

struct DensityReport {
  double hermiticity_dev = 0.0;
  double trace_dev = 0.0;
  double negativity = 0.0;  // magnitude of the most negative eigenvalue
  bool pass = false;
};

inline DensityReport is_density(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("is_density: matrix not square");
  DensityReport rep;
  rep.hermiticity_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  rep.trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  double min_eig = es.eigenvalues().minCoeff();
  rep.negativity = min_eig < 0.0 ? -min_eig : 0.0;
  rep.pass = rep.hermiticity_dev <= tol && rep.trace_dev <= tol && rep.negativity <= tol;
  return rep;
}

inline PureState random_pure_state(int d, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("random_pure_state: d must be >= 2");
  Rng rng(seed);
  ComplexVector v(d);
  for (int k = 0; k < d; ++k) {
    double re = rng.gaussian();
    double im = rng.gaussian();
    v(k) = Complex(re, im);
  }
  v.normalize();
  return PureState{v};
}

inline PureState random_pure_state(int d, Rng& rng) {
  if (d < 2) throw std::invalid_argument("random_pure_state: d must be >= 2");
  ComplexVector v(d);
  for (int k = 0; k < d; ++k) v(k) = Complex(rng.gaussian(), rng.gaussian());
  v.normalize();
  return PureState{v};
}

// A pair of orthonormal states spanning a random 2-plane.
inline std::pair<PureState, PureState> random_orthogonal_pair(int d, Rng& rng) {
  PureState a = random_pure_state(d, rng);
  ComplexVector w(d);
  for (int k = 0; k < d; ++k) w(k) = Complex(rng.gaussian(), rng.gaussian());
  w -= a.amplitudes * (a.amplitudes.dot(w));
  w.normalize();
  return {a, PureState{w}};
}

inline ComplexMatrix projector(const PureState& psi) {
  return psi.amplitudes * psi.amplitudes.adjoint();
}

inline DensityOperator pure_density(const PureState& psi) {
  return DensityOperator{projector(psi)};
}

// Spectral square root; eigenvalues clamped at 0 to absorb -1e-14 noise
// on PSD inputs.
inline ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  RealVector lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

// L_rho(X) = rho^{1/2} X rho^{1/2}; sends the identity to rho.
inline ComplexMatrix homogeneity_map(const DensityOperator& rho, const ComplexMatrix& x) {
  if (x.rows() != rho.matrix.rows())
    throw std::invalid_argument("homogeneity_map: dimension mismatch");
  ComplexMatrix s = matrix_sqrt_psd(rho.matrix);
  return s * x * s;
}

// Inverse of the homogeneity map; defined only for full-rank rho.
// Eigenvalues below 1e-12 are treated as zero.
inline ComplexMatrix homogeneity_map_inverse(const DensityOperator& rho,
                                             const ComplexMatrix& y) {
  if (y.rows() != rho.matrix.rows())
    throw std::invalid_argument("homogeneity_map_inverse: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix);
  RealVector lam = es.eigenvalues();
  if (lam.minCoeff() < 1e-12)
    throw std::runtime_error("homogeneity_map_inverse: singular density operator");
  RealVector inv_sqrt = lam.cwiseSqrt().cwiseInverse();
  ComplexMatrix s = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
  return s * y * s;
}

}  // namespace qplex
