#pragma once

// Weyl-Heisenberg machinery, SIC fiducial search and verification,
// quasi-SIC construction, triple products, overlap phases, and the
// out-of-time-ordered correlator.

#include "qplex/operator_core.hpp"
#include "qplex/optim.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace qplex {

struct WeylHeisenbergOp {
  int dim = 0;
  int shift_power = 0;  // a, mod d
  int clock_power = 0;  // b, mod d
  ComplexMatrix matrix;
};

// D(a,b) = tau^{ab} X^a Z^b with X the cyclic shift, Z = diag(omega^k),
// omega = exp(2 pi i / d), tau = -exp(pi i / d).
// Matrix elements: D_{m,k} = tau^{ab} omega^{b k} [m == k + a mod d].
inline WeylHeisenbergOp wh_displacement(int d, int a, int b) {
  if (d < 2) throw std::invalid_argument("wh_displacement: d must be >= 2");
  a = ((a % d) + d) % d;
  b = ((b % d) + d) % d;
  const Complex tau = -std::exp(Complex(0.0, M_PI / d));
  const Complex phase = std::pow(tau, a * b);
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    Complex omega_bk = std::exp(Complex(0.0, 2.0 * M_PI * b * k / d));
    m((k + a) % d, k) = phase * omega_bk;
  }
  return WeylHeisenbergOp{d, a, b, std::move(m)};
}

// Apply D(a,b) in O(d) without forming the matrix.
inline ComplexVector wh_apply(int d, int a, int b, const ComplexVector& psi) {
  const Complex tau = -std::exp(Complex(0.0, M_PI / d));
  const Complex phase = std::pow(tau, a * b);
  ComplexVector out(d);
  for (int m = 0; m < d; ++m) {
    int k = ((m - a) % d + d) % d;
    out(m) = phase * std::exp(Complex(0.0, 2.0 * M_PI * b * k / d)) * psi(k);
  }
  return out;
}

// Orbit of a fiducial under all d^2 displacements; element a*d+b is
// D(a,b) |fiducial>.
inline std::vector<PureState> wh_orbit(const PureState& fiducial) {
  const int d = fiducial.dim();
  std::vector<PureState> orbit;
  orbit.reserve(d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      orbit.push_back(PureState{wh_apply(d, a, b, fiducial.amplitudes)});
  return orbit;
}

// Sum over ordered pairs j != k of (|<pi_j|pi_k>|^2 - 1/(d+1))^2.
inline double frame_potential(const std::vector<PureState>& vectors) {
  if (vectors.empty()) return 0.0;
  const int d = vectors[0].dim();
  const double target = 1.0 / (d + 1);
  double sum = 0.0;
  const int n = static_cast<int>(vectors.size());
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      double ov = std::norm(vectors[j].amplitudes.dot(vectors[k].amplitudes));
      double dev = ov - target;
      sum += 2.0 * dev * dev;
    }
  }
  return sum;
}

namespace detail {

// Orbit overlaps collapse to <psi|D(a,b)|psi>: the frame potential of a
// WH orbit equals d^2 * sum_{(a,b) != 0} (|c_ab|^2 - 1/(d+1))^2.
// Objective and analytic gradient over the unnormalized 2d-real
// parametrization of the fiducial.
struct OrbitPotential {
  int d;
  std::vector<ComplexVector> phases;  // phases[a*d+b](k) = tau^{ab} omega^{b k}

  explicit OrbitPotential(int dim) : d(dim) {
    const Complex tau = -std::exp(Complex(0.0, M_PI / d));
    phases.resize(d * d);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        ComplexVector p(d);
        Complex head = std::pow(tau, a * b);
        for (int k = 0; k < d; ++k)
          p(k) = head * std::exp(Complex(0.0, 2.0 * M_PI * b * k / d));
        phases[a * d + b] = std::move(p);
      }
    }
  }

  static ComplexVector unpack(const Eigen::VectorXd& x) {
    const int d = static_cast<int>(x.size()) / 2;
    ComplexVector phi(d);
    for (int k = 0; k < d; ++k) phi(k) = Complex(x(2 * k), x(2 * k + 1));
    return phi;
  }

  ComplexVector displaced(int a, int b, const ComplexVector& phi) const {
    const ComplexVector& ph = phases[a * d + b];
    ComplexVector out(d);
    for (int m = 0; m < d; ++m) {
      int k = ((m - a) % d + d) % d;
      out(m) = ph(k) * phi(k);
    }
    return out;
  }

  double value(const Eigen::VectorXd& x) const {
    ComplexVector phi = unpack(x);
    const double n = phi.squaredNorm();
    const double t = 1.0 / (d + 1);
    double sum = 0.0;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        if (a == 0 && b == 0) continue;
        Complex c = phi.dot(displaced(a, b, phi));
        double e = std::norm(c) / (n * n) - t;
        sum += e * e;
      }
    }
    return d * d * sum;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    ComplexVector phi = unpack(x);
    const double n = phi.squaredNorm();
    const double t = 1.0 / (d + 1);
    ComplexVector gconj = ComplexVector::Zero(d);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        if (a == 0 && b == 0) continue;
        ComplexVector dphi = displaced(a, b, phi);
        Complex c = phi.dot(dphi);
        double ov = std::norm(c) / (n * n);
        double e = ov - t;
        // adjoint displacement: (D^dag phi)_k = conj(ph(k)) phi(k+a)
        const ComplexVector& ph = phases[a * d + b];
        ComplexVector dadj(d);
        for (int k = 0; k < d; ++k) dadj(k) = std::conj(ph(k)) * phi((k + a) % d);
        gconj += 2.0 * e *
                 ((std::conj(c) * dphi + c * dadj) / (n * n) - (2.0 * ov / n) * phi);
      }
    }
    Eigen::VectorXd g(2 * d);
    for (int k = 0; k < d; ++k) {
      g(2 * k) = 2.0 * d * d * gconj(k).real();
      g(2 * k + 1) = 2.0 * d * d * gconj(k).imag();
    }
    return g;
  }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t idx) {
  return seed * 0x2545f4914f6cdd1dULL + (idx + 1) * 0x9e3779b97f4a7c15ULL;
}

}  // namespace detail

struct FiducialSearchResult {
  PureState fiducial;
  double potential = 0.0;
  bool converged = false;
  int best_restart = -1;
  std::vector<double> restart_potentials;
};

// Random-restart quasi-Newton minimization of the orbit frame
// potential. Deterministic in (d, restarts, seed) regardless of the
// worker count: each restart is seeded independently and the winner is
// picked by (potential, restart index).
inline FiducialSearchResult search_fiducial(int d, int restarts, std::uint64_t seed,
                                            double tol = 1e-12, int workers = 0) {
  if (d < 2 || d > 16) throw std::invalid_argument("search_fiducial: need 2 <= d <= 16");
  if (restarts < 1) throw std::invalid_argument("search_fiducial: restarts must be >= 1");
  detail::OrbitPotential pot(d);

  std::vector<double> best_f(restarts, 0.0);
  std::vector<Eigen::VectorXd> best_x(restarts);
  std::vector<char> done(restarts, 0);

  auto run_restart = [&](int r) {
    Rng rng(detail::mix_seed(seed, static_cast<std::uint64_t>(r)));
    Eigen::VectorXd x0(2 * d);
    for (int k = 0; k < 2 * d; ++k) x0(k) = rng.gaussian();
    LbfgsOptions opt;
    opt.max_iters = 4000;
    opt.grad_tol = 1e-15;
    opt.f_tol = 1e-30;  // run to the line-search noise floor
    auto res = lbfgs_minimize([&](const Eigen::VectorXd& x) { return pot.value(x); },
                              [&](const Eigen::VectorXd& x) { return pot.gradient(x); },
                              std::move(x0), opt);
    best_f[r] = res.f;
    best_x[r] = std::move(res.x);
    done[r] = 1;
  };

  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, restarts);
  if (workers == 1) {
    for (int r = 0; r < restarts; ++r) run_restart(r);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int r = next.fetch_add(1); r < restarts; r = next.fetch_add(1)) run_restart(r);
      });
    }
    for (auto& th : pool) th.join();
  }

  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (best_f[r] < best_f[best]) best = r;

  ComplexVector phi = detail::OrbitPotential::unpack(best_x[best]);
  phi.normalize();
  FiducialSearchResult result;
  result.fiducial = PureState{std::move(phi)};
  result.potential = best_f[best];
  result.converged = best_f[best] <= tol;
  result.best_restart = best;
  result.restart_potentials = std::move(best_f);
  return result;
}

struct SicReport {
  double max_overlap_dev = 0.0;       // |<pi_j|pi_k>|^2 vs (d delta + 1)/(d+1)
  double max_norm_dev = 0.0;          // unit-norm deviation
  double completeness_dev = 0.0;      // max-abs deviation of sum Pi_j from d I
  bool pass = false;
};

inline SicReport sic_verify(const std::vector<PureState>& vectors, double tol) {
  if (vectors.empty()) throw std::invalid_argument("sic_verify: empty set");
  const int d = vectors[0].dim();
  if (static_cast<int>(vectors.size()) != d * d)
    throw std::invalid_argument("sic_verify: expected d^2 vectors");
  SicReport rep;
  for (const auto& v : vectors)
    rep.max_norm_dev = std::max(rep.max_norm_dev, std::abs(v.norm() - 1.0));
  const double off_target = 1.0 / (d + 1);
  for (int j = 0; j < d * d; ++j) {
    for (int k = j + 1; k < d * d; ++k) {
      double ov = std::norm(vectors[j].amplitudes.dot(vectors[k].amplitudes));
      rep.max_overlap_dev = std::max(rep.max_overlap_dev, std::abs(ov - off_target));
    }
  }
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& v : vectors) sum += v.amplitudes * v.amplitudes.adjoint();
  rep.completeness_dev =
      (sum - static_cast<double>(d) * ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  rep.pass = rep.max_overlap_dev <= tol && rep.max_norm_dev <= tol &&
             rep.completeness_dev <= tol;
  return rep;
}

struct Sic {
  int dim = 0;
  PureState fiducial;
  std::vector<PureState> vectors;
  std::vector<ComplexMatrix> projectors;
};

inline Sic sic_from_fiducial(const PureState& fiducial) {
  Sic sic;
  sic.dim = fiducial.dim();
  sic.fiducial = fiducial;
  sic.vectors = wh_orbit(fiducial);
  sic.projectors.reserve(sic.vectors.size());
  for (const auto& v : sic.vectors) sic.projectors.push_back(projector(v));
  return sic;
}

// Orthonormal traceless Hermitian basis (generalized Gell-Mann
// matrices, normalized so tr F_a F_b = delta_ab); d^2 - 1 elements.
inline std::vector<ComplexMatrix> gell_mann_basis(int d) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(d * d - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(d, d);
      sym(j, k) = sym(k, j) = inv_sqrt2;
      basis.push_back(sym);
      ComplexMatrix asym = ComplexMatrix::Zero(d, d);
      asym(j, k) = Complex(0.0, -inv_sqrt2);
      asym(k, j) = Complex(0.0, inv_sqrt2);
      basis.push_back(asym);
    }
  }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    double s = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int m = 0; m < l; ++m) diag(m, m) = s;
    diag(l, l) = -static_cast<double>(l) * s;
    basis.push_back(diag);
  }
  return basis;
}

// d^2 unit vectors in R^{d^2-1} with pairwise dot -1/(d^2-1): columns
// of the centered identity expressed in a Helmert basis of the
// sum-zero subspace.
inline RealMatrix regular_simplex_vertices(int n) {
  RealMatrix helmert(n - 1, n);
  helmert.setZero();
  for (int l = 1; l < n; ++l) {
    double s = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int m = 0; m < l; ++m) helmert(l - 1, m) = s;
    helmert(l - 1, l) = -static_cast<double>(l) * s;
  }
  // column j of the projector I - J/n equals e_j - 1/n; Helmert rows
  // already annihilate the flat part.
  RealMatrix v = helmert;  // H * e_j is just column j of H
  double scale = std::sqrt(static_cast<double>(n) / (n - 1));
  return scale * v;
}

struct QuasiSic {
  int dim = 0;
  std::vector<ComplexMatrix> operators;
};

// Q_j = I/d + sqrt((d-1)/d) sum_a v_j[a] F_a with {F_a} orthonormal
// traceless Hermitian and {v_j} a regular simplex; the Gram is exactly
// (d delta + 1)/(d+1) and sum Q_j = d I.
inline QuasiSic quasi_sic(int d) {
  if (d < 2) throw std::invalid_argument("quasi_sic: d must be >= 2");
  const int n = d * d;
  auto basis = gell_mann_basis(d);
  RealMatrix simplex = regular_simplex_vertices(n);  // (n-1) x n
  const double r = std::sqrt(static_cast<double>(d - 1) / d);
  QuasiSic q;
  q.dim = d;
  q.operators.reserve(n);
  for (int j = 0; j < n; ++j) {
    ComplexMatrix op = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    for (int a = 0; a < n - 1; ++a) op += r * simplex(a, j) * basis[a];
    q.operators.push_back(std::move(op));
  }
  return q;
}

// Triple products T_jkl = tr Pi_j Pi_k Pi_l, held via the overlap
// factorization <pi_j|pi_k><pi_k|pi_l><pi_l|pi_j>; C = Re T.
struct TripleProducts {
  int dim = 0;
  ComplexMatrix overlaps;  // d^2 x d^2, overlaps(j,k) = <pi_j|pi_k>

  Complex T(int j, int k, int l) const {
    return overlaps(j, k) * overlaps(k, l) * overlaps(l, j);
  }
  double C(int j, int k, int l) const { return T(j, k, l).real(); }
  double theta(int j, int k, int l) const { return std::arg(T(j, k, l)); }

  // sum_{jkl} p(j) p(k) p(l) C_jkl = Re tr((diag(p) M)^3)
  double cubic_contraction(const RealVector& p) const {
    ComplexMatrix a = p.cast<Complex>().asDiagonal() * overlaps;
    return (a * a * a).trace().real();
  }
};

inline TripleProducts triple_products(const Sic& sic) {
  const int n = sic.dim * sic.dim;
  TripleProducts tp;
  tp.dim = sic.dim;
  tp.overlaps.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      tp.overlaps(j, k) = sic.vectors[j].amplitudes.dot(sic.vectors[k].amplitudes);
  return tp;
}

// theta_j = arg <pi_j|pi_0> for j != 0; magnitudes must be
// 1/sqrt(d+1) within 1e-10.
inline std::vector<double> overlap_phases(const Sic& sic) {
  const int n = sic.dim * sic.dim;
  const double mag = 1.0 / std::sqrt(static_cast<double>(sic.dim) + 1.0);
  std::vector<double> thetas;
  thetas.reserve(n - 1);
  for (int j = 1; j < n; ++j) {
    Complex ov = sic.vectors[j].amplitudes.dot(sic.vectors[0].amplitudes);
    if (std::abs(std::abs(ov) - mag) > 1e-10)
      throw std::runtime_error("overlap_phases: not a verified SIC");
    thetas.push_back(std::arg(ov));
  }
  return thetas;
}

// F = <pi_0| W^dag V^dag W V |pi_0>
inline Complex otoc(const ComplexMatrix& w, const WeylHeisenbergOp& v,
                    const PureState& fiducial) {
  const int d = fiducial.dim();
  if (w.rows() != d || w.cols() != d || v.dim != d)
    throw std::invalid_argument("otoc: dimension mismatch");
  double unit_dev = (w.adjoint() * w - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (unit_dev > 1e-10) throw std::invalid_argument("otoc: w is not unitary");
  ComplexVector rhs = w * (v.matrix * fiducial.amplitudes);
  rhs = v.matrix.adjoint() * rhs;
  rhs = w.adjoint() * rhs;
  return fiducial.amplitudes.dot(rhs);
}

}  // namespace qplex
