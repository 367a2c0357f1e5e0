#pragma once

// Aggregate diagnostic report over one dimension: SIC verification,
// QBic residual statistics, MMD structure of a random basis image, MIC
// self-duality gap, cone round-trip residual, and urgleichung/Born
// agreement. Deterministic in (d, seed).

#include "qplex/cone_foils.hpp"
#include "qplex/io.hpp"
#include "qplex/mic.hpp"
#include "qplex/qplex.hpp"
#include "qplex/sic.hpp"

namespace qplex {

// Haar-random orthonormal basis via QR of a Gaussian matrix.
inline std::vector<PureState> random_orthonormal_basis(int d, Rng& rng) {
  ComplexMatrix g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = Complex(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  std::vector<PureState> basis;
  basis.reserve(d);
  for (int c = 0; c < d; ++c) basis.push_back(PureState{q.col(c)});
  return basis;
}

// Random POVM: n_outcomes rank-1 operators conjugated to completeness.
inline std::vector<ComplexMatrix> random_povm(int d, int n_outcomes, Rng& rng) {
  std::vector<ComplexMatrix> effects;
  effects.reserve(n_outcomes);
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < n_outcomes; ++i) {
    effects.push_back(projector(random_pure_state(d, rng)));
    s += effects.back();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
  ComplexMatrix fix = es.eigenvectors() *
                      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                      es.eigenvectors().adjoint();
  for (auto& e : effects) e = fix * e * fix;
  return effects;
}

inline DensityOperator random_mixed_state(int d, Rng& rng) {
  ComplexMatrix g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = Complex(rng.gaussian(), rng.gaussian());
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator{rho};
}

inline Json report_all(int d, std::uint64_t seed, const PureState& fiducial,
                       double potential) {
  const QplexParams params = make_params(d, 2);
  const Sic sic = sic_from_fiducial(fiducial);
  const TripleProducts trip = triple_products(sic);
  const Mic mic = mic_from_sic(sic);

  Json doc;
  doc["d"] = d;
  doc["seed"] = seed;
  doc["params"] = params_to_json(params);

  {
    SicReport rep = sic_verify(sic.vectors, 1e-8);
    doc["sic"] = Json{{"potential", potential},
                      {"max_overlap_dev", rep.max_overlap_dev},
                      {"max_norm_dev", rep.max_norm_dev},
                      {"completeness_dev", rep.completeness_dev},
                      {"pass", rep.pass}};
  }

  {
    Rng rng(seed ^ 0x71c9b7a5d3e2f081ULL);
    double max_quad = 0.0, max_cubic = 0.0;
    for (int t = 0; t < 100; ++t) {
      ProbVector p = state_to_probs(pure_density(random_pure_state(d, rng)), sic);
      QbicResiduals res = qbic_residuals(p, trip, d);
      max_quad = std::max(max_quad, res.quadratic);
      max_cubic = std::max(max_cubic, res.cubic);
    }
    doc["qbic"] = Json{{"samples", 100},
                       {"max_quadratic_residual", max_quad},
                       {"max_cubic_residual", max_cubic},
                       {"cubic_rhs", (d + 7.0) / std::pow(d + 1.0, 3)}};
  }

  {
    Rng rng(seed ^ 0x243f6a8885a308d3ULL);
    auto basis = random_orthonormal_basis(d, rng);
    std::vector<ProbVector> images;
    for (const auto& b : basis) images.push_back(state_to_probs(pure_density(b), sic));
    MmdReport rep = mmd_verify(images, params, 1e-9);
    doc["mmd"] = Json{{"size", d},
                      {"bound", mmd_bound(params)},
                      {"max_diag_dev", rep.max_diag_dev},
                      {"max_offdiag_dev", rep.max_offdiag_dev},
                      {"sum_dev", rep.sum_dev},
                      {"pass", rep.pass}};
  }

  doc["mic"] = Json{{"self_duality_gap", self_duality_gap(mic)}};

  {
    ConeTheory cone = build_cone(params);
    Rng rng(seed ^ 0x452821e638d01377ULL);
    double max_rt = 0.0;
    for (int t = 0; t < 100; ++t) {
      RealVector lambda(params.N);
      for (int i = 0; i < params.N; ++i) lambda(i) = rng.gaussian();
      lambda.array() -= (lambda.sum() - 1.0) / params.N;  // affine weights
      RealVector v = cone.basis * lambda;
      ProbVector p = f_map(cone, v);
      max_rt = std::max(max_rt, (f_map(cone, f_inverse(cone, p)) - p).cwiseAbs().maxCoeff());
    }
    doc["cone"] = Json{{"round_trip_residual", max_rt}};
  }

  {
    Rng rng(seed ^ 0x13198a2e03707344ULL);
    double max_dev = 0.0;
    for (int t = 0; t < 20; ++t) {
      DensityOperator rho = random_mixed_state(d, rng);
      auto effects = random_povm(d, d + 1, rng);
      RealMatrix r(effects.size(), d * d);
      for (size_t j = 0; j < effects.size(); ++j)
        for (int i = 0; i < d * d; ++i)
          r(static_cast<Eigen::Index>(j), i) =
              (sic.projectors[i] * effects[j]).trace().real();
      UrgleichungResult ur = urgleichung(CondMatrix{r}, state_to_probs(rho, sic), params);
      for (size_t j = 0; j < effects.size(); ++j) {
        double born = (rho.matrix * effects[j]).trace().real();
        max_dev = std::max(max_dev, std::abs(ur.q(static_cast<Eigen::Index>(j)) - born));
      }
    }
    doc["urgleichung"] = Json{{"pairs", 20}, {"max_born_deviation", max_dev}};
  }

  return doc;
}

}  // namespace qplex
