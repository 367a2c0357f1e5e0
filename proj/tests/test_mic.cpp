#include "qplex/mic.hpp"

#include "qplex/qplex.hpp"
#include "qplex/report.hpp"

#include <catch_amalgamated.hpp>

using namespace qplex;

namespace {

PureState qubit_sic_fiducial() {
  const double s = 1.0 / std::sqrt(3.0);
  ComplexVector v(2);
  v(0) = std::sqrt((1.0 + s) / 2.0);
  v(1) = std::exp(Complex(0.0, M_PI / 4.0)) * std::sqrt((1.0 - s) / 2.0);
  return PureState{v};
}

}  // namespace

TEST_CASE("mic_verify diagnostics") {
  Sic sic = sic_from_fiducial(qubit_sic_fiducial());
  std::vector<ComplexMatrix> good;
  for (const auto& p : sic.projectors) good.push_back(p / 2.0);
  auto rep = mic_verify(good, 1e-10);
  CHECK(rep.pass);
  CHECK(rep.psd_dev < 1e-12);
  CHECK(rep.completeness_dev < 1e-12);
  CHECK(rep.min_gram_eigenvalue > 1e-3);

  SECTION("broken completeness is caught") {
    auto bad = good;
    bad[0] *= 1.5;
    CHECK_FALSE(mic_verify(bad, 1e-10).pass);
  }
  SECTION("negative eigenvalue is caught") {
    auto bad = good;
    bad[0] -= 0.2 * ComplexMatrix::Identity(2, 2);
    bad[1] += 0.2 * ComplexMatrix::Identity(2, 2);
    auto r = mic_verify(bad, 1e-10);
    CHECK_FALSE(r.pass);
    CHECK(r.psd_dev > 0.01);
  }
  SECTION("linearly dependent set is caught") {
    std::vector<ComplexMatrix> dep(4, ComplexMatrix::Identity(2, 2) / 4.0);
    auto r = mic_verify(dep, 1e-10);
    CHECK_FALSE(r.pass);
    CHECK(std::abs(r.min_gram_eigenvalue) < 1e-12);
  }
}

TEST_CASE("SIC MIC structure") {
  Sic sic = sic_from_fiducial(qubit_sic_fiducial());
  Mic mic = mic_from_sic(sic);
  const int d = 2;

  // Gram: tr(Pi_i Pi_j)/d^2 = [(d delta_ij + 1)/(d+1)] / d^2
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double expect = (2.0 * (i == j) + 1.0) / (3.0 * 4.0);
      CHECK(std::abs(mic.gram(i, j) - expect) < 1e-12);
    }

  SECTION("duals are (d+1) Pi - I") {
    for (int i = 0; i < 4; ++i) {
      ComplexMatrix expect = (d + 1.0) * sic.projectors[i] - ComplexMatrix::Identity(d, d);
      CHECK((mic.duals[i] - expect).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
  SECTION("biorthogonality") {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double ip = (mic.duals[i] * mic.elements[j]).trace().real();
        CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-11);
      }
  }
}

TEST_CASE("reconstruction from Born probabilities") {
  for (std::uint64_t seed : {3u, 9u}) {
    for (int d : {2, 3}) {
      Mic mic = random_rank1_mic(d, seed + 10 * d);
      REQUIRE(mic_verify(mic.elements, 1e-9).pass);
      Rng rng(seed);
      for (int t = 0; t < 10; ++t) {
        DensityOperator rho = random_mixed_state(d, rng);
        ProbVector p = born_probs(rho, mic);
        CHECK(std::abs(p.sum() - 1.0) < 1e-12);
        CHECK(p.minCoeff() > -1e-12);
        CHECK((reconstruct(p, mic) - rho.matrix).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
}

TEST_CASE("Hilbert-Schmidt inner product via the Gram inverse") {
  Mic mic = random_rank1_mic(3, 21);
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    DensityOperator rho = random_mixed_state(3, rng);
    DensityOperator sigma = random_mixed_state(3, rng);
    double direct = (rho.matrix * sigma.matrix).trace().real();
    double via = hs_via_gram(born_probs(rho, mic), born_probs(sigma, mic), mic);
    CHECK(std::abs(direct - via) < 1e-9);
  }
}

TEST_CASE("self-duality gap") {
  Sic sic = sic_from_fiducial(qubit_sic_fiducial());
  Mic sic_mic = mic_from_sic(sic);
  double sic_gap = self_duality_gap(sic_mic);
  CHECK(sic_gap > 0.1);  // strictly positive even for a SIC

  // the SIC gap is smaller than that of generic rank-1 MICs
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    CHECK(self_duality_gap(random_rank1_mic(2, seed)) > sic_gap);
  }
}

TEST_CASE("orthogonal states never give disjoint Born vectors") {
  SECTION("SIC case has the closed-form minimum 1/(d(d+1))") {
    for (int d : {2, 3}) {
      Sic sic = d == 2 ? sic_from_fiducial(qubit_sic_fiducial())
                       : sic_from_fiducial(search_fiducial(3, 20, 7).fiducial);
      Mic mic = mic_from_sic(sic);
      auto rep = orthogonal_overlap_check(mic, 200, 17);
      CHECK(rep.strictly_positive);
      CHECK(std::abs(rep.min_inner_product - 1.0 / (d * (d + 1.0))) < 1e-10);
    }
  }
  SECTION("generic rank-1 MICs stay positive") {
    Mic mic = random_rank1_mic(2, 40);
    auto rep = orthogonal_overlap_check(mic, 200, 18);
    CHECK(rep.strictly_positive);
    CHECK(rep.trials == 200);
  }
}
