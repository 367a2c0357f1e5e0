#include "qplex/cone_foils.hpp"

#include "qplex/report.hpp"

#include <catch_amalgamated.hpp>

using namespace qplex;

TEST_CASE("cone construction") {
  for (int d : {2, 3, 4}) {
    for (int q : {1, 2, 4}) {
      auto params = make_params(d, q);
      ConeTheory cone = build_cone(params);
      const int n = params.N;
      const double nl = n * params.L;

      // basis Gram: 1 + NL(delta - 1)
      RealMatrix gram = cone.basis.transpose() * cone.basis;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          CHECK(std::abs(gram(i, j) - (i == j ? 1.0 : 1.0 - nl)) < 1e-12);

      // order unit norm
      double iota_sq = cone.order_unit.dot(cone.order_unit);
      CHECK(std::abs(iota_sq - 1.0 / (1.0 + params.L - nl)) < 1e-12);

      // biorthogonality and resolution of the order unit
      RealMatrix bi = cone.dual_basis.transpose() * cone.basis;
      CHECK((bi - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-11);
      CHECK((cone.dual_basis.rowwise().sum() - cone.order_unit).cwiseAbs().maxCoeff() < 1e-11);

      // every basis vector sits on the normalized hyperplane
      for (int i = 0; i < n; ++i)
        CHECK(std::abs(cone.order_unit.dot(cone.basis.col(i)) - 1.0) < 1e-11);
    }
  }
}

TEST_CASE("f_map and f_inverse") {
  auto params = make_params(3, 2);
  ConeTheory cone = build_cone(params);

  SECTION("basis vectors map to basis distributions") {
    for (int i = 0; i < params.N; ++i) {
      ProbVector p = f_map(cone, cone.basis.col(i));
      CHECK((p - basis_distribution(params, i)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SECTION("center maps to the flat distribution") {
    ProbVector p = f_map(cone, cone.center);
    CHECK((p.array() - 1.0 / params.N).abs().maxCoeff() < 1e-12);
  }
  SECTION("round trips both ways") {
    Rng rng(19);
    for (int t = 0; t < 100; ++t) {
      RealVector lambda(params.N);
      for (int i = 0; i < params.N; ++i) lambda(i) = std::abs(rng.gaussian());
      lambda /= lambda.sum();
      RealVector v = cone.basis * lambda;
      CHECK((f_inverse(cone, f_map(cone, v)) - v).cwiseAbs().maxCoeff() < 1e-11);

      ProbVector p = f_map(cone, v);
      CHECK(std::abs(p.sum() - 1.0) < 1e-11);
      CHECK((f_map(cone, f_inverse(cone, p)) - p).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
  SECTION("f_map is affine") {
    RealVector v1 = cone.basis.col(0);
    RealVector v2 = cone.basis.col(3);
    for (double t : {0.25, 0.5, 0.9}) {
      RealVector mix = t * v1 + (1.0 - t) * v2;
      ProbVector expect = t * f_map(cone, v1) + (1.0 - t) * f_map(cone, v2);
      CHECK((f_map(cone, mix) - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SECTION("off-hyperplane inputs are rejected") {
    CHECK_THROWS_AS(f_map(cone, 2.0 * cone.center), std::invalid_argument);
  }
  SECTION("L = 0 is rejected: the Gram degenerates") {
    CHECK_THROWS_AS(build_cone(make_params(4, 0)), std::invalid_argument);
  }
}

TEST_CASE("q = 2 closed forms") {
  for (int d : {2, 3, 4}) {
    auto params = make_params(d, 2);
    ConeTheory cone = build_cone(params);

    CHECK(std::abs(cone.order_unit.dot(cone.order_unit) - d) < 1e-12);
    CHECK((cone.basis.rowwise().sum() - double(d) * cone.order_unit).cwiseAbs().maxCoeff() <
          1e-11);

    // dual basis reduces to (d+1)/d e_j - c
    for (int j = 0; j < params.N; ++j) {
      RealVector expect = ((d + 1.0) / d) * cone.basis.col(j) - cone.center;
      CHECK((cone.dual_basis.col(j) - expect).cwiseAbs().maxCoeff() < 1e-11);
    }
  }

  // d = 2 basis image, explicitly
  ConeTheory cone = build_cone(make_params(2, 2));
  ProbVector p = f_map(cone, cone.basis.col(0));
  CHECK(std::abs(p(0) - 0.5) < 1e-13);
  for (int j = 1; j < 4; ++j) CHECK(std::abs(p(j) - 1.0 / 6.0) < 1e-13);
}

TEST_CASE("jordan product") {
  Rng rng(27);
  auto random_herm = [&](int d) {
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = Complex(rng.gaussian(), rng.gaussian());
    return ComplexMatrix((m + m.adjoint()) / 2.0);
  };

  ComplexMatrix x = random_herm(3), y = random_herm(3), z = random_herm(3);

  SECTION("commutative and Hermitian-closed") {
    ComplexMatrix xy = jordan_product(x, y);
    CHECK((xy - jordan_product(y, x)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((xy - xy.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
  }
  SECTION("identity element") {
    CHECK((jordan_product(x, ComplexMatrix::Identity(3, 3)) - x).cwiseAbs().maxCoeff() <
          1e-13);
  }
  SECTION("Jordan identity (x o y) o (x o x) = x o (y o (x o x))") {
    ComplexMatrix xx = jordan_product(x, x);
    ComplexMatrix lhs = jordan_product(jordan_product(x, y), xx);
    ComplexMatrix rhs = jordan_product(x, jordan_product(y, xx));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("generally non-associative") {
    ComplexMatrix lhs = jordan_product(jordan_product(x, y), z);
    ComplexMatrix rhs = jordan_product(x, jordan_product(y, z));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() > 1e-6);
  }
  SECTION("non-Hermitian inputs are rejected") {
    ComplexMatrix bad = ComplexMatrix::Zero(3, 3);
    bad(0, 1) = Complex(0.0, 1.0);
    CHECK_THROWS_AS(jordan_product(bad, x), std::invalid_argument);
  }
}

TEST_CASE("spin factor product") {
  RealVector v(3), w(3);
  v << 1.0, 0.0, 0.0;
  w << 0.0, 1.0, 0.0;
  SpinFactorElement a{v, 2.0}, b{w, -1.0};

  SpinFactorElement ab = spin_factor_product(a, b);
  CHECK((ab.v - (2.0 * w - v)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(std::abs(ab.alpha - (-2.0)) < 1e-15);

  SECTION("commutative") {
    SpinFactorElement ba = spin_factor_product(b, a);
    CHECK((ab.v - ba.v).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(ab.alpha - ba.alpha) < 1e-15);
  }
  SECTION("identity element (0, 1)") {
    SpinFactorElement id{RealVector::Zero(3), 1.0};
    SpinFactorElement ai = spin_factor_product(a, id);
    CHECK((ai.v - a.v).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(ai.alpha - a.alpha) < 1e-15);
  }
  SECTION("Jordan identity holds on random elements") {
    Rng rng(33);
    for (int t = 0; t < 20; ++t) {
      RealVector xv(4), yv(4);
      for (int i = 0; i < 4; ++i) {
        xv(i) = rng.gaussian();
        yv(i) = rng.gaussian();
      }
      SpinFactorElement x{xv, rng.gaussian()}, y{yv, rng.gaussian()};
      SpinFactorElement xx = spin_factor_product(x, x);
      SpinFactorElement lhs = spin_factor_product(spin_factor_product(x, y), xx);
      SpinFactorElement rhs = spin_factor_product(x, spin_factor_product(y, xx));
      CHECK((lhs.v - rhs.v).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(std::abs(lhs.alpha - rhs.alpha) < 1e-10);
    }
  }
}

TEST_CASE("formal reality") {
  SECTION("Hermitian matrices") {
    Rng rng(44);
    std::vector<ComplexMatrix> xs;
    for (int k = 0; k < 3; ++k) {
      ComplexMatrix m(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = Complex(rng.gaussian(), rng.gaussian());
      xs.push_back((m + m.adjoint()) / 2.0);
    }
    CHECK(formally_real_check(xs));
    CHECK(formally_real_check(std::vector<ComplexMatrix>(3, ComplexMatrix::Zero(2, 2))));
  }
  SECTION("spin factors") {
    RealVector e0 = RealVector::Zero(2);
    e0(0) = 1.0;
    std::vector<SpinFactorElement> xs{{e0, 1.0}, {-e0, 1.0}};
    CHECK(formally_real_check(xs));  // squares sum to (0, 4), nonzero
    std::vector<SpinFactorElement> zeros(2, SpinFactorElement{RealVector::Zero(2), 0.0});
    CHECK(formally_real_check(zeros));
  }
}

TEST_CASE("jordan parameter counts match polygonal numbers") {
  for (int d = 1; d <= 10; ++d) {
    CHECK(jordan_param_count(JordanFamily::Real, d) == polygonal_number(d, 1));
    CHECK(jordan_param_count(JordanFamily::Complex, d) == polygonal_number(d, 2));
    CHECK(jordan_param_count(JordanFamily::Quaternionic, d) == polygonal_number(d, 4));
  }
  CHECK(jordan_param_count(JordanFamily::Complex, 3) == 9);
  CHECK(jordan_param_count(JordanFamily::Quaternionic, 2) == 6);
}

TEST_CASE("real equiangular line search") {
  SECTION("d = 2: three Mercedes-Benz lines at cos^2 = 1/4") {
    auto res = real_equiangular_search(2, 3, 5, 11);
    REQUIRE(res.success);
    CHECK(std::abs(res.common_cos_sq - 0.25) < 1e-6);
    CHECK(res.max_dev < 1e-5);
    for (const auto& v : res.lines) CHECK(std::abs(v.norm() - 1.0) < 1e-12);
  }
  SECTION("d = 3: six lines from the icosahedron at cos^2 = 1/5") {
    auto res = real_equiangular_search(3, 6, 20, 5);
    REQUIRE(res.success);
    CHECK(std::abs(res.common_cos_sq - 0.2) < 1e-5);
  }
  SECTION("maximum count d(d+1)/2 is enforced") {
    CHECK_THROWS_AS(real_equiangular_search(2, 4, 1, 0), std::invalid_argument);
  }
}
