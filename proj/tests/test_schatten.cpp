#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "schurmarc/schatten.hpp"
#include "schurmarc/transference.hpp"

using namespace schurmarc;

TEST_CASE("schatten_norm: spec examples") {
  CHECK(schatten_norm(LabeledMatrix::identity(Box::interval(0, 4)), 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  std::mt19937_64 rng(1);
  const Eigen::VectorXcd u = testing::gaussian(rng, 5, 1), v = testing::gaussian(rng, 7, 1);
  const Eigen::MatrixXcd uv = u * v.adjoint();
  for (double p : {0.5, 1.0, 4.0 / 3.0, 2.0, 3.0, kInfinity})
    CHECK(schatten_norm(uv, p) == doctest::Approx(u.norm() * v.norm()).epsilon(1e-12));
  const Eigen::MatrixXcd A = testing::gaussian(rng, 8, 8);
  double frob = 0.0;
  for (Index i = 0; i < 8; ++i)
    for (Index j = 0; j < 8; ++j) frob += std::norm(A(i, j));
  CHECK(std::abs(schatten_norm(A, 2.0) - std::sqrt(frob)) < 1e-12 * std::sqrt(frob));
}

TEST_CASE("schatten_norm invariants") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = testing::uniform(rng, 1, 9);
    const Eigen::MatrixXcd A = testing::gaussian(rng, n, n), B = testing::gaussian(rng, n, n);
    const Eigen::MatrixXcd U = testing::random_unitary(rng, n), V = testing::random_unitary(rng, n);
    double previous = kInfinity;
    for (double p : {1.0, 4.0 / 3.0, 2.0, 3.0, 4.0, kInfinity}) {
      const double a = schatten_norm(A, p);
      CHECK(std::abs(schatten_norm(U * A * V, p) - a) <= 1e-10 * a);
      CHECK(schatten_norm(A + B, p) <= a + schatten_norm(B, p) + 1e-10);
      CHECK(a <= previous + 1e-12);
      previous = a;
    }
  }
  CHECK_THROWS(schatten_norm(Eigen::MatrixXcd::Identity(2, 2), 0.0));
}

TEST_CASE("parse and format exponents") {
  CHECK(parse_exponent("4/3") == 4.0 / 3.0);
  CHECK(parse_exponent("inf") == kInfinity);
  CHECK(parse_exponent("2.5") == 2.5);
  CHECK_THROWS(parse_exponent("x"));
  CHECK_THROWS(parse_exponent("1/0"));
  CHECK(format_exponent(kInfinity) == "inf");
  CHECK(format_exponent(3.0) == "3");
}

TEST_CASE("abs_op") {
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2, 2);
  D(0, 0) = -3.0;
  D(1, 1) = Complex(0, 4);
  const Eigen::MatrixXcd absD = abs_op(D);
  CHECK(std::abs(absD(0, 0) - 3.0) < 1e-12);
  CHECK(std::abs(absD(1, 1) - 4.0) < 1e-12);
  CHECK(std::abs(absD(0, 1)) < 1e-12);

  std::mt19937_64 rng(3);
  const Eigen::MatrixXcd G = testing::gaussian(rng, 6, 6);
  const Eigen::MatrixXcd P = G.adjoint() * G;
  CHECK((abs_op(P) - P).norm() < 1e-10 * P.norm());

  const Eigen::MatrixXcd A = testing::gaussian(rng, 7, 5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(abs_op(A));
  Eigen::VectorXd ev = eig.eigenvalues();
  Eigen::VectorXd sv = singular_values(A);
  std::sort(ev.data(), ev.data() + ev.size());
  std::sort(sv.data(), sv.data() + sv.size());
  CHECK((ev - sv).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("cs_gap") {
  std::mt19937_64 rng(4);
  // scalar sequences: the classical inequality
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Eigen::MatrixXcd> a, c;
    for (int k = 0; k < 5; ++k) {
      a.push_back(testing::gaussian(rng, 1, 1));
      c.push_back(testing::gaussian(rng, 1, 1));
    }
    CHECK(cs_gap(a, c) >= -1e-12);
  }
  // one-term sequence a = c = A
  const Eigen::MatrixXcd A = testing::gaussian(rng, 4, 4);
  const Eigen::MatrixXcd AA = A.adjoint() * A;
  const std::vector<Eigen::MatrixXcd> one{A};
  const double top = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(AA).eigenvalues().maxCoeff();
  const Eigen::MatrixXcd gap = top * AA - AA * AA;
  const double expect = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(gap).eigenvalues().minCoeff();
  CHECK(std::abs(cs_gap(one, one) - expect) < 1e-10 * top * top);
  CHECK(cs_gap(one, one) >= -1e-10);
  // randomized PSD test
  for (int trial = 0; trial < 300; ++trial) {
    const Index rows = testing::uniform(rng, 1, 8), ac = testing::uniform(rng, 1, 8),
                cc = testing::uniform(rng, 1, 8);
    std::vector<Eigen::MatrixXcd> a, c;
    for (Index k = testing::uniform(rng, 1, 16); k > 0; --k) {
      a.push_back(testing::gaussian(rng, rows, ac));
      c.push_back(testing::gaussian(rng, rows, cc));
    }
    CHECK(cs_gap(a, c) >= -1e-10);
  }
  const std::vector<Eigen::MatrixXcd> longer{A, A};
  CHECK_THROWS(cs_gap(one, longer));
}

TEST_CASE("lp_sp_norm") {
  std::mt19937_64 rng(5);
  const Box w = Box::interval(-2, 3);
  const LabeledMatrix A = LabeledMatrix::square(w, testing::gaussian(rng, 5, 5));
  const MatTrigPoly constant = MatTrigPoly::constant(1, A);
  const MatTrigPoly image = pi_embed(A);
  for (double p : {4.0 / 3.0, 2.0, 3.0, kInfinity}) {
    const double expect = schatten_norm(A, p);
    CHECK(std::abs(lp_sp_norm(constant, p, QuadratureGrid(1, 3)) - expect) < 1e-12 * expect);
    for (int q : {1, 7, 17, 40})
      CHECK(std::abs(lp_sp_norm(image, p, QuadratureGrid(1, q)) - expect) < 1e-12 * expect);
  }
  MatTrigPoly z(1, Box::interval(0, 1), Box::interval(0, 1));
  z.set({1}, Eigen::MatrixXcd::Constant(1, 1, 1.0));
  for (double p : {1.0, 2.0, 5.0, kInfinity}) CHECK(lp_sp_norm(z, p, QuadratureGrid(1, 9)) == doctest::Approx(1.0));
}

TEST_CASE("square_function_norm") {
  std::mt19937_64 rng(6);
  const Box w = Box::interval(0, 3);
  MatTrigPoly f(1, w, w);
  for (Index n : {4, 5, -6, 7}) f.set({n}, testing::gaussian(rng, 3, 3));
  const QuadratureGrid grid = QuadratureGrid::for_poly(f);
  const std::vector<MatTrigPoly> single{f};
  for (double p : {2.0, 3.0, 4.0}) {
    CHECK(square_function_norm(single, p, grid, SquareSide::column) ==
          doctest::Approx(lp_sp_norm(f, p, grid)).epsilon(1e-12));
    std::vector<MatTrigPoly> blocks;
    for (int j = 0; j <= 4; ++j) blocks.push_back(freq_project(f, FrequencyRegion::dyadic({j, 1})));
    CHECK(square_function_norm_cr(blocks, p, grid) == doctest::Approx(lp_sp_norm(f, p, grid)).epsilon(1e-12));
  }
  // p = 2: trace additivity
  MatTrigPoly g(1, w, w);
  for (Index n = -7; n <= 7; ++n) g.set({n}, testing::gaussian(rng, 3, 3));
  std::vector<MatTrigPoly> parts;
  double sum = 0.0;
  for (int j = 0; j <= 3; ++j) {
    parts.push_back(freq_project(g, FrequencyRegion::dyadic({j, 1})));
    sum += std::pow(lp_sp_norm(parts.back(), 2.0, QuadratureGrid::for_poly(g)), 2);
  }
  for (auto side : {SquareSide::column, SquareSide::row})
    CHECK(std::abs(square_function_norm(parts, 2.0, QuadratureGrid::for_poly(g), side) - std::sqrt(sum)) <
          1e-10 * std::sqrt(sum));
  CHECK_THROWS(square_function_norm(parts, 1.5, QuadratureGrid::for_poly(g), SquareSide::column));
}
