#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "schurmarc/estimator.hpp"
#include "schurmarc/schatten.hpp"

using namespace schurmarc;

namespace {

double ratio(const DiscreteSymbol& m, const LabeledMatrix& A, double p) {
  return schatten_norm(apply_schur(m, A), p) / schatten_norm(A, p);
}

SearchBudget small_budget(int threads = 1) {
  SearchBudget b;
  b.restarts = 4;
  b.iterations = 40;
  b.threads = threads;
  return b;
}

}  // namespace

TEST_CASE("apply_schur") {
  std::mt19937_64 rng(21);
  const Box w = Box::interval(-1, 2);
  CatalogParams params;
  params.u = {1.0, Complex(0, 2), -0.5};
  params.v = {3.0, 1.0, Complex(1, 1)};
  params.offset = -1;
  const auto m = discrete_catalog("rank_one", params);
  const LabeledMatrix A = LabeledMatrix::square(w, testing::gaussian(rng, 3, 3));
  Eigen::VectorXcd u(3), v(3);
  u << params.u[0], params.u[1], params.u[2];
  v << params.v[0], params.v[1], params.v[2];
  const Eigen::MatrixXcd expected = u.asDiagonal() * A.entries() * v.asDiagonal();
  CHECK((apply_schur(m, A).entries() - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(apply_schur(discrete_catalog("triangular"), A).entries().isLowerTriangular());
  const auto amp = amplify(discrete_catalog("random", {.seed = 3}));
  CHECK(amp.dim() == 2);
  CHECK(amp({1, 5}, {2, -7}) == discrete_catalog("random", {.seed = 3})({1}, {2}));
}

TEST_CASE("exact norms are reached") {
  const Box w = Box::interval(-8, 8);
  for (double p : {4.0 / 3.0, 3.0, 6.0}) {
    const auto one = norm_lower_bound(discrete_catalog("constant_one"), w, p, small_budget(), 1);
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto rnd = discrete_catalog("random", {.seed = 9});
  const auto r2 = norm_lower_bound(rnd, w, 2.0, small_budget(), 2);
  const double top = tabulate(rnd, w, w).cwiseAbs().maxCoeff();
  CHECK(r2.value == doctest::Approx(top).epsilon(1e-12));

  CatalogParams params;
  params.u = {0.5, Complex(0, -2), 1.0, 0.25};
  params.v = {1.0, -3.0, Complex(0.5, 0.5), 0.1};
  const auto rank = discrete_catalog("rank_one", params);
  for (double p : {1.5, 4.0}) {
    const auto e = norm_lower_bound(rank, Box::interval(0, 4), p, small_budget(), 3);
    CHECK(e.value == doctest::Approx(2.0 * 3.0).epsilon(1e-10));
    CHECK(e.value <= 6.0 * (1.0 + 1e-12));
  }
}

TEST_CASE("witness consistency and invariances") {
  const Box w = Box::interval(-6, 6);
  const auto lac = discrete_catalog("lacunary_toeplitz", {.seed = 4});
  const auto e = norm_lower_bound(lac, w, 4.0, small_budget(), 5);
  CHECK(e.value == doctest::Approx(ratio(lac, e.witness, 4.0)).epsilon(1e-12));
  CHECK(e.value >= 1.0 - 1e-12);
  // p and its conjugate give the same norm (duality by transposition)
  const auto tri = discrete_catalog("triangular");
  SearchBudget b = small_budget();
  b.restarts = 6;
  b.iterations = 100;
  const double v4 = norm_lower_bound(tri, w, 4.0, b, 6).value;
  const double v43 = norm_lower_bound(tri, w, 4.0 / 3.0, b, 6).value;
  CHECK(v4 == doctest::Approx(v43).epsilon(1e-6));
  // |lambda| scaling
  const auto scaled = norm_lower_bound(tri.scaled(Complex(0, 2.5)), w, 4.0, b, 6).value;
  CHECK(scaled == doctest::Approx(2.5 * v4).epsilon(1e-9));
}

TEST_CASE("determinism") {
  const Box w = Box::interval(-5, 5);
  const auto m = discrete_catalog("random", {.seed = 8});
  const auto a = norm_lower_bound(m, w, 3.0, small_budget(1), 42);
  const auto b = norm_lower_bound(m, w, 3.0, small_budget(1), 42);
  const auto c = norm_lower_bound(m, w, 3.0, small_budget(3), 42);
  CHECK(a.value == b.value);
  CHECK(a.value == c.value);
  CHECK(a.witness.entries() == c.witness.entries());
  const auto zero = norm_lower_bound(discrete_catalog("constant_one").scaled(0.0), w, 3.0, small_budget(), 1);
  CHECK(zero.zero_symbol);
  CHECK(zero.value == 0.0);
}

TEST_CASE("complete boundedness lower bounds") {
  const Box w = Box::interval(-4, 4);
  const auto tri = discrete_catalog("triangular");
  const auto k1 = cb_lower_bound(tri, w, 4.0, 1, small_budget(), 7);
  const auto plain = norm_lower_bound(tri, w, 4.0, small_budget(), 7);
  CHECK(k1.value == plain.value);
  const auto k2 = cb_lower_bound(tri, w, 4.0, 2, small_budget(), 7);
  CHECK(k2.value >= k1.value);
  CHECK(k2.amplification == 2);
  CHECK(k2.witness.rows().dim() == 2);
  CHECK_THROWS(cb_lower_bound(tri, w, 4.0, 0, small_budget(), 7));
}

TEST_CASE("growth experiment") {
  SearchBudget b = small_budget();
  b.growth_iterations = 10;
  const auto rows = growth_experiment(discrete_catalog("triangular"), {4.0, 1.5}, {8, 4, 16}, b, 1);
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].reference == doctest::Approx(reference_bound(rows[i].p, 3)));
    CHECK(rows[i].ratio == doctest::Approx(rows[i].estimate / rows[i].reference));
    if (i % 3 != 0) {
      CHECK(rows[i].N > rows[i - 1].N);
      CHECK(rows[i].estimate >= rows[i - 1].estimate * (1.0 - 1e-12));
    }
  }
  CHECK(reference_bound(2.0, 3) == 64.0);
  const auto ones = growth_experiment(discrete_catalog("constant_one"), {3.0}, {4, 8}, b, 1);
  for (const auto& r : ones) CHECK(r.ratio == doctest::Approx(1.0 / reference_bound(3.0, 3)).epsilon(1e-12));
}

TEST_CASE("guards") {
  const auto tri = discrete_catalog("triangular");
  CHECK_THROWS_AS(norm_lower_bound(tri, Box::interval(0, 2000), 3.0, small_budget(), 1), std::length_error);
  CHECK_THROWS_AS(norm_lower_bound(tri, Box::interval(0, 8), 1.0, small_budget(), 1), std::invalid_argument);
  CHECK_THROWS_AS(norm_lower_bound(tri, Box::interval(0, 8), kInfinity, small_budget(), 1), std::invalid_argument);
}
