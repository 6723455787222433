#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "schurmarc/estimator.hpp"
#include "schurmarc/transference.hpp"

using namespace schurmarc;

namespace {

LabeledMatrix random_matrix(std::mt19937_64& rng, const Box& w) {
  return LabeledMatrix::square(w, testing::gaussian(rng, w.size(), w.size()));
}

/// direct oracle: the coefficient of z^n in pi(A) keeps the entries with s - t = n
MatTrigPoly pi_oracle(const LabeledMatrix& A) {
  MatTrigPoly f(A.rows().dim(), A.rows(), A.cols());
  A.rows().for_each([&](const Point& s) {
    A.cols().for_each([&](const Point& t) {
      Point n(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) n[i] = s[i] - t[i];
      Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(A.rows().size(), A.cols().size());
      c(A.rows().linear_index(s), A.cols().linear_index(t)) = A.at(s, t);
      f.add(n, c);
    });
  });
  return f;
}

MatTrigPoly random_poly(std::mt19937_64& rng, int d, Index radius, Index side) {
  const Box rows = Box::cube(d, 0, side);
  MatTrigPoly f(d, rows, rows);
  Box::cube(d, -radius, radius + 1).for_each([&](const Point& n) {
    f.set(n, testing::gaussian(rng, rows.size(), rows.size()));
  });
  return f;
}

}  // namespace

TEST_CASE("pi_embed") {
  std::mt19937_64 rng(1);
  const Box w = Box::interval(-2, 4);
  Eigen::VectorXcd diag = testing::gaussian(rng, 6, 1);
  const LabeledMatrix D = LabeledMatrix::square(w, diag.asDiagonal());
  const MatTrigPoly fd = pi_embed(D);
  CHECK(fd.coefficients().size() == 1);
  CHECK(fd.coefficient({0}) == D.entries());

  LabeledMatrix E(w, w);
  E.at({3}, {-1}) = 2.0;
  const MatTrigPoly fe = pi_embed(E);
  CHECK(fe.coefficients().size() == 1);
  CHECK(fe.coefficient({4}) == E.entries());

  const LabeledMatrix A = random_matrix(rng, w), B = random_matrix(rng, w);
  CHECK(max_abs_difference(pi_embed(A), pi_oracle(A)) == 0.0);
  const LabeledMatrix AB = LabeledMatrix::square(w, A.entries() * B.entries());
  CHECK(max_abs_difference(pi_embed(AB), pi_embed(A) * pi_embed(B)) < 1e-12);
  CHECK(is_pi_image(pi_embed(A)));
  MatTrigPoly broken = pi_embed(A);
  broken.add({0}, Eigen::MatrixXcd::Ones(6, 6));
  CHECK_FALSE(is_pi_image(broken));
}

TEST_CASE("diag_symbols") {
  const Box w = Box::interval(-3, 3);
  const auto rnd = discrete_catalog("random", {.seed = 4});
  const auto [l0, r0] = diag_symbols(rnd, {0}, w);
  CHECK(l0.diag == r0.diag);
  for (Index s = -3; s < 3; ++s) CHECK(l0.diag(s + 3) == rnd({s}, {s}));
  const auto [l1, r1] = diag_symbols(discrete_catalog("constant_one"), {5}, w);
  CHECK(l1.diag == Eigen::VectorXcd::Ones(6));
  CHECK(r1.diag == Eigen::VectorXcd::Ones(6));
  const auto [lt, rt] = diag_symbols(discrete_catalog("triangular"), {2}, w);
  CHECK(lt.diag == Eigen::VectorXcd::Ones(6));
  const auto [ln, rn] = diag_symbols(rnd, {2}, w);
  for (Index s = -3; s < 3; ++s) {
    CHECK(ln.diag(s + 3) == rnd({s}, {s - 2}));
    CHECK(rn.diag(s + 3) == rnd({s + 2}, {s}));
  }
}

TEST_CASE("transference identity") {
  std::mt19937_64 rng(2);
  const MatTrigPoly f = pi_embed(random_matrix(rng, Box::interval(0, 5)));
  CHECK(max_abs_difference(apply_fourier_multiplier(discrete_catalog("constant_one"), f), f) == 0.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = static_cast<int>(testing::uniform(rng, 1, 2));
    const Index side = d == 1 ? testing::uniform(rng, 1, 16) : testing::uniform(rng, 1, 4);
    const Box w = Box::cube(d, -testing::uniform(rng, 0, side), side);
    const auto m = discrete_catalog(trial % 2 ? "random" : "random_toeplitz", {.dim = d, .seed = rng()});
    const LabeledMatrix A = random_matrix(rng, w);
    const MatTrigPoly target = pi_oracle(apply_schur(m, A));
    for (auto side_kind : {MultiplierSide::left, MultiplierSide::right})
      CHECK(max_abs_difference(apply_fourier_multiplier(m, pi_embed(A), side_kind), target) <=
            1e-12 * max_abs_coefficient(target));
  }
}

TEST_CASE("frequency projections") {
  std::mt19937_64 rng(3);
  const MatTrigPoly f = random_poly(rng, 2, 5, 2);
  CHECK(max_abs_difference(freq_project(f, FrequencyRegion::box(Box::cube(2, -5, 6))), f) == 0.0);
  CHECK(freq_project(random_poly(rng, 1, 6, 2), FrequencyRegion::open_interval(3, 4)).empty());
  const MatTrigPoly g = random_poly(rng, 1, 10, 2);
  const MatTrigPoly between = freq_project(g, FrequencyRegion::open_interval(4, -2));
  for (const auto& [n, c] : between.coefficients()) CHECK((n[0] > -2 && n[0] < 4));
  CHECK(between.coefficients().size() == 5);
  const Box R1 = Box::cube(2, -3, 2), R2 = Box::cube(2, -1, 5);
  const auto p1 = FrequencyRegion::box(R1), p2 = FrequencyRegion::box(R2);
  CHECK(max_abs_difference(freq_project(freq_project(f, p1), p1), freq_project(f, p1)) == 0.0);
  CHECK(max_abs_difference(freq_project(freq_project(f, p1), p2),
                           freq_project(f, FrequencyRegion::box(R1.intersect(R2)))) == 0.0);
  // dyadic blocks of a random polynomial add back up to it
  MatTrigPoly sum(2, f.rows(), f.cols());
  for (int j = 0; j <= 4; ++j) sum += freq_project(f, FrequencyRegion::dyadic({j, 2}));
  CHECK(max_abs_difference(sum, f) == 0.0);
}

TEST_CASE("smooth cutoff") {
  for (int d : {1, 2}) {
    for (int j = 1; j <= 6; ++j) {
      const double scale = std::ldexp(1.0, j);
      // plateau on [1/2, sqrt d] 2^j
      for (double r : {0.5, 0.75, 1.0, std::sqrt(d) - 1e-9}) CHECK(smooth_cutoff_weight(r * scale, j, d) == 1.0);
      CHECK(smooth_cutoff_weight(2.0 * std::sqrt(d) * scale + 1e-9, j, d) == 0.0);
      CHECK(smooth_cutoff_weight(0.25 * scale, j, d) == 0.0);
      const double mid = smooth_cutoff_weight(0.4 * scale, j, d);
      CHECK((mid > 0.0 && mid < 1.0));
    }
    CHECK(smooth_cutoff_weight(0.0, 0, d) == 1.0);
  }
  std::mt19937_64 rng(4);
  for (int d : {1, 2})
    for (int j = 0; j <= 6; ++j) {
      const Index radius = d == 1 ? (Index{4} << j) : std::min<Index>(Index{4} << j, 40);
      const MatTrigPoly f = random_poly(rng, d, radius, 1);
      const auto block = FrequencyRegion::dyadic({j, d});
      CHECK(max_abs_difference(freq_project(smooth_cutoff(f, j), block), freq_project(f, block)) == 0.0);
      const MatTrigPoly inside = freq_project(f, block);
      CHECK(max_abs_difference(smooth_cutoff(inside, j), inside) == 0.0);
      // far frequencies vanish
      const MatTrigPoly cut = smooth_cutoff(f, j);
      for (const auto& [n, c] : cut.coefficients()) {
        double r2 = 0.0;
        for (Index v : n) r2 += static_cast<double>(v * v);
        CHECK(std::sqrt(r2) <= 2.0 * std::sqrt(d) * std::ldexp(1.0, j));
      }
    }
}

TEST_CASE("summation by parts in one dimension") {
  std::mt19937_64 rng(5);
  const MatTrigPoly f = random_poly(rng, 1, 40, 3);
  for (int j = 1; j <= 5; ++j) {
    const auto sbp = summation_by_parts_1d(discrete_catalog("constant_one"), f, j);
    for (const auto& part : sbp.differences) CHECK(max_abs_coefficient(part) == 0.0);
    CHECK(max_abs_difference(sbp.total(), freq_project(f, FrequencyRegion::dyadic({j, 1}))) == 0.0);
  }
  for (int trial = 0; trial < 30; ++trial) {
    const int j = static_cast<int>(testing::uniform(rng, 1, 5));
    const auto m = discrete_catalog("random_toeplitz", {.seed = rng()});
    const Box w = Box::interval(-(Index{1} << j), Index{1} << j);
    const MatTrigPoly g = pi_embed(random_matrix(rng, w));
    for (auto side : {MultiplierSide::left, MultiplierSide::right}) {
      const MatTrigPoly target =
          freq_project(apply_fourier_multiplier(m, g, side), FrequencyRegion::dyadic({j, 1}));
      CHECK(max_abs_difference(summation_by_parts_1d(m, g, j, side).total(), target) <=
            1e-12 * max_abs_coefficient(target));
    }
  }
  CHECK_THROWS(summation_by_parts_1d(discrete_catalog("constant_one"), f, 0));
}

TEST_CASE("summation by parts in two dimensions") {
  std::mt19937_64 rng(6);
  const MatTrigPoly f = random_poly(rng, 2, 9, 1);
  for (int j = 1; j <= 3; ++j) {
    const auto sbp = summation_by_parts_2d(discrete_catalog("constant_one", {.dim = 2}), f, j, 1);
    for (int k = 1; k < 4; ++k) CHECK(max_abs_coefficient(sbp.parts[k]) == 0.0);
    CHECK(max_abs_difference(sbp.parts[0], freq_project(f, FrequencyRegion::box(split_block_2d(j)[0]))) == 0.0);
  }
  // separable and non-Toeplitz symbols, every rectangle
  const auto g = DiscreteSymbol::toeplitz(
      2, [](const Point& n) { return Complex(std::tanh(0.3 * n[0]), 0.1 * n[1]) * std::cos(0.2 * n[1]); }, "sep");
  for (int trial = 0; trial < 12; ++trial) {
    const int j = static_cast<int>(testing::uniform(rng, 1, 4));
    const auto m = trial % 3 == 0 ? g : discrete_catalog("random", {.dim = 2, .seed = rng()});
    const MatTrigPoly h = random_poly(rng, 2, Index{1} << j, 2);
    for (auto side : {MultiplierSide::left, MultiplierSide::right}) {
      const MatTrigPoly full = apply_fourier_multiplier(m, h, side);
      MatTrigPoly total(2, h.rows(), h.cols());
      for (int r = 1; r <= 4; ++r) {
        const auto sbp = summation_by_parts_2d(m, h, j, r, side);
        const MatTrigPoly rect = freq_project(full, FrequencyRegion::box(split_block_2d(j)[r - 1]));
        CHECK(max_abs_difference(sbp.total(), rect) <= 1e-12 * std::max(1.0, max_abs_coefficient(rect)));
        total += sbp.total();
      }
      const MatTrigPoly target = freq_project(full, FrequencyRegion::dyadic({j, 2}));
      CHECK(max_abs_difference(total, target) <= 1e-12 * max_abs_coefficient(target));
    }
  }
}

TEST_CASE("Littlewood-Paley experiment") {
  std::mt19937_64 rng(7);
  const Box w = Box::interval(0, 3);
  MatTrigPoly single(1, w, w);
  for (Index n : {8, -9, 12, 15}) single.set({n}, testing::gaussian(rng, 3, 3));
  const auto grid = QuadratureGrid::for_poly(single);
  for (double p : {2.0, 4.0}) {
    const auto rep = lp_experiment(single, p, grid);
    CHECK(rep.block_ratio == 1.0);
    CHECK(rep.reference == doctest::Approx(p * p / (p - 1)));
  }
  const MatTrigPoly f = random_poly(rng, 1, 20, 3);
  const auto rep2 = lp_experiment(f, 2.0, QuadratureGrid::for_poly(f));
  CHECK(std::abs(rep2.block_ratio - 1.0) < 1e-10);
  const auto rep4 = lp_experiment(f, 4.0, QuadratureGrid::for_poly(f), {{Box::interval(-20, 0), Box::interval(0, 21)}});
  CHECK(std::isfinite(rep4.block_ratio));
  CHECK(std::isfinite(rep4.smooth_ratio));
  REQUIRE(rep4.rectangle_ratios.size() == 1);
  CHECK(std::isfinite(rep4.rectangle_ratios[0]));
  const auto id = lp_experiment(pi_embed(LabeledMatrix::identity(w)), 3.0, QuadratureGrid(1, 5));
  CHECK(std::isfinite(id.block_ratio));
  CHECK(std::isfinite(id.smooth_ratio));
}
