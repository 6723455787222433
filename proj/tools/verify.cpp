#include <algorithm>
#include <random>

#include "schurmarc/cli.hpp"
#include "schurmarc/estimator.hpp"
#include "schurmarc/schatten.hpp"
#include "schurmarc/transference.hpp"

namespace schurmarc {

namespace {

using Rng = std::mt19937_64;

Rng suite_rng(std::uint64_t seed, std::uint32_t suite, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), suite,
                    static_cast<std::uint32_t>(trial)};
  return Rng(seq);
}

Eigen::MatrixXcd gaussian(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd A(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) A(i, j) = Complex(n(rng), n(rng));
  return A;
}

Index uniform(Rng& rng, Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng); }

DiscreteSymbol random_symbol(Rng& rng, int d) {
  CatalogParams params;
  params.dim = d;
  params.seed = rng();
  return discrete_catalog("random", params);
}

/// random coefficients on every frequency of the hull of E_j
MatTrigPoly random_poly(Rng& rng, int d, int j, Index side) {
  const Box rows = Box::cube(d, 0, side);
  MatTrigPoly f(d, rows, rows);
  dyadic_hull({j + 1, d}).for_each([&](const Point& n) { f.set(n, gaussian(rng, rows.size(), rows.size())); });
  return f;
}

double relative(double diff, double scale) { return diff / std::max(1.0, scale); }

SuiteResult transference_suite(const VerifyOptions& o) {
  SuiteResult r{"transference", o.trials, 0.0, o.tolerance};
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = suite_rng(o.seed, 1, t);
    const int d = static_cast<int>(uniform(rng, 1, 2));
    const Index side = d == 1 ? uniform(rng, 1, 16) : uniform(rng, 1, 4);
    const Box window = Box::cube(d, -uniform(rng, 0, side), side);
    const DiscreteSymbol m = random_symbol(rng, d);
    const LabeledMatrix A = LabeledMatrix::square(window, gaussian(rng, window.size(), window.size()));
    LabeledMatrix SA = apply_schur(m, A);
    if (o.inject_fault && t == 0) SA.entries()(0, 0) += 1.0;
    const MatTrigPoly f = pi_embed(A), target = pi_embed(SA);
    const double scale = max_abs_coefficient(target);
    for (auto side_kind : {MultiplierSide::left, MultiplierSide::right})
      r.max_residual = std::max(
          r.max_residual, relative(max_abs_difference(apply_fourier_multiplier(m, f, side_kind), target), scale));
  }
  return r;
}

SuiteResult sbp_1d_suite(const VerifyOptions& o) {
  SuiteResult r{"summation_by_parts_1d", o.trials, 0.0, o.tolerance};
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = suite_rng(o.seed, 2, t);
    const int j = static_cast<int>(uniform(rng, 1, 5));
    const DiscreteSymbol m = random_symbol(rng, 1);
    const MatTrigPoly f = random_poly(rng, 1, j, uniform(rng, 1, 3));
    for (auto side : {MultiplierSide::left, MultiplierSide::right}) {
      const MatTrigPoly target = freq_project(apply_fourier_multiplier(m, f, side), FrequencyRegion::dyadic({j, 1}));
      const MatTrigPoly total = summation_by_parts_1d(m, f, j, side).total();
      r.max_residual =
          std::max(r.max_residual, relative(max_abs_difference(total, target), max_abs_coefficient(target)));
    }
  }
  return r;
}

SuiteResult sbp_2d_suite(const VerifyOptions& o) {
  SuiteResult r{"summation_by_parts_2d", o.trials, 0.0, o.tolerance};
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = suite_rng(o.seed, 3, t);
    const int j = static_cast<int>(uniform(rng, 1, 4));
    const DiscreteSymbol m = random_symbol(rng, 2);
    const MatTrigPoly f = random_poly(rng, 2, j, uniform(rng, 1, 2));
    const auto side = uniform(rng, 0, 1) ? MultiplierSide::left : MultiplierSide::right;
    const MatTrigPoly target = freq_project(apply_fourier_multiplier(m, f, side), FrequencyRegion::dyadic({j, 2}));
    MatTrigPoly total(2, f.rows(), f.cols());
    for (int rect = 1; rect <= 4; ++rect) total += summation_by_parts_2d(m, f, j, rect, side).total();
    r.max_residual = std::max(r.max_residual, relative(max_abs_difference(total, target), max_abs_coefficient(target)));
  }
  return r;
}

SuiteResult fundamental_suite(const VerifyOptions& o) {
  SuiteResult r{"fundamental_theorem", o.trials, 0.0, o.tolerance};
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = suite_rng(o.seed, 4, t);
    const int d = static_cast<int>(uniform(rng, 1, 3));
    Point s(static_cast<std::size_t>(d)), e(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      s[static_cast<std::size_t>(i)] = uniform(rng, -3, 3);
      e[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)] + uniform(rng, 1, 5);
    }
    const std::uint64_t key = rng();
    const LatticeFunction M = [key](const Point& n) { return hashed_complex(key, n); };
    Box(s, e).for_each([&](const Point& n) {
      r.max_residual = std::max(r.max_residual, std::abs(fundamental_theorem_expand(M, s, e, n) - M(n)));
    });
  }
  return r;
}

SuiteResult cauchy_schwarz_suite(const VerifyOptions& o) {
  SuiteResult r{"cauchy_schwarz_gap", o.trials, 0.0, o.tolerance};
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = suite_rng(o.seed, 5, t);
    const Index rows = uniform(rng, 1, 8), ac = uniform(rng, 1, 8), cc = uniform(rng, 1, 8);
    const int len = static_cast<int>(uniform(rng, 1, 16));
    std::vector<Eigen::MatrixXcd> a, c;
    for (int k = 0; k < len; ++k) {
      a.push_back(gaussian(rng, rows, ac));
      c.push_back(gaussian(rng, rows, cc));
    }
    r.max_residual = std::max(r.max_residual, -cs_gap(a, c));
  }
  return r;
}

}  // namespace

std::vector<SuiteResult> verify_identities(const VerifyOptions& opts) {
  return {transference_suite(opts), sbp_1d_suite(opts), sbp_2d_suite(opts), fundamental_suite(opts),
          cauchy_schwarz_suite(opts)};
}

}  // namespace schurmarc
