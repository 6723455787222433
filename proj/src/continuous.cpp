#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "schurmarc/marcinkiewicz.hpp"
#include "schurmarc/quadrature.hpp"

namespace schurmarc {

namespace {

/// Integral over u in [u0, u1), v in [0, 1) of M((a+u)h, (b+u+v)h), with the v
/// range split where y crosses the grid line (b+1)h.
Complex cell_integral(const ContinuousSymbol& M, ParallelogramIndex c, double u0, double u1, int order) {
  const auto& rule = gauss_legendre(order);
  const double h = std::ldexp(1.0, -c.k);
  const double a = static_cast<double>(c.a), b = static_cast<double>(c.b);
  Complex total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = u0 + (u1 - u0) * rule.nodes[i];
    const double x = (a + u) * h;
    Complex inner = 0.0;
    for (const auto& [v0, v1] : {std::pair{0.0, 1.0 - u}, std::pair{1.0 - u, 1.0}}) {
      if (v1 <= v0) continue;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double v = v0 + (v1 - v0) * rule.nodes[j];
        const double y = (b + u + v) * h;
        inner += (v1 - v0) * rule.weights[j] * M(std::span<const double>(&x, 1), std::span<const double>(&y, 1));
      }
    }
    total += (u1 - u0) * rule.weights[i] * inner;
  }
  return total;
}

Complex refine(const ContinuousSymbol& M, ParallelogramIndex c, double u0, double u1, const DiscretizationOptions& o,
               int depth) {
  const Complex coarse = cell_integral(M, c, u0, u1, o.order);
  const Complex fine = cell_integral(M, c, u0, u1, 2 * o.order);
  if (!std::isfinite(fine.real()) || !std::isfinite(fine.imag()))
    throw QuadratureError("cell average: non-finite symbol value in D_{" + std::to_string(c.k) + "," +
                          std::to_string(c.a) + "," + std::to_string(c.b) + "}");
  if (std::abs(fine - coarse) <= o.tolerance * (u1 - u0)) return fine;
  if (depth >= o.max_subdivisions)
    throw QuadratureError("cell average over D_{" + std::to_string(c.k) + "," + std::to_string(c.a) + "," +
                          std::to_string(c.b) + "} did not settle: refinement gap " +
                          std::to_string(std::abs(fine - coarse)));
  const double mid = 0.5 * (u0 + u1);
  return refine(M, c, u0, mid, o, depth + 1) + refine(M, c, mid, u1, o, depth + 1);
}

}  // namespace

Complex cell_average(const ContinuousSymbol& M, ParallelogramIndex cell, const DiscretizationOptions& opts) {
  if (M.dim() != 1) throw std::invalid_argument("cell_average: parallelogram cells need d = 1");
  if (cell.k < 0) throw std::invalid_argument("cell_average: k must be nonnegative");
  if (opts.order < 1) throw std::invalid_argument("cell_average: order must be positive");
  // the cell is the image of the unit square under a unit-determinant shear
  return refine(M, cell, 0.0, 1.0, opts, 0);
}

DiscreteSymbol discretize_continuous(const ContinuousSymbol& M, int k, const Box& rows, const Box& cols,
                                     const DiscretizationOptions& opts) {
  if (rows.dim() != 1 || cols.dim() != 1) throw std::invalid_argument("discretize_continuous: windows must be 1D");
  Eigen::MatrixXcd table(rows.size(), cols.size());
  for (Index i = 0; i < rows.size(); ++i)
    for (Index j = 0; j < cols.size(); ++j)
      table(i, j) = cell_average(M, {k, rows.lo()[0] + i, cols.lo()[0] + j}, opts);
  return DiscreteSymbol::dense(LabeledMatrix(rows, cols, std::move(table)),
                               M.name() + "@k" + std::to_string(k));
}

DiscreteSymbol discretized_symbol(const ContinuousSymbol& M, int k, const DiscretizationOptions& opts) {
  if (M.dim() != 1) throw std::invalid_argument("discretized_symbol: parallelogram cells need d = 1");
  return DiscreteSymbol::callback(
      1, [M, k, opts](const Point& s, const Point& t) { return cell_average(M, {k, s[0], t[0]}, opts); },
      M.name() + "@k" + std::to_string(k));
}

namespace {

/// Integral of g over {2^j < |t|_inf <= 2^{j+1}} in r dimensions, split at the
/// shell boundaries.
double shell_integral(const std::function<double(const std::vector<double>&)>& g, int r, int j, double tol) {
  const double inner = std::ldexp(1.0, j), outer = 2.0 * inner;
  std::vector<double> t(static_cast<std::size_t>(r), 0.0);
  // coordinate i; `outside` means some earlier |t_l| already exceeds 2^j
  std::function<double(int, bool, double)> integrate = [&](int i, bool outside, double tol_i) -> double {
    // inner noise has to stay well below what this level resolves
    const double inner_tol = tol_i / (200.0 * outer);
    auto body = [&](double x, bool out) {
      t[static_cast<std::size_t>(i)] = x;
      return i + 1 == r ? g(t) : integrate(i + 1, out, inner_tol);
    };
    const double pieces = 3.0;
    double acc = 0.0;
    acc += adaptive_simpson([&](double x) { return body(x, true); }, -outer, -inner, tol_i / pieces);
    acc += adaptive_simpson([&](double x) { return body(x, true); }, inner, outer, tol_i / pieces);
    if (outside || i + 1 < r)
      acc += adaptive_simpson([&](double x) { return body(x, outside); }, -inner, inner, tol_i / pieces);
    return acc;
  };
  return integrate(0, false, tol);
}

}  // namespace

ConditionReport check_continuous(const ContinuousSymbol& M, int j_min, int j_max, const ContinuousCheckOptions& opts) {
  if (j_min > j_max) throw std::invalid_argument("check_continuous: empty j range");
  if (opts.base_samples < 1) throw std::invalid_argument("check_continuous: need at least one base sample");
  const int d = M.dim();
  ConditionReport r;
  r.checker = "continuous";
  r.symbol = M.name();
  r.dim = d;
  r.level_min = j_min;
  r.level_max = j_max;
  r.partials = M.has_analytic_partials() ? "analytic" : "numeric (central differences, h = " +
                                                            std::to_string(M.step()) + ")";
  std::vector<double> grid;
  for (int i = 0; i < opts.base_samples; ++i)
    grid.push_back(opts.base_samples == 1 ? opts.base_lo
                                          : opts.base_lo + (opts.base_hi - opts.base_lo) * i / (opts.base_samples - 1));
  Box::cube(d, 0, opts.base_samples).for_each([&](const Point& idx) {
    std::vector<double> b(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) b[static_cast<std::size_t>(i)] = grid[static_cast<std::size_t>(idx[i])];
    r.base_samples.push_back(b);
  });

  const auto masks = AlphaMask::all(d);
  for (int j = j_min; j <= j_max; ++j) {
    const double anchor = std::ldexp(1.0, j);
    for (const auto& b : r.base_samples) {
      for (Orientation o : {Orientation::left, Orientation::right}) {
        auto point_pair = [&](const std::vector<double>& t, std::vector<double>& x, std::vector<double>& y) {
          x = b;
          y = b;
          auto& moved = o == Orientation::left ? y : x;
          for (int i = 0; i < d; ++i) moved[static_cast<std::size_t>(i)] += t[static_cast<std::size_t>(i)];
        };
        // sampled sup |M| on the shell corners
        for (double scale : {anchor, 2.0 * anchor})
          for (double sign : {-1.0, 1.0}) {
            std::vector<double> x, y, t(static_cast<std::size_t>(d), sign * scale);
            point_pair(t, x, y);
            r.C1 = std::max(r.C1, std::abs(M(x, y)));
          }
        const int argument = o == Orientation::left ? 1 : 0;
        for (const AlphaMask& alpha : masks) {
          if (alpha.is_zero()) continue;
          const int ra = alpha.count();
          const std::vector<double> rest(static_cast<std::size_t>(d - ra), anchor);
          auto g = [&](const std::vector<double>& ta) {
            std::vector<double> t(static_cast<std::size_t>(d));
            std::size_t ia = 0, ir = 0;
            for (int i = 0; i < d; ++i) t[static_cast<std::size_t>(i)] = alpha[i] ? ta[ia++] : rest[ir++];
            std::vector<double> x, y;
            point_pair(t, x, y);
            return std::abs(M.partial(argument, alpha, x, y));
          };
          const double value = shell_integral(g, ra, j, opts.tolerance);
          r.continuous_table.push_back({j, o, d == 1 ? "t1" : alpha.to_string(), b, value});
          r.A = std::max(r.A, value);
        }
      }
    }
  }
  r.level_sup.assign(static_cast<std::size_t>(j_max - j_min + 1), 0.0);
  for (const auto& e : r.continuous_table) {
    auto& slot = r.level_sup[static_cast<std::size_t>(e.level - j_min)];
    slot = std::max(slot, e.integral);
  }
  return r;
}

}  // namespace schurmarc
