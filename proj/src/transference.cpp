#include "schurmarc/transference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace schurmarc {

DiagonalOp operator*(const DiagonalOp& a, const DiagonalOp& b) {
  if (!(a.window == b.window)) throw std::invalid_argument("DiagonalOp product: window mismatch");
  return {a.window, a.diag.cwiseProduct(b.diag)};
}

DiagonalOp operator-(const DiagonalOp& a, const DiagonalOp& b) {
  if (!(a.window == b.window)) throw std::invalid_argument("DiagonalOp difference: window mismatch");
  return {a.window, a.diag - b.diag};
}

namespace {

Point minus(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point plus(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

/// Coefficients of f with their nonzero rows and columns cached.
struct SparseEntry {
  Index row;
  Index col;
  Complex value;
};

struct SparseCoefficient {
  Point n;
  std::vector<SparseEntry> entries;
};

std::vector<SparseCoefficient> sparse_view(const MatTrigPoly& f) {
  std::vector<SparseCoefficient> out;
  for (const auto& [n, c] : f.coefficients()) {
    SparseCoefficient sc{n, {}};
    for (Index j = 0; j < c.cols(); ++j)
      for (Index i = 0; i < c.rows(); ++i)
        if (c(i, j) != Complex(0.0)) sc.entries.push_back({i, j, c(i, j)});
    if (!sc.entries.empty()) out.push_back(std::move(sc));
  }
  return out;
}

/// A linear combination sum_w weight_w M(k + offset_w) of the diagonal symbol
/// operators M_l or M_r.
struct SymbolCombination {
  std::vector<std::pair<Point, double>> terms;
};

/// result(n) += C fhat(n) (left) or fhat(n) C (right) for the selected
/// coefficients, where C is the combination anchored at k.
void accumulate(MatTrigPoly& result, const DiscreteSymbol& m, const SymbolCombination& comb, const Point& k,
                const std::vector<SparseCoefficient>& coeffs, const std::function<bool(const Point&)>& select,
                MultiplierSide side) {
  const Box& rows = result.rows();
  const Box& cols = result.cols();
  std::vector<Point> shifts;
  for (const auto& [off, w] : comb.terms) shifts.push_back(plus(k, off));
  const bool left = side == MultiplierSide::left;
  // the combination depends on the row (column) and k only
  std::vector<Complex> value(static_cast<std::size_t>(left ? rows.size() : cols.size()));
  std::vector<char> known(value.size(), 0);
  auto combined = [&](Index i) {
    if (!known[static_cast<std::size_t>(i)]) {
      Complex v = 0.0;
      if (left) {
        const Point s = rows.point_at(i);
        for (std::size_t w = 0; w < shifts.size(); ++w) v += comb.terms[w].second * m(s, minus(s, shifts[w]));
      } else {
        const Point t = cols.point_at(i);
        for (std::size_t w = 0; w < shifts.size(); ++w) v += comb.terms[w].second * m(plus(t, shifts[w]), t);
      }
      value[static_cast<std::size_t>(i)] = v;
      known[static_cast<std::size_t>(i)] = 1;
    }
    return value[static_cast<std::size_t>(i)];
  };
  for (const auto& sc : coeffs) {
    if (!select(sc.n)) continue;
    Eigen::MatrixXcd& out = result.coefficient_ref(sc.n);
    for (const auto& e : sc.entries) out(e.row, e.col) += combined(left ? e.row : e.col) * e.value;
  }
}

SymbolCombination value_at(int d) { return {{{Point(d, 0), 1.0}}}; }

}  // namespace

MatTrigPoly pi_embed(const LabeledMatrix& A) {
  if (!A.is_square()) throw std::invalid_argument("pi_embed: A needs a square window");
  const Box& w = A.rows();
  MatTrigPoly f(w.dim(), w, w);
  const auto& a = A.entries();
  std::map<Point, Eigen::MatrixXcd> coeffs;
  for (Index i = 0; i < a.rows(); ++i) {
    const Point s = w.point_at(i);
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == Complex(0.0)) continue;
      auto [it, fresh] = coeffs.try_emplace(minus(s, w.point_at(j)));
      if (fresh) it->second = Eigen::MatrixXcd::Zero(a.rows(), a.cols());
      it->second(i, j) = a(i, j);
    }
  }
  for (auto& [n, c] : coeffs) f.set(n, std::move(c));
  return f;
}

std::pair<DiagonalOp, DiagonalOp> diag_symbols(const DiscreteSymbol& m, const Point& n, const Box& window) {
  if (static_cast<int>(n.size()) != window.dim() || window.dim() != m.dim())
    throw std::invalid_argument("diag_symbols: dimension mismatch");
  DiagonalOp left{window, Eigen::VectorXcd(window.size())}, right{window, Eigen::VectorXcd(window.size())};
  Index i = 0;
  window.for_each([&](const Point& s) {
    left.diag(i) = m(s, minus(s, n));
    right.diag(i) = m(plus(s, n), s);
    ++i;
  });
  return {left, right};
}

bool is_pi_image(const MatTrigPoly& f) {
  for (const auto& [n, c] : f.coefficients())
    for (Index i = 0; i < c.rows(); ++i)
      for (Index j = 0; j < c.cols(); ++j)
        if (c(i, j) != Complex(0.0) && minus(f.rows().point_at(i), f.cols().point_at(j)) != n) return false;
  return true;
}

MatTrigPoly apply_fourier_multiplier(const DiscreteSymbol& m, const MatTrigPoly& f, MultiplierSide side) {
  if (m.dim() != f.dim()) throw std::invalid_argument("apply_fourier_multiplier: dimension mismatch");
  MatTrigPoly out(f.dim(), f.rows(), f.cols());
  const auto coeffs = sparse_view(f);
  // the symbol is evaluated at frequency n of each coefficient
  for (const auto& sc : coeffs) {
    std::vector<SparseCoefficient> one{sc};
    accumulate(out, m, value_at(f.dim()), sc.n, one, [](const Point&) { return true; }, side);
  }
  return out;
}

FrequencyRegion FrequencyRegion::box(Box b) {
  return FrequencyRegion([b = std::move(b)](const Point& n) { return b.contains(n); });
}

FrequencyRegion FrequencyRegion::boxes(std::vector<Box> list) {
  return FrequencyRegion([list = std::move(list)](const Point& n) {
    return std::any_of(list.begin(), list.end(), [&](const Box& b) { return b.contains(n); });
  });
}

FrequencyRegion FrequencyRegion::dyadic(DyadicIndex j) {
  return FrequencyRegion([j](const Point& n) { return dyadic_block_contains(j, n); });
}

FrequencyRegion FrequencyRegion::open_interval(Index a, Index b) {
  const Index lo = std::min(a, b), hi = std::max(a, b);
  return FrequencyRegion([lo, hi](const Point& n) {
    if (n.size() != 1) throw std::invalid_argument("open interval region: frequencies must be 1D");
    return lo < n[0] && n[0] < hi;
  });
}

FrequencyRegion FrequencyRegion::predicate(Predicate p) { return FrequencyRegion(std::move(p)); }

MatTrigPoly freq_project(const MatTrigPoly& f, const FrequencyRegion& region) {
  MatTrigPoly g(f.dim(), f.rows(), f.cols());
  for (const auto& [n, c] : f.coefficients())
    if (region.contains(n)) g.set(n, c);
  return g;
}

namespace {

double exp_ramp(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

/// Smooth step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x) {
  const double a = exp_ramp(x), b = exp_ramp(1.0 - x);
  return a / (a + b);
}

}  // namespace

double smooth_cutoff_weight(double r, int j, int d) {
  if (j < 0) throw std::invalid_argument("smooth_cutoff: j must be nonnegative");
  if (d < 1) throw std::invalid_argument("smooth_cutoff: dimension must be positive");
  const double x = std::ldexp(std::abs(r), -j);
  const double rd = std::sqrt(static_cast<double>(d));
  const double outer = smooth_step((2.0 * rd - x) / rd);
  if (j == 0) return x <= rd ? 1.0 : outer;
  if (x >= 0.5 && x <= rd) return 1.0;
  return smooth_step((x - 0.25) / 0.25) * outer;
}

MatTrigPoly smooth_cutoff(const MatTrigPoly& f, int j) {
  MatTrigPoly g(f.dim(), f.rows(), f.cols());
  for (const auto& [n, c] : f.coefficients()) {
    double r2 = 0.0;
    for (Index v : n) r2 += static_cast<double>(v) * static_cast<double>(v);
    const double w = smooth_cutoff_weight(std::sqrt(r2), j, f.dim());
    if (w == 1.0)
      g.set(n, c);
    else if (w != 0.0)
      g.set(n, w * c);
  }
  return g;
}

MatTrigPoly SummationByParts1D::total() const {
  MatTrigPoly t = boundary[0];
  t += boundary[1];
  t += differences[0];
  t += differences[1];
  return t;
}

SummationByParts1D summation_by_parts_1d(const DiscreteSymbol& m, const MatTrigPoly& f, int j, MultiplierSide side) {
  if (f.dim() != 1 || m.dim() != 1) throw std::invalid_argument("summation_by_parts_1d: needs d = 1");
  if (j < 1) throw std::invalid_argument("summation_by_parts_1d: j must be at least 1");
  const Index h = Index{1} << (j - 1), full = Index{1} << j;
  const auto coeffs = sparse_view(f);
  SummationByParts1D out;
  for (auto& p : out.boundary) p = MatTrigPoly(1, f.rows(), f.cols());
  for (auto& p : out.differences) p = MatTrigPoly(1, f.rows(), f.cols());

  // negative half E_{j,1} = [-2^j+1, -2^{j-1}]
  const Index neg_lo = -full + 1, neg_hi = -h;
  accumulate(out.boundary[0], m, value_at(1), {-h + 1}, coeffs,
             [&](const Point& q) { return neg_lo <= q[0] && q[0] <= neg_hi; }, side);
  // DM(n) = sgn(n)(M(n+1) - M(n)) = M(n) - M(n+1) for n < 0
  const SymbolCombination neg_diff{{{Point{0}, 1.0}, {Point{1}, -1.0}}};
  for (Index n = neg_lo; n <= neg_hi; ++n)
    accumulate(out.differences[0], m, neg_diff, {n}, coeffs,
               [&](const Point& q) { return -full < q[0] && q[0] < n + 1; }, side);

  // positive half E_{j,2} = [2^{j-1}, 2^j - 1]
  accumulate(out.boundary[1], m, value_at(1), {h}, coeffs,
             [&](const Point& q) { return h <= q[0] && q[0] < full; }, side);
  const SymbolCombination pos_diff{{{Point{1}, 1.0}, {Point{0}, -1.0}}};
  for (Index n = h; n < full; ++n)
    accumulate(out.differences[1], m, pos_diff, {n}, coeffs,
               [&](const Point& q) { return n < q[0] && q[0] < full; }, side);
  for (auto& p : out.boundary) p.prune();
  for (auto& p : out.differences) p.prune();
  return out;
}

MatTrigPoly SummationByParts2D::total() const {
  MatTrigPoly t = parts[0];
  for (int i = 1; i < 4; ++i) t += parts[i];
  return t;
}

SummationByParts2D summation_by_parts_2d(const DiscreteSymbol& m, const MatTrigPoly& f, int j, int rectangle,
                                         MultiplierSide side) {
  if (f.dim() != 2 || m.dim() != 2) throw std::invalid_argument("summation_by_parts_2d: needs d = 2");
  if (rectangle < 1 || rectangle > 4) throw std::invalid_argument("summation_by_parts_2d: rectangle must be 1..4");
  const Box R = split_block_2d(j)[static_cast<std::size_t>(rectangle - 1)];
  static constexpr std::array<std::array<int, 2>, 4> kDirections{{{1, 1}, {-1, 1}, {1, -1}, {-1, -1}}};
  SummationByParts2D out;
  out.rectangle = rectangle;
  out.direction = kDirections[static_cast<std::size_t>(rectangle - 1)];
  const auto& dir = out.direction;
  out.corner = {dir[0] > 0 ? R.lo()[0] : R.hi()[0] - 1, dir[1] > 0 ? R.lo()[1] : R.hi()[1] - 1};
  const Point& c = out.corner;
  for (auto& p : out.parts) p = MatTrigPoly(2, f.rows(), f.cols());
  const auto coeffs = sparse_view(f);

  // q lies strictly beyond k along coordinate i, inside R
  auto beyond = [&](int i, Index k, Index q) {
    return R.lo()[i] <= q && q < R.hi()[i] && (dir[i] > 0 ? q > k : q < k);
  };
  auto in_range = [&](int i, Index q) { return R.lo()[i] <= q && q < R.hi()[i]; };

  const Point e1{dir[0], 0}, e2{0, dir[1]}, e12{dir[0], dir[1]};
  const SymbolCombination d1{{{e1, 1.0}, {Point{0, 0}, -1.0}}};
  const SymbolCombination d2{{{e2, 1.0}, {Point{0, 0}, -1.0}}};
  const SymbolCombination d12{{{e12, 1.0}, {e1, -1.0}, {e2, -1.0}, {Point{0, 0}, 1.0}}};

  accumulate(out.parts[0], m, value_at(2), c, coeffs, [&](const Point& q) { return R.contains(q); }, side);
  for (Index k1 = R.lo()[0]; k1 < R.hi()[0]; ++k1)
    accumulate(out.parts[1], m, d1, {k1, c[1]}, coeffs,
               [&](const Point& q) { return beyond(0, k1, q[0]) && in_range(1, q[1]); }, side);
  for (Index k2 = R.lo()[1]; k2 < R.hi()[1]; ++k2)
    accumulate(out.parts[2], m, d2, {c[0], k2}, coeffs,
               [&](const Point& q) { return in_range(0, q[0]) && beyond(1, k2, q[1]); }, side);
  R.for_each([&](const Point& k) {
    accumulate(out.parts[3], m, d12, k, coeffs,
               [&](const Point& q) { return beyond(0, k[0], q[0]) && beyond(1, k[1], q[1]); }, side);
  });
  for (auto& p : out.parts) p.prune();
  return out;
}

LittlewoodPaleyReport lp_experiment(const MatTrigPoly& f, double p, const QuadratureGrid& grid,
                                    const std::vector<std::vector<Box>>& rectangle_families) {
  if (!(p >= 2.0)) throw std::invalid_argument("lp_experiment: needs p >= 2");
  LittlewoodPaleyReport r;
  r.p = p;
  r.grid_points = grid.points;
  r.reference = std::isinf(p) ? kInfinity : p * p / (p - 1.0);
  r.lp_norm = lp_sp_norm(f, p, grid);
  const int top = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(f.max_frequency())));
  r.levels = top + 1;

  std::vector<MatTrigPoly> blocks;
  for (int j = 0; j <= top; ++j) blocks.push_back(freq_project(f, FrequencyRegion::dyadic({j, f.dim()})));
  const double sq_blocks = square_function_norm_cr(blocks, p, grid);
  r.block_ratio = r.lp_norm == 0.0 ? 1.0 : r.lp_norm / sq_blocks;

  // delta_j vanishes once 2^{j-2} exceeds sqrt(d) * max frequency
  const int extra = 2 + static_cast<int>(std::ceil(0.5 * std::log2(static_cast<double>(f.dim()))));
  std::vector<MatTrigPoly> smooth;
  for (int j = 0; j <= top + extra; ++j) smooth.push_back(smooth_cutoff(f, j));
  r.smooth_ratio = r.lp_norm == 0.0 ? 1.0 : square_function_norm_cr(smooth, p, grid) / r.lp_norm;

  for (const auto& family : rectangle_families) {
    std::vector<MatTrigPoly> projected, copies;
    for (const auto& b : family) {
      projected.push_back(freq_project(f, FrequencyRegion::box(b)));
      copies.push_back(f);
    }
    const double den = square_function_norm_cr(copies, p, grid);
    r.rectangle_ratios.push_back(den == 0.0 ? 0.0 : square_function_norm_cr(projected, p, grid) / den);
  }
  return r;
}

}  // namespace schurmarc
