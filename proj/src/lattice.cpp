#include "schurmarc/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace schurmarc {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw std::invalid_argument(os.str());
  }
}

Index binomial(Index n, Index k) {
  Index r = 1;
  for (Index i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Index pow2(int e) { return Index{1} << e; }

}  // namespace

std::string to_string(const Point& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ')';
  return os.str();
}

Box::Box(Point lo, Point hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  require_same_dim(lo_.size(), hi_.size(), "Box");
  for (std::size_t i = 0; i < lo_.size(); ++i)
    if (lo_[i] > hi_[i]) throw std::invalid_argument("Box: lo > hi in coordinate " + std::to_string(i));
}

Box Box::cube(int d, Index lo, Index hi) { return Box(Point(d, lo), Point(d, hi)); }

Index Box::size() const {
  if (lo_.empty()) return 0;
  Index s = 1;
  for (int i = 0; i < dim(); ++i) s *= extent(i);
  return s;
}

bool Box::contains(const Point& n) const {
  require_same_dim(n.size(), lo_.size(), "Box::contains");
  for (int i = 0; i < dim(); ++i)
    if (n[i] < lo_[i] || n[i] >= hi_[i]) return false;
  return true;
}

Index Box::linear_index(const Point& n) const {
  if (!contains(n)) throw std::out_of_range("Box::linear_index: point " + schurmarc::to_string(n) + " outside box");
  Index k = 0;
  for (int i = 0; i < dim(); ++i) k = k * extent(i) + (n[i] - lo_[i]);
  return k;
}

Point Box::point_at(Index k) const {
  Point n(lo_.size());
  for (int i = dim() - 1; i >= 0; --i) {
    n[i] = lo_[i] + k % extent(i);
    k /= extent(i);
  }
  return n;
}

Box Box::intersect(const Box& other) const {
  require_same_dim(dim(), other.dim(), "Box::intersect");
  Point lo(dim()), hi(dim());
  for (int i = 0; i < dim(); ++i) {
    lo[i] = std::max(lo_[i], other.lo_[i]);
    hi[i] = std::max(lo[i], std::min(hi_[i], other.hi_[i]));
  }
  return Box(std::move(lo), std::move(hi));
}

Box Box::expanded(Index r) const {
  Point lo = lo_, hi = hi_;
  for (int i = 0; i < dim(); ++i) {
    lo[i] -= r;
    hi[i] += r;
  }
  return Box(std::move(lo), std::move(hi));
}

std::vector<Point> Box::points() const {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](const Point& n) { out.push_back(n); });
  return out;
}

AlphaMask::AlphaMask(int dim, std::uint32_t bits) : dim_(dim), bits_(bits) {
  if (dim < 0 || dim > 30) throw std::invalid_argument("AlphaMask: unsupported dimension");
  if (bits >> dim) throw std::invalid_argument("AlphaMask: bits exceed dimension");
}

std::vector<AlphaMask> AlphaMask::all(int dim) {
  std::vector<AlphaMask> out;
  for (std::uint32_t b = 0; b < (1u << dim); ++b) out.emplace_back(dim, b);
  return out;
}

int AlphaMask::count() const { return std::popcount(bits_); }

Point AlphaMask::as_order() const {
  Point o(dim_);
  for (int i = 0; i < dim_; ++i) o[i] = (*this)[i] ? 1 : 0;
  return o;
}

std::string AlphaMask::to_string() const {
  std::string s;
  for (int i = 0; i < dim_; ++i) s += (*this)[i] ? '1' : '0';
  return s;
}

Index sup_norm(const Point& n) {
  Index m = 0;
  for (Index v : n) m = std::max(m, std::abs(v));
  return m;
}

int dyadic_level(const Point& n) {
  Index m = sup_norm(n);
  if (m == 0) return 0;
  return std::bit_width(static_cast<std::uint64_t>(m));
}

bool dyadic_block_contains(DyadicIndex j, const Point& n) {
  require_same_dim(static_cast<std::size_t>(j.dim), n.size(), "dyadic_block_contains");
  if (j.level < 0) throw std::invalid_argument("dyadic_block_contains: negative level");
  return dyadic_level(n) == j.level;
}

Box dyadic_hull(DyadicIndex j) {
  Index r = j.level == 0 ? 1 : pow2(j.level);
  return Box::cube(j.dim, -r + 1, r);
}

std::vector<Point> dyadic_block_points(DyadicIndex j) {
  std::vector<Point> out;
  dyadic_hull(j).for_each([&](const Point& n) {
    if (dyadic_level(n) == j.level) out.push_back(n);
  });
  return out;
}

std::array<Box, 4> split_block_2d(int j) {
  if (j < 1) throw std::invalid_argument("split_block_2d: the singleton block E_0 has no rectangle split");
  const Index h = pow2(j - 1), f = pow2(j);
  // I = [h, f), J = [-h+1, f), -I = [-f+1, -h+1), -J = [-f+1, h)
  return {Box({-h + 1, h}, {f, f}), Box({-f + 1, -h + 1}, {-h + 1, f}),
          Box({h, -f + 1}, {f, h}), Box({-f + 1, -f + 1}, {h, -h + 1})};
}

namespace {

Complex expand_difference(const LatticeFunction& phi, const Point& order, const Point& xi, int sign) {
  require_same_dim(order.size(), xi.size(), "finite difference");
  Point upper(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] < 0) throw std::invalid_argument("finite difference: negative order");
    upper[i] = order[i] + 1;
  }
  Complex acc = 0.0;
  Box(Point(order.size(), 0), upper).for_each([&](const Point& beta) {
    Index coeff = 1, gap = 0;
    Point at = xi;
    for (std::size_t i = 0; i < order.size(); ++i) {
      coeff *= binomial(order[i], beta[i]);
      gap += order[i] - beta[i];
      at[i] += sign * beta[i];
    }
    // backward differences pick up (-1)^{|beta|} instead of (-1)^{|alpha-beta|}
    Index parity = sign > 0 ? gap : [&] {
      Index b = 0;
      for (Index v : beta) b += v;
      return b;
    }();
    acc += (parity % 2 ? -1.0 : 1.0) * static_cast<double>(coeff) * phi(at);
  });
  return acc;
}

}  // namespace

Complex forward_difference(const LatticeFunction& phi, const Point& order, const Point& xi) {
  return expand_difference(phi, order, xi, +1);
}

Complex forward_difference(const LatticeFunction& phi, AlphaMask alpha, const Point& xi) {
  return expand_difference(phi, alpha.as_order(), xi, +1);
}

Complex backward_difference(const LatticeFunction& phi, const Point& order, const Point& xi) {
  return expand_difference(phi, order, xi, -1);
}

Point alpha_project(const Point& n, AlphaMask alpha) {
  require_same_dim(n.size(), static_cast<std::size_t>(alpha.dim()), "alpha_project");
  Point out;
  for (int i = 0; i < alpha.dim(); ++i)
    if (alpha[i]) out.push_back(n[i]);
  return out;
}

Point alpha_merge(const Point& n_alpha, const Point& n_rest, AlphaMask alpha) {
  require_same_dim(n_alpha.size(), static_cast<std::size_t>(alpha.count()), "alpha_merge");
  require_same_dim(n_rest.size(), static_cast<std::size_t>(alpha.dim() - alpha.count()), "alpha_merge");
  Point out(alpha.dim());
  std::size_t a = 0, r = 0;
  for (int i = 0; i < alpha.dim(); ++i) out[i] = alpha[i] ? n_alpha[a++] : n_rest[r++];
  return out;
}

Complex fundamental_theorem_expand(const LatticeFunction& M, const Point& s, const Point& t, const Point& n) {
  require_same_dim(s.size(), t.size(), "fundamental_theorem_expand");
  require_same_dim(s.size(), n.size(), "fundamental_theorem_expand");
  if (!Box(s, t).contains(n))
    throw std::invalid_argument("fundamental_theorem_expand: n outside [s, t)");
  const int d = static_cast<int>(s.size());
  Complex acc = 0.0;
  for (const AlphaMask& alpha : AlphaMask::all(d)) {
    // k ranges over [s, n) in the alpha coordinates and is pinned to s elsewhere
    Point lo = s, hi = s;
    for (int i = 0; i < d; ++i) hi[i] = alpha[i] ? n[i] : s[i] + 1;
    Box(lo, hi).for_each([&](const Point& k) { acc += forward_difference(M, alpha, k); });
  }
  return acc;
}

}  // namespace schurmarc
