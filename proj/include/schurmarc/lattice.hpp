// Dyadic geometry of Z^d and the calculus of finite differences.
//
// Lattice points are plain integer vectors.  Boxes are products of half-open
// integer intervals [lo_i, hi_i) and are enumerated in row-major order (last
// coordinate fastest); every dense object in the library uses that ordering.

#ifndef SCHURMARC_LATTICE_HPP
#define SCHURMARC_LATTICE_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace schurmarc {

using Index = std::int64_t;
using Point = std::vector<Index>;
using Complex = std::complex<double>;

std::string to_string(const Point& p);

class Box {
 public:
  Box() = default;
  Box(Point lo, Point hi);

  /// [lo, hi)^d
  static Box cube(int d, Index lo, Index hi);
  /// 1D convenience: [lo, hi)
  static Box interval(Index lo, Index hi) { return Box({lo}, {hi}); }

  int dim() const { return static_cast<int>(lo_.size()); }
  const Point& lo() const { return lo_; }
  const Point& hi() const { return hi_; }
  Index extent(int i) const { return hi_[i] - lo_[i]; }
  Index size() const;
  bool empty() const { return size() == 0; }

  bool contains(const Point& n) const;
  /// Row-major position of n inside the box; n must be contained.
  Index linear_index(const Point& n) const;
  Point point_at(Index k) const;

  Box intersect(const Box& other) const;
  /// Box grown by r on every side.
  Box expanded(Index r) const;

  template <typename F>
  void for_each(F&& f) const {
    if (empty()) return;
    Point n = lo_;
    for (;;) {
      f(static_cast<const Point&>(n));
      int i = dim() - 1;
      for (; i >= 0; --i) {
        if (++n[i] < hi_[i]) break;
        n[i] = lo_[i];
      }
      if (i < 0) return;
    }
  }

  std::vector<Point> points() const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  Point lo_;
  Point hi_;
};

/// A subset of coordinates, alpha in {0,1}^d.
class AlphaMask {
 public:
  AlphaMask() = default;
  AlphaMask(int dim, std::uint32_t bits);
  static AlphaMask ones(int dim) { return AlphaMask(dim, (1u << dim) - 1u); }
  static AlphaMask zeros(int dim) { return AlphaMask(dim, 0u); }
  /// Every mask of the given dimension in increasing bit order, zero mask first.
  static std::vector<AlphaMask> all(int dim);

  int dim() const { return dim_; }
  std::uint32_t bits() const { return bits_; }
  bool operator[](int i) const { return (bits_ >> i) & 1u; }
  int count() const;
  bool is_zero() const { return bits_ == 0; }
  AlphaMask complement() const { return AlphaMask(dim_, ~bits_ & ((1u << dim_) - 1u)); }
  /// Order vector in N_0^d with entries 0/1.
  Point as_order() const;
  std::string to_string() const;

  friend bool operator==(const AlphaMask&, const AlphaMask&) = default;

 private:
  int dim_ = 0;
  std::uint32_t bits_ = 0;
};

struct DyadicIndex {
  int level = 0;
  int dim = 1;
};

Index sup_norm(const Point& n);

/// Level j with n in E_j, where E_0 = {0} and E_j = {2^{j-1} <= |n|_inf < 2^j}.
int dyadic_level(const Point& n);

bool dyadic_block_contains(DyadicIndex j, const Point& n);

/// Smallest box containing E_j, i.e. (-2^j, 2^j)^d.
Box dyadic_hull(DyadicIndex j);

std::vector<Point> dyadic_block_points(DyadicIndex j);

/// The four rectangles E_{j,1..4} that tile E_j in Z^2 (j >= 1):
///   E_{j,1} = J x I,  E_{j,2} = (-I) x J,  E_{j,3} = I x (-J),  E_{j,4} = (-J) x (-I)
/// with I = [2^{j-1}, 2^j) and J = {-2^{j-1}+1, ..., 2^j-1}.
std::array<Box, 4> split_block_2d(int j);

using LatticeFunction = std::function<Complex(const Point&)>;

/// Forward difference of arbitrary order alpha in N_0^d:
///   sum_{beta <= alpha} (-1)^{|alpha-beta|} binom(alpha, beta) phi(xi + beta)
Complex forward_difference(const LatticeFunction& phi, const Point& order, const Point& xi);
Complex forward_difference(const LatticeFunction& phi, AlphaMask alpha, const Point& xi);

/// Backward difference: the same expansion evaluated at xi - beta.
Complex backward_difference(const LatticeFunction& phi, const Point& order, const Point& xi);

/// n_alpha = (n_i)_{i : alpha_i = 1}
Point alpha_project(const Point& n, AlphaMask alpha);
/// Inverse of (alpha_project(n, alpha), alpha_project(n, alpha.complement())).
Point alpha_merge(const Point& n_alpha, const Point& n_rest, AlphaMask alpha);

/// Right-hand side of the discrete fundamental theorem on [s, t):
///   sum_{alpha in {0,1}^d} sum_{k_alpha in [s, n)_alpha} Delta^alpha M(s_{1-alpha}, k_alpha)
/// which reproduces M(n) for s <= n < t.
Complex fundamental_theorem_expand(const LatticeFunction& M, const Point& s, const Point& t,
                                   const Point& n);

}  // namespace schurmarc

#endif  // SCHURMARC_LATTICE_HPP
