// Testing conditions of Marcinkiewicz type for Schur multipliers, and the
// parallelogram discretization of continuous symbols.
//
// Orientation::left measures variation along the column index, t -> m(s, s+t);
// Orientation::right along the row index, t -> m(s+t, s).  Blocks are
// E_k = {2^{k-1} <= |t|_inf < 2^k}.

#ifndef SCHURMARC_MARCINKIEWICZ_HPP
#define SCHURMARC_MARCINKIEWICZ_HPP

#include <string>
#include <vector>

#include "schurmarc/lattice.hpp"
#include "schurmarc/symbols.hpp"

namespace schurmarc {

enum class Orientation { left, right };
std::string to_string(Orientation o);

/// One variation sum.  `term` names the difference taken: "t1" for 1D, a mask
/// such as "10" / "11" for d > 1, or an edge label such as "t1+" / "edge+"
/// for the 2D checker.
struct BlockEntry {
  int level = 0;
  Orientation orientation = Orientation::left;
  std::string term;
  Point base;
  double sum = 0.0;
};

/// For continuous checks the base is a real sample point.
struct ContinuousEntry {
  int level = 0;
  Orientation orientation = Orientation::left;
  std::string term;
  std::vector<double> base;
  double integral = 0.0;
};

struct ConditionReport {
  std::string checker;
  std::string symbol;
  int dim = 1;
  /// sup |m| over every evaluated pair
  double C1 = 0.0;
  /// single-direction constant (1D sums, 2D edge sums, every mask for d > 2)
  double C2 = 0.0;
  /// mixed-difference constant (2D)
  double C3 = 0.0;
  /// continuous constant
  double A = 0.0;
  std::vector<BlockEntry> table;
  std::vector<ContinuousEntry> continuous_table;
  /// per level, the largest sum recorded at that level
  std::vector<double> level_sup;
  int level_min = 0;
  int level_max = 0;
  Box base_range;
  std::vector<std::vector<double>> base_samples;
  std::string differences = "full";
  std::string partials;
  /// set when the largest sums grow at the top levels like an unbounded symbol
  bool non_uniform = false;

  /// max over all recorded sums
  double overall() const;
};

/// Which first differences enter a 1D block sum: all t in the block
/// ("full", the literal condition) or only those with t and t+1 both in the
/// half-block ("interior", the form reached by the discretization estimate).
enum class BlockDifferences { full, interior };

ConditionReport check_1d(const DiscreteSymbol& m, int n_max, const Box& base_range,
                         BlockDifferences differences = BlockDifferences::full);

ConditionReport check_2d(const DiscreteSymbol& m, int k_max, const Box& base_range);

inline constexpr int kDefaultDimensionCap = 3;

ConditionReport check_dd(const DiscreteSymbol& m, int d, int k_max, const Box& base_range,
                         int dimension_cap = kDefaultDimensionCap);

struct ParallelogramIndex {
  int k = 0;
  Index a = 0;
  Index b = 0;
};

struct DiscretizationOptions {
  int order = 8;
  /// accepted |order-n - order-2n| per cell before subdividing
  double tolerance = 1e-10;
  int max_subdivisions = 6;
};

/// Avg over D_{k,a,b} of M, with (x, y) = ((a+u)/2^k, (b+v+u)/2^k), (u, v) in [0,1)^2.
/// Throws QuadratureError when refinement does not settle.
Complex cell_average(const ContinuousSymbol& M, ParallelogramIndex cell, const DiscretizationOptions& opts = {});

DiscreteSymbol discretize_continuous(const ContinuousSymbol& M, int k, const Box& rows, const Box& cols,
                                     const DiscretizationOptions& opts = {});
inline DiscreteSymbol discretize_continuous(const ContinuousSymbol& M, int k, const Box& window,
                                            const DiscretizationOptions& opts = {}) {
  return discretize_continuous(M, k, window, window, opts);
}
/// The same cell averages computed on demand (no window).
DiscreteSymbol discretized_symbol(const ContinuousSymbol& M, int k, const DiscretizationOptions& opts = {});

struct ContinuousCheckOptions {
  /// base points per coordinate, spread uniformly over [lo, hi]
  int base_samples = 33;
  double base_lo = -4.0;
  double base_hi = 4.0;
  double tolerance = 1e-9;
};

/// A = sup over j in [j_min, j_max] and sampled bases of the integral of |d_alpha M|
/// over the shell {2^j < |t_alpha|_inf <= 2^{j+1}} (other coordinates at 2^j),
/// for M(s, s+t) (left) and M(s+t, s) (right).
ConditionReport check_continuous(const ContinuousSymbol& M, int j_min, int j_max,
                                 const ContinuousCheckOptions& opts = {});

}  // namespace schurmarc

#endif  // SCHURMARC_MARCINKIEWICZ_HPP
