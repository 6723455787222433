// Schur multiplier action and lower bounds for its S_p -> S_p norm on finite
// windows.

#ifndef SCHURMARC_ESTIMATOR_HPP
#define SCHURMARC_ESTIMATOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schurmarc/labeled_matrix.hpp"
#include "schurmarc/symbols.hpp"

namespace schurmarc {

/// (m_{st} a_{st}) on A's windows.
LabeledMatrix apply_schur(const DiscreteSymbol& m, const LabeledMatrix& A);

/// m (x) 1 on Z^d x Z: the last coordinate is ignored.
DiscreteSymbol amplify(const DiscreteSymbol& m);

struct SearchBudget {
  /// Independent starts.  Start 0 is the warm start when one is given, else the
  /// matrix unit at the largest |m|; the others are seeded complex Gaussians.
  int restarts = 10;
  /// Ascent iterations per start.
  int iterations = 100;
  /// Starts per window after the first in growth_experiment (the first of
  /// them is the embedded previous witness).
  int growth_restarts = 1;
  /// Iterations per start on those later windows; negative means `iterations`.
  int growth_iterations = -1;
  /// Worker threads for the restarts; 0 picks the hardware concurrency.
  /// Results do not depend on it.
  int threads = 0;
};

inline constexpr Index kDefaultWindowCap = 1024;

struct EstimateResult {
  double value = 0.0;
  LabeledMatrix witness;
  double p = 2.0;
  Box window;
  int amplification = 1;
  int restarts = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
  /// the symbol vanishes on the window
  bool zero_symbol = false;
};

/// max ||S_m(A)||_p / ||A||_p over the search.  Each start runs a nonlinear
/// power step A <- dual_{p'}(conj(m) o dual_p(m o A)) with an extrapolating
/// line search, and falls back to gradient ascent with backtracking (initial
/// step 0.5, factor 0.5) when the power step stalls.  A start stops once the
/// relative gain drops below 1e-9.
EstimateResult norm_lower_bound(const DiscreteSymbol& m, const Box& window, double p, const SearchBudget& budget,
                                std::uint64_t seed, const LabeledMatrix* warm_start = nullptr,
                                Index window_cap = kDefaultWindowCap);

/// The same search for m (x) 1_k on window x [0, k); k = 1 is norm_lower_bound.
/// For k > 1 the k = 1 witness, embedded in the first block, is the warm start.
EstimateResult cb_lower_bound(const DiscreteSymbol& m, const Box& window, double p, int k, const SearchBudget& budget,
                              std::uint64_t seed, Index window_cap = kDefaultWindowCap);

/// (p^2 / (p - 1))^e
double reference_bound(double p, int exponent);

struct GrowthRow {
  std::string symbol;
  int dim = 1;
  double p = 2.0;
  Index N = 0;
  int amplification = 1;
  double estimate = 0.0;
  double reference = 0.0;
  double ratio = 0.0;
  int restarts = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
};

/// Lower bounds on [-N, N)^d for every (p, N), against (p^2/(p-1))^{d+2}.
/// For each p the windows are visited in increasing N and each search starts
/// from the previous witness, so estimates do not decrease in N beyond rounding.
std::vector<GrowthRow> growth_experiment(const DiscreteSymbol& m, const std::vector<double>& p_list,
                                         std::vector<Index> n_list, const SearchBudget& budget, std::uint64_t seed,
                                         Index window_cap = kDefaultWindowCap);

}  // namespace schurmarc

#endif  // SCHURMARC_ESTIMATOR_HPP
