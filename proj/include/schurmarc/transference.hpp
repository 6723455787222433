// Transference between Schur multipliers and Fourier multipliers on
// matrix-valued trigonometric polynomials.
//
//   pi(A)(z) = (a_{st} z^{s-t})_{s,t}
//   M_l(n) = diag(m_{s,s-n}),   M_r(n) = diag(m_{s+n,s})
//   T f^(n) = M_l(n) f^(n)          (= f^(n) M_r(n) on pi-images)
//
// together with frequency projections, the smooth dyadic cutoff and the
// summation-by-parts splittings of a dyadic block.

#ifndef SCHURMARC_TRANSFERENCE_HPP
#define SCHURMARC_TRANSFERENCE_HPP

#include <array>
#include <functional>
#include <variant>
#include <vector>

#include "schurmarc/labeled_matrix.hpp"
#include "schurmarc/schatten.hpp"
#include "schurmarc/symbols.hpp"
#include "schurmarc/trig_poly.hpp"

namespace schurmarc {

/// sum_s c_s e_{s,s} on a window.
struct DiagonalOp {
  Box window;
  Eigen::VectorXcd diag;

  Eigen::MatrixXcd dense() const { return diag.asDiagonal(); }
  DiagonalOp abs() const { return {window, diag.cwiseAbs().cast<Complex>()}; }
  friend DiagonalOp operator*(const DiagonalOp& a, const DiagonalOp& b);
  friend DiagonalOp operator-(const DiagonalOp& a, const DiagonalOp& b);
};

MatTrigPoly pi_embed(const LabeledMatrix& A);

/// (M_l(n), M_r(n)) on the window.
std::pair<DiagonalOp, DiagonalOp> diag_symbols(const DiscreteSymbol& m, const Point& n, const Box& window);

/// True when every coefficient at n lives on the n-th diagonal {(s, s - n)}.
bool is_pi_image(const MatTrigPoly& f);

enum class MultiplierSide { left, right };

/// Coefficientwise M_l(n) f^(n) (left) or f^(n) M_r(n) (right).  Symbol values
/// are requested only for rows (columns) where f^(n) is nonzero, so dense
/// symbols covering the pi-image suffice.  The two forms agree on pi-images.
MatTrigPoly apply_fourier_multiplier(const DiscreteSymbol& m, const MatTrigPoly& f,
                                     MultiplierSide side = MultiplierSide::left);

/// Sets of frequencies for S_R.
class FrequencyRegion {
 public:
  using Predicate = std::function<bool(const Point&)>;

  static FrequencyRegion box(Box b);
  static FrequencyRegion boxes(std::vector<Box> list);
  static FrequencyRegion dyadic(DyadicIndex j);
  /// Integers strictly between a and b, whichever order they come in (d = 1).
  static FrequencyRegion open_interval(Index a, Index b);
  static FrequencyRegion predicate(Predicate p);

  bool contains(const Point& n) const { return test_(n); }

 private:
  explicit FrequencyRegion(Predicate p) : test_(std::move(p)) {}
  Predicate test_;
};

/// S_R f: keeps the coefficients with frequency in R.
MatTrigPoly freq_project(const MatTrigPoly& f, const FrequencyRegion& region);

/// The bump delta_j(x) at |x| = r for dimension d.  For j >= 1 it is 1 on
/// [2^{j-1}, sqrt(d) 2^j] and vanishes outside [2^{j-2}, 2 sqrt(d) 2^j]; for
/// j = 0 it is a low-pass equal to 1 on [0, sqrt(d)].
double smooth_cutoff_weight(double r, int j, int d);
MatTrigPoly smooth_cutoff(const MatTrigPoly& f, int j);

/// Summation by parts on the two halves E_{j,1} (negative) and E_{j,2}
/// (positive) of a 1D block.
///   negative: corner c = -2^{j-1}+1, difference sums over n in E_{j,1} with S_{(-2^j, n+1)}
///   positive: corner c =  2^{j-1},   difference sums over n in E_{j,2} with S_{(n, 2^j)}
/// where DM(n) = sgn(n)(M(n+1) - M(n)).
struct SummationByParts1D {
  std::array<MatTrigPoly, 2> boundary;
  std::array<MatTrigPoly, 2> differences;
  MatTrigPoly total() const;
};

SummationByParts1D summation_by_parts_1d(const DiscreteSymbol& m, const MatTrigPoly& f, int j,
                                         MultiplierSide side = MultiplierSide::left);

/// Abel summation on one rectangle E_{j,r} of a 2D block, r = 1..4:
///   P1 = M(c) S_R f
///   P2 = sum_{k1} D1 M(k1, c2) S_{beyond k1} f
///   P3 = sum_{k2} D2 M(c1, k2) S_{beyond k2} f
///   P4 = sum_{k in R} D12 M(k) S_{beyond k} f
/// Differences and "beyond" follow the orientation of the rectangle; for
/// r = 1 the corner is (-2^{j-1}+1, 2^{j-1}) and all differences are forward.
struct SummationByParts2D {
  int rectangle = 1;
  Point corner;
  std::array<int, 2> direction{1, 1};
  std::array<MatTrigPoly, 4> parts;
  MatTrigPoly total() const;
};

SummationByParts2D summation_by_parts_2d(const DiscreteSymbol& m, const MatTrigPoly& f, int j, int rectangle = 1,
                                         MultiplierSide side = MultiplierSide::left);

struct LittlewoodPaleyReport {
  double p = 2.0;
  int grid_points = 0;
  double lp_norm = 0.0;
  /// ||f|| / ||(S_{E_j} f)_j||_{cr}
  double block_ratio = 0.0;
  /// ||(S_{delta_j} f)_j||_{cr} / ||f||
  double smooth_ratio = 0.0;
  /// ||(S_{R_i} f)_i||_{cr} / ||(f)_i||_{cr}, one entry per family
  std::vector<double> rectangle_ratios;
  /// p^2 / (p - 1)
  double reference = 0.0;
  int levels = 0;
};

LittlewoodPaleyReport lp_experiment(const MatTrigPoly& f, double p, const QuadratureGrid& grid,
                                    const std::vector<std::vector<Box>>& rectangle_families = {});

}  // namespace schurmarc

#endif  // SCHURMARC_TRANSFERENCE_HPP
