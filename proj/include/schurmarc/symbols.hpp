// Symbols of discrete and continuous Schur multipliers.
//
// A DiscreteSymbol is a map m : Z^d x Z^d -> C in one of three forms: a dense
// table over a window, a Toeplitz symbol m(s, t) = phi(s - t), or an arbitrary
// callback.  Dense symbols refuse to evaluate outside their window; silently
// zero-extending them would corrupt variation sums at the window edges.
//
// A ContinuousSymbol is M : R^d x R^d -> C together with (optional) analytic
// partial derivatives; without them the partials fall back to central
// differences.

#ifndef SCHURMARC_SYMBOLS_HPP
#define SCHURMARC_SYMBOLS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "schurmarc/labeled_matrix.hpp"
#include "schurmarc/lattice.hpp"

namespace schurmarc {

class SymbolDomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

enum class SymbolKind { dense, toeplitz, callback };

std::string to_string(SymbolKind kind);

class DiscreteSymbol {
 public:
  using Callback = std::function<Complex(const Point& s, const Point& t)>;
  using Generator = std::function<Complex(const Point& n)>;

  DiscreteSymbol() = default;

  static DiscreteSymbol dense(LabeledMatrix table, std::string name = "dense");
  static DiscreteSymbol toeplitz(int dim, Generator phi, std::string name = "toeplitz");
  static DiscreteSymbol callback(int dim, Callback m, std::string name = "callback");

  int dim() const { return dim_; }
  SymbolKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// m(s, t); throws SymbolDomainError for dense symbols outside their window.
  Complex operator()(const Point& s, const Point& t) const;
  bool evaluable(const Point& s, const Point& t) const;

  /// Window of a dense symbol (rows x cols); nullptr for the other kinds.
  const LabeledMatrix* table() const { return table_.get(); }

  /// lambda * m, keeping the Toeplitz / dense structure.
  DiscreteSymbol scaled(Complex lambda) const;
  /// Pointwise product m1 * m2 (callback unless both are Toeplitz).
  friend DiscreteSymbol operator*(const DiscreteSymbol& a, const DiscreteSymbol& b);

 private:
  int dim_ = 0;
  SymbolKind kind_ = SymbolKind::callback;
  std::string name_;
  std::shared_ptr<const LabeledMatrix> table_;
  Generator phi_;
  Callback callback_;
};

/// Dense tabulation of m on rows x cols.  Throws std::length_error when the
/// window holds more than max_entries pairs.
DiscreteSymbol restrict_window(const DiscreteSymbol& m, const Box& rows, const Box& cols,
                               Index max_entries = Index{1} << 24);

/// Tabulates m on rows x cols as a plain matrix (no size cap).
Eigen::MatrixXcd tabulate(const DiscreteSymbol& m, const Box& rows, const Box& cols);

class ContinuousSymbol {
 public:
  using Function = std::function<Complex(std::span<const double> x, std::span<const double> y)>;
  /// Partial derivative of M with respect to the coordinates alpha of the
  /// first (argument = 0) or second (argument = 1) variable.
  using Partial =
      std::function<Complex(int argument, AlphaMask alpha, std::span<const double> x, std::span<const double> y)>;

  static constexpr double kDefaultStep = 1.0 / 1048576.0;  // 2^-20

  ContinuousSymbol() = default;
  ContinuousSymbol(int dim, Function M, std::optional<Partial> partial = std::nullopt, std::string name = "continuous",
                   double step = kDefaultStep);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  bool has_analytic_partials() const { return partial_.has_value(); }
  double step() const { return step_; }

  Complex operator()(std::span<const double> x, std::span<const double> y) const { return M_(x, y); }
  Complex operator()(double x, double y) const;

  /// Analytic partial when available, otherwise a central difference.  Mixed
  /// partials of order r use the step h^{1/r}.
  Complex partial(int argument, AlphaMask alpha, std::span<const double> x, std::span<const double> y) const;

 private:
  int dim_ = 0;
  std::string name_;
  Function M_;
  std::optional<Partial> partial_;
  double step_ = kDefaultStep;
};

/// Mixed central difference of M in the coordinates alpha of one argument,
/// with step h^{1/|alpha|}.
Complex central_difference_partial(const ContinuousSymbol::Function& M, int argument, AlphaMask alpha,
                                   std::span<const double> x, std::span<const double> y, double h);

using Symbol = std::variant<DiscreteSymbol, ContinuousSymbol>;

struct CatalogParams {
  int dim = 1;
  std::uint64_t seed = 0;
  /// Factors of rank_one; u[i] is attached to index offset + i.
  std::vector<Complex> u;
  std::vector<Complex> v;
  Index offset = 0;
};

/// Names accepted by catalog().
const std::vector<std::string>& catalog_names();

/// Canonical test symbols:
///   constant_one        m = 1
///   triangular          m(i, j) = 1 if i >= j else 0              (d = 1)
///   lacunary_toeplitz   phi = seeded +-1, constant on every dyadic block E_j
///   rank_one            m(i, j) = u_i v_j                          (d = 1)
///   smooth_homogeneous  psi((s - t) / (1 + |s| + |t|)), psi = tanh(2 .)
///   random              seeded non-Toeplitz values in [-1, 1] + i[-1, 1]
///   random_toeplitz     seeded Toeplitz values in [-1, 1] + i[-1, 1]
///   continuous_constant M = 1
///   continuous_linear   M(x, y) = x - y
///   continuous_arctan   M(x, y) = arctan(x - y)
///   continuous_step     M(x, y) = tanh(x - y)
///   continuous_ratio    M(x, y) = (x - y) / (1 + |x| + |y|)
Symbol catalog(const std::string& name, const CatalogParams& params = {});
DiscreteSymbol discrete_catalog(const std::string& name, const CatalogParams& params = {});
ContinuousSymbol continuous_catalog(const std::string& name, const CatalogParams& params = {});
bool is_continuous_catalog_name(const std::string& name);

/// Deterministic value in [-1, 1] + i[-1, 1] for (seed, key).
Complex hashed_complex(std::uint64_t seed, std::span<const Index> key);

}  // namespace schurmarc

#endif  // SCHURMARC_SYMBOLS_HPP
