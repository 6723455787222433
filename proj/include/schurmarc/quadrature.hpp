// One-dimensional quadrature rules.

#ifndef SCHURMARC_QUADRATURE_HPP
#define SCHURMARC_QUADRATURE_HPP

#include <functional>
#include <stdexcept>
#include <vector>

namespace schurmarc {

struct GaussLegendreRule {
  /// Nodes and weights on [0, 1]; the weights sum to 1.
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [0, 1].  Cached per n.
const GaussLegendreRule& gauss_legendre(int n);

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive Simpson on [a, b] to the absolute tolerance.  Throws
/// QuadratureError when the recursion depth runs out while a local error
/// estimate still exceeds the tolerance, or when the result is not finite.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tolerance,
                        int max_depth = 48);

}  // namespace schurmarc

#endif  // SCHURMARC_QUADRATURE_HPP
