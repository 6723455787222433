// Schatten p-norms, operator absolute values, the operator Cauchy-Schwarz gap
// and vector-valued L^p(T^d; S_p) norms.
//
// The matrix kernels are templates over Eigen expressions so they accept any
// dense complex or real matrix; the LabeledMatrix / MatTrigPoly overloads are
// thin wrappers.

#ifndef SCHURMARC_SCHATTEN_HPP
#define SCHURMARC_SCHATTEN_HPP

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "schurmarc/labeled_matrix.hpp"
#include "schurmarc/trig_poly.hpp"

namespace schurmarc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative threshold below which singular values are treated as exact zeros.
inline constexpr double kSingularValueFloor = 1e-14;

/// Parses "2", "1.5", "4/3", "inf".
double parse_exponent(const std::string& text);
/// Inverse of parse_exponent for reports: "inf", integers, or the decimal.
std::string format_exponent(double p);

template <typename Derived>
Eigen::VectorXd singular_values(const Eigen::MatrixBase<Derived>& A) {
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (!A.allFinite()) throw std::domain_error("singular_values: non-finite entries");
  if (A.size() == 0) return Eigen::VectorXd();
  Plain M = A;
  return Eigen::BDCSVD<Plain>(M).singularValues().template cast<double>();
}

/// (sum sigma_i^p)^{1/p} from a list of singular values, sigma_max for p = inf.
/// p < 1 yields the Schatten quasi-norm.
double schatten_from_singular_values(const Eigen::VectorXd& sigma, double p);

template <typename Derived>
double schatten_norm(const Eigen::MatrixBase<Derived>& A, double p) {
  return schatten_from_singular_values(singular_values(A), p);
}

double schatten_norm(const LabeledMatrix& A, double p);

/// |A| = (A^* A)^{1/2} through the Hermitian eigendecomposition of A^* A.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> abs_op(
    const Eigen::MatrixBase<Derived>& A) {
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (!A.allFinite()) throw std::domain_error("abs_op: non-finite entries");
  Plain gram = A.adjoint() * A;
  Eigen::SelfAdjointEigenSolver<Plain> eig(gram);
  if (eig.info() != Eigen::Success) throw std::runtime_error("abs_op: eigendecomposition failed");
  Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().adjoint();
}

LabeledMatrix abs_op(const LabeledMatrix& A);

/// lambda_min( ||sum |a_n|^2||_inf * sum |c_n|^2 - |sum a_n^* c_n|^2 ), with |x|^2 = x^* x.
double cs_gap(std::span<const Eigen::MatrixXcd> a, std::span<const Eigen::MatrixXcd> c);
double cs_gap(std::span<const LabeledMatrix> a, std::span<const LabeledMatrix> c);

/// Uniform Q^d grid on T^d: z_k = exp(2 pi i k / Q) per coordinate.
struct QuadratureGrid {
  int dim = 1;
  int points = 1;

  QuadratureGrid() = default;
  QuadratureGrid(int dim, int points);
  /// Q = 4 * (max frequency) + 1, which integrates every product appearing
  /// in ||f||_2 exactly.
  static QuadratureGrid for_poly(const MatTrigPoly& f);
  static QuadratureGrid for_polys(std::span<const MatTrigPoly> g);

  Index size() const;
};

/// Evaluates f on every grid point in row-major grid order.
std::vector<Eigen::MatrixXcd> evaluate_on_grid(const MatTrigPoly& f, const QuadratureGrid& grid);

/// (mean over the grid of ||f(z)||_p^p)^{1/p}; for p = inf the grid maximum.
double lp_sp_norm(const MatTrigPoly& f, double p, const QuadratureGrid& grid);

enum class SquareSide { column, row };

/// ||(sum_j g_j^* g_j)^{1/2}||_{L^p(S_p)} (column) or the row form with g_j g_j^*.
/// Only p >= 2 is supported.
double square_function_norm(std::span<const MatTrigPoly> g, double p, const QuadratureGrid& grid,
                            SquareSide side);

/// max(column, row): the L^p(l^2_cr) norm for p >= 2.
double square_function_norm_cr(std::span<const MatTrigPoly> g, double p, const QuadratureGrid& grid);

}  // namespace schurmarc

#endif  // SCHURMARC_SCHATTEN_HPP
