// Matrix-valued trigonometric polynomials on the d-torus,
//   f(z) = sum_n fhat(n) z^n,   z in T^d,
// with finitely many nonzero matrix coefficients sharing one row and one
// column window.

#ifndef SCHURMARC_TRIG_POLY_HPP
#define SCHURMARC_TRIG_POLY_HPP

#include <map>
#include <vector>

#include "schurmarc/labeled_matrix.hpp"

namespace schurmarc {

class MatTrigPoly {
 public:
  using CoefficientMap = std::map<Point, Eigen::MatrixXcd>;

  MatTrigPoly() = default;
  MatTrigPoly(int dim, Box rows, Box cols);

  /// The constant polynomial z -> A.
  static MatTrigPoly constant(int dim, const LabeledMatrix& A);

  int dim() const { return dim_; }
  const Box& rows() const { return rows_; }
  const Box& cols() const { return cols_; }
  const CoefficientMap& coefficients() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  /// fhat(n), or zero when n is outside the support.
  Eigen::MatrixXcd coefficient(const Point& n) const;
  bool has(const Point& n) const { return coeffs_.count(n) != 0; }
  void set(const Point& n, Eigen::MatrixXcd c);
  void add(const Point& n, const Eigen::MatrixXcd& c);
  /// fhat(n) for in-place updates; inserts a zero coefficient when absent.
  Eigen::MatrixXcd& coefficient_ref(const Point& n);
  /// Drops coefficients whose entries are all exactly zero.
  void prune();

  /// max |n|_inf over the support (0 for the zero polynomial).
  Index max_frequency() const;

  Eigen::MatrixXcd evaluate(const std::vector<Complex>& z) const;

  MatTrigPoly adjoint() const;

  MatTrigPoly& operator+=(const MatTrigPoly& g);
  MatTrigPoly& operator-=(const MatTrigPoly& g);
  MatTrigPoly& operator*=(Complex c);

  friend MatTrigPoly operator+(MatTrigPoly f, const MatTrigPoly& g) { return f += g; }
  friend MatTrigPoly operator-(MatTrigPoly f, const MatTrigPoly& g) { return f -= g; }
  friend MatTrigPoly operator*(Complex c, MatTrigPoly f) { return f *= c; }
  /// Pointwise product on T^d, i.e. coefficient convolution.
  friend MatTrigPoly operator*(const MatTrigPoly& f, const MatTrigPoly& g);

 private:
  void check_compatible(const MatTrigPoly& g, const char* what) const;

  int dim_ = 0;
  Box rows_;
  Box cols_;
  CoefficientMap coeffs_;
};

/// Largest entrywise modulus of f - g over the union of supports.
double max_abs_difference(const MatTrigPoly& f, const MatTrigPoly& g);
/// Largest entrywise modulus over all coefficients.
double max_abs_coefficient(const MatTrigPoly& f);

}  // namespace schurmarc

#endif  // SCHURMARC_TRIG_POLY_HPP
