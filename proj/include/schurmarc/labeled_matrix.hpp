// Finite complex matrices whose rows and columns are labelled by boxes of Z^d.

#ifndef SCHURMARC_LABELED_MATRIX_HPP
#define SCHURMARC_LABELED_MATRIX_HPP

#include <Eigen/Dense>

#include "schurmarc/lattice.hpp"

namespace schurmarc {

class LabeledMatrix {
 public:
  LabeledMatrix() = default;
  /// Zero matrix on rows x cols.
  LabeledMatrix(Box rows, Box cols);
  LabeledMatrix(Box rows, Box cols, Eigen::MatrixXcd entries);
  /// Square matrix on window x window.
  static LabeledMatrix square(const Box& window, Eigen::MatrixXcd entries) {
    return LabeledMatrix(window, window, std::move(entries));
  }
  static LabeledMatrix identity(const Box& window);

  const Box& rows() const { return rows_; }
  const Box& cols() const { return cols_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Eigen::MatrixXcd& entries() { return entries_; }

  Complex at(const Point& s, const Point& t) const {
    return entries_(rows_.linear_index(s), cols_.linear_index(t));
  }
  Complex& at(const Point& s, const Point& t) {
    return entries_(rows_.linear_index(s), cols_.linear_index(t));
  }

  bool is_square() const { return rows_ == cols_; }
  LabeledMatrix adjoint() const { return LabeledMatrix(cols_, rows_, entries_.adjoint()); }

 private:
  Box rows_;
  Box cols_;
  Eigen::MatrixXcd entries_;
};

}  // namespace schurmarc

#endif  // SCHURMARC_LABELED_MATRIX_HPP
