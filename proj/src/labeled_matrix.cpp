#include "schurmarc/labeled_matrix.hpp"

#include <stdexcept>

namespace schurmarc {

LabeledMatrix::LabeledMatrix(Box rows, Box cols)
    : rows_(std::move(rows)), cols_(std::move(cols)),
      entries_(Eigen::MatrixXcd::Zero(rows_.size(), cols_.size())) {}

LabeledMatrix::LabeledMatrix(Box rows, Box cols, Eigen::MatrixXcd entries)
    : rows_(std::move(rows)), cols_(std::move(cols)), entries_(std::move(entries)) {
  if (entries_.rows() != rows_.size() || entries_.cols() != cols_.size())
    throw std::invalid_argument("LabeledMatrix: entry shape does not match the windows");
}

LabeledMatrix LabeledMatrix::identity(const Box& window) {
  return LabeledMatrix(window, window, Eigen::MatrixXcd::Identity(window.size(), window.size()));
}

}  // namespace schurmarc
