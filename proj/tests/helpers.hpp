#ifndef SCHURMARC_TEST_HELPERS_HPP
#define SCHURMARC_TEST_HELPERS_HPP

#include <random>

#include <Eigen/Dense>

#include "schurmarc/lattice.hpp"

namespace testing {

using schurmarc::Complex;
using schurmarc::Index;

inline Eigen::MatrixXcd gaussian(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd A(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) A(i, j) = Complex(n(rng), n(rng));
  return A;
}

inline Index uniform(std::mt19937_64& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

/// Haar-ish unitary from the QR factor of a Gaussian matrix
inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, Index n) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gaussian(rng, n, n));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace testing

#endif
