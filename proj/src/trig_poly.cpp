#include "schurmarc/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schurmarc {

MatTrigPoly::MatTrigPoly(int dim, Box rows, Box cols)
    : dim_(dim), rows_(std::move(rows)), cols_(std::move(cols)) {
  if (dim < 1) throw std::invalid_argument("MatTrigPoly: dimension must be positive");
}

MatTrigPoly MatTrigPoly::constant(int dim, const LabeledMatrix& A) {
  MatTrigPoly f(dim, A.rows(), A.cols());
  f.set(Point(dim, 0), A.entries());
  return f;
}

Eigen::MatrixXcd MatTrigPoly::coefficient(const Point& n) const {
  auto it = coeffs_.find(n);
  if (it == coeffs_.end()) return Eigen::MatrixXcd::Zero(rows_.size(), cols_.size());
  return it->second;
}

void MatTrigPoly::set(const Point& n, Eigen::MatrixXcd c) {
  if (static_cast<int>(n.size()) != dim_) throw std::invalid_argument("MatTrigPoly::set: frequency dimension mismatch");
  if (c.rows() != rows_.size() || c.cols() != cols_.size())
    throw std::invalid_argument("MatTrigPoly::set: coefficient shape mismatch");
  coeffs_[n] = std::move(c);
}

void MatTrigPoly::add(const Point& n, const Eigen::MatrixXcd& c) {
  auto it = coeffs_.find(n);
  if (it == coeffs_.end())
    set(n, c);
  else
    it->second += c;
}

Eigen::MatrixXcd& MatTrigPoly::coefficient_ref(const Point& n) {
  auto it = coeffs_.find(n);
  if (it == coeffs_.end()) {
    set(n, Eigen::MatrixXcd::Zero(rows_.size(), cols_.size()));
    it = coeffs_.find(n);
  }
  return it->second;
}

void MatTrigPoly::prune() {
  std::erase_if(coeffs_, [](const auto& kv) { return (kv.second.array() == Complex(0.0)).all(); });
}

Index MatTrigPoly::max_frequency() const {
  Index m = 0;
  for (const auto& [n, c] : coeffs_) m = std::max(m, sup_norm(n));
  return m;
}

Eigen::MatrixXcd MatTrigPoly::evaluate(const std::vector<Complex>& z) const {
  if (static_cast<int>(z.size()) != dim_) throw std::invalid_argument("MatTrigPoly::evaluate: point dimension mismatch");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows_.size(), cols_.size());
  for (const auto& [n, c] : coeffs_) {
    Complex w = 1.0;
    for (int i = 0; i < dim_; ++i) w *= std::pow(z[i], static_cast<double>(n[i]));
    out += w * c;
  }
  return out;
}

MatTrigPoly MatTrigPoly::adjoint() const {
  MatTrigPoly g(dim_, cols_, rows_);
  for (const auto& [n, c] : coeffs_) {
    Point m = n;
    for (Index& v : m) v = -v;
    g.coeffs_[m] = c.adjoint();
  }
  return g;
}

void MatTrigPoly::check_compatible(const MatTrigPoly& g, const char* what) const {
  if (g.dim_ != dim_ || !(g.rows_ == rows_) || !(g.cols_ == cols_))
    throw std::invalid_argument(std::string(what) + ": incompatible polynomials");
}

MatTrigPoly& MatTrigPoly::operator+=(const MatTrigPoly& g) {
  check_compatible(g, "MatTrigPoly::operator+=");
  for (const auto& [n, c] : g.coeffs_) add(n, c);
  return *this;
}

MatTrigPoly& MatTrigPoly::operator-=(const MatTrigPoly& g) {
  check_compatible(g, "MatTrigPoly::operator-=");
  for (const auto& [n, c] : g.coeffs_) add(n, -c);
  return *this;
}

MatTrigPoly& MatTrigPoly::operator*=(Complex c) {
  for (auto& [n, m] : coeffs_) m *= c;
  return *this;
}

MatTrigPoly operator*(const MatTrigPoly& f, const MatTrigPoly& g) {
  if (f.dim_ != g.dim_ || !(f.cols_ == g.rows_)) throw std::invalid_argument("MatTrigPoly product: incompatible windows");
  MatTrigPoly h(f.dim_, f.rows_, g.cols_);
  for (const auto& [a, fa] : f.coeffs_)
    for (const auto& [b, gb] : g.coeffs_) {
      Point n = a;
      for (int i = 0; i < f.dim_; ++i) n[i] += b[i];
      h.add(n, fa * gb);
    }
  return h;
}

double max_abs_difference(const MatTrigPoly& f, const MatTrigPoly& g) {
  double worst = 0.0;
  for (const auto& [n, c] : f.coefficients())
    worst = std::max(worst, (c - g.coefficient(n)).cwiseAbs().maxCoeff());
  for (const auto& [n, c] : g.coefficients())
    if (!f.has(n)) worst = std::max(worst, c.cwiseAbs().maxCoeff());
  return worst;
}

double max_abs_coefficient(const MatTrigPoly& f) {
  double worst = 0.0;
  for (const auto& [n, c] : f.coefficients())
    if (c.size()) worst = std::max(worst, c.cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace schurmarc
