#include "schurmarc/schatten.hpp"

#include <algorithm>
#include <charconv>
#include <numbers>
#include <sstream>

namespace schurmarc {

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInfinity;
  auto parse_number = [&](std::string_view part) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size())
      throw std::invalid_argument("cannot parse exponent '" + text + "'");
    return v;
  };
  std::string_view view(text);
  if (auto slash = view.find('/'); slash != std::string_view::npos) {
    double num = parse_number(view.substr(0, slash));
    double den = parse_number(view.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("exponent '" + text + "' has zero denominator");
    return num / den;
  }
  return parse_number(view);
}

std::string format_exponent(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << p;
  return os.str();
}

double schatten_from_singular_values(const Eigen::VectorXd& sigma, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("schatten norm: exponent must be positive");
  if (sigma.size() == 0) return 0.0;
  const double top = sigma.maxCoeff();
  if (std::isinf(p)) return top;
  if (top == 0.0) return 0.0;
  // Scaling by sigma_max keeps the p-th powers in range.
  double acc = 0.0;
  for (double s : sigma) {
    if (s <= kSingularValueFloor * top) continue;
    acc += std::pow(s / top, p);
  }
  return top * std::pow(acc, 1.0 / p);
}

double schatten_norm(const LabeledMatrix& A, double p) { return schatten_norm(A.entries(), p); }

LabeledMatrix abs_op(const LabeledMatrix& A) { return LabeledMatrix(A.cols(), A.cols(), abs_op(A.entries())); }

double cs_gap(std::span<const Eigen::MatrixXcd> a, std::span<const Eigen::MatrixXcd> c) {
  if (a.size() != c.size()) throw std::invalid_argument("cs_gap: sequences differ in length");
  if (a.empty()) return 0.0;
  const Index rows = a[0].rows(), acols = a[0].cols(), ccols = c[0].cols();
  Eigen::MatrixXcd cross = Eigen::MatrixXcd::Zero(acols, ccols);
  Eigen::MatrixXcd a_square = Eigen::MatrixXcd::Zero(acols, acols);
  Eigen::MatrixXcd c_square = Eigen::MatrixXcd::Zero(ccols, ccols);
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (a[n].rows() != rows || a[n].cols() != acols || c[n].rows() != rows || c[n].cols() != ccols)
      throw std::invalid_argument("cs_gap: window mismatch at term " + std::to_string(n));
    cross += a[n].adjoint() * c[n];
    a_square += a[n].adjoint() * a[n];
    c_square += c[n].adjoint() * c[n];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> top(a_square, Eigen::EigenvaluesOnly);
  const double bound = std::max(0.0, top.eigenvalues().maxCoeff());
  Eigen::MatrixXcd gap = bound * c_square - cross.adjoint() * cross;
  gap = 0.5 * (gap + gap.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gap, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw std::runtime_error("cs_gap: eigendecomposition failed");
  return eig.eigenvalues().minCoeff();
}

double cs_gap(std::span<const LabeledMatrix> a, std::span<const LabeledMatrix> c) {
  if (a.size() != c.size()) throw std::invalid_argument("cs_gap: sequences differ in length");
  std::vector<Eigen::MatrixXcd> am, cm;
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (!(a[n].rows() == c[n].rows()) || !(a[n].rows() == a[0].rows()) || !(a[n].cols() == a[0].cols()) ||
        !(c[n].cols() == c[0].cols()))
      throw std::invalid_argument("cs_gap: window mismatch at term " + std::to_string(n));
    am.push_back(a[n].entries());
    cm.push_back(c[n].entries());
  }
  return cs_gap(std::span<const Eigen::MatrixXcd>(am), std::span<const Eigen::MatrixXcd>(cm));
}

QuadratureGrid::QuadratureGrid(int d, int q) : dim(d), points(q) {
  if (d < 1) throw std::invalid_argument("QuadratureGrid: dimension must be positive");
  if (q < 1) throw std::invalid_argument("QuadratureGrid: empty grid");
}

QuadratureGrid QuadratureGrid::for_poly(const MatTrigPoly& f) {
  return QuadratureGrid(f.dim(), static_cast<int>(4 * f.max_frequency() + 1));
}

QuadratureGrid QuadratureGrid::for_polys(std::span<const MatTrigPoly> g) {
  if (g.empty()) throw std::invalid_argument("QuadratureGrid::for_polys: empty sequence");
  Index top = 0;
  for (const auto& f : g) top = std::max(top, f.max_frequency());
  return QuadratureGrid(g[0].dim(), static_cast<int>(4 * top + 1));
}

Index QuadratureGrid::size() const {
  Index s = 1;
  for (int i = 0; i < dim; ++i) s *= points;
  return s;
}

std::vector<Eigen::MatrixXcd> evaluate_on_grid(const MatTrigPoly& f, const QuadratureGrid& grid) {
  if (grid.dim != f.dim()) throw std::invalid_argument("evaluate_on_grid: grid dimension mismatch");
  const Index Q = grid.points;
  // Phases are reduced mod Q in integer arithmetic so z^n is exact on the grid.
  std::vector<std::pair<Point, const Eigen::MatrixXcd*>> terms;
  for (const auto& [n, c] : f.coefficients()) terms.emplace_back(n, &c);
  std::vector<Eigen::MatrixXcd> values;
  values.reserve(static_cast<std::size_t>(grid.size()));
  Box::cube(grid.dim, 0, Q).for_each([&](const Point& k) {
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(f.rows().size(), f.cols().size());
    for (const auto& [n, c] : terms) {
      Index phase = 0;
      for (int i = 0; i < grid.dim; ++i) phase += ((n[i] % Q) * k[i]) % Q;
      phase = ((phase % Q) + Q) % Q;
      v += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(Q)) * *c;
    }
    values.push_back(std::move(v));
  });
  return values;
}

double lp_sp_norm(const MatTrigPoly& f, double p, const QuadratureGrid& grid) {
  const auto values = evaluate_on_grid(f, grid);
  if (values.empty()) throw std::invalid_argument("lp_sp_norm: empty grid");
  if (std::isinf(p)) {
    double top = 0.0;
    for (const auto& v : values) top = std::max(top, schatten_norm(v, p));
    return top;
  }
  double acc = 0.0;
  for (const auto& v : values) acc += std::pow(schatten_norm(v, p), p);
  return std::pow(acc / static_cast<double>(values.size()), 1.0 / p);
}

double square_function_norm(std::span<const MatTrigPoly> g, double p, const QuadratureGrid& grid, SquareSide side) {
  if (!(p >= 2.0)) throw std::invalid_argument("square_function_norm: only p >= 2 is supported");
  if (g.empty()) return 0.0;
  // a single nonzero term: (|g|^2)^{1/2} = |g|
  const MatTrigPoly* only = nullptr;
  int nonzero = 0;
  for (const auto& f : g)
    if (max_abs_coefficient(f) > 0.0) {
      only = &f;
      ++nonzero;
    }
  if (nonzero == 0) return 0.0;
  if (nonzero == 1) return lp_sp_norm(*only, p, grid);
  std::vector<std::vector<Eigen::MatrixXcd>> values;
  for (const auto& f : g) values.push_back(evaluate_on_grid(f, grid));
  const std::size_t npts = values[0].size();
  if (npts == 0) throw std::invalid_argument("square_function_norm: empty grid");
  double acc = 0.0;
  for (std::size_t k = 0; k < npts; ++k) {
    const Index n = side == SquareSide::column ? g[0].cols().size() : g[0].rows().size();
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& vj : values) {
      const auto& v = vj[k];
      if (side == SquareSide::column)
        G.noalias() += v.adjoint() * v;
      else
        G.noalias() += v * v.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(G, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw std::runtime_error("square_function_norm: eigendecomposition failed");
    // eigenvalues of G are the squared singular values of the column (row) vector
    Eigen::VectorXd sigma = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    if (std::isinf(p))
      acc = std::max(acc, sigma.size() ? sigma.maxCoeff() : 0.0);
    else
      acc += std::pow(schatten_from_singular_values(sigma, p), p);
  }
  if (std::isinf(p)) return acc;
  return std::pow(acc / static_cast<double>(npts), 1.0 / p);
}

double square_function_norm_cr(std::span<const MatTrigPoly> g, double p, const QuadratureGrid& grid) {
  return std::max(square_function_norm(g, p, grid, SquareSide::column),
                  square_function_norm(g, p, grid, SquareSide::row));
}

}  // namespace schurmarc
