#include "schurmarc/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schurmarc {

std::string to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::dense:
      return "dense";
    case SymbolKind::toeplitz:
      return "toeplitz";
    case SymbolKind::callback:
      return "callback";
  }
  return "unknown";
}

DiscreteSymbol DiscreteSymbol::dense(LabeledMatrix table, std::string name) {
  if (table.rows().dim() != table.cols().dim()) throw std::invalid_argument("dense symbol: row/column dimension mismatch");
  DiscreteSymbol m;
  m.dim_ = table.rows().dim();
  m.kind_ = SymbolKind::dense;
  m.name_ = std::move(name);
  m.table_ = std::make_shared<const LabeledMatrix>(std::move(table));
  return m;
}

DiscreteSymbol DiscreteSymbol::toeplitz(int dim, Generator phi, std::string name) {
  if (dim < 1) throw std::invalid_argument("toeplitz symbol: dimension must be positive");
  DiscreteSymbol m;
  m.dim_ = dim;
  m.kind_ = SymbolKind::toeplitz;
  m.name_ = std::move(name);
  m.phi_ = std::move(phi);
  return m;
}

DiscreteSymbol DiscreteSymbol::callback(int dim, Callback cb, std::string name) {
  if (dim < 1) throw std::invalid_argument("callback symbol: dimension must be positive");
  DiscreteSymbol m;
  m.dim_ = dim;
  m.kind_ = SymbolKind::callback;
  m.name_ = std::move(name);
  m.callback_ = std::move(cb);
  return m;
}

bool DiscreteSymbol::evaluable(const Point& s, const Point& t) const {
  if (kind_ != SymbolKind::dense) return true;
  return table_->rows().contains(s) && table_->cols().contains(t);
}

Complex DiscreteSymbol::operator()(const Point& s, const Point& t) const {
  if (static_cast<int>(s.size()) != dim_ || static_cast<int>(t.size()) != dim_)
    throw std::invalid_argument("symbol '" + name_ + "': dimension mismatch");
  switch (kind_) {
    case SymbolKind::dense:
      if (!evaluable(s, t))
        throw SymbolDomainError("symbol '" + name_ + "': " + to_string(s) + "x" + to_string(t) +
                                " lies outside the dense window");
      return table_->at(s, t);
    case SymbolKind::toeplitz: {
      Point n(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) n[i] = s[i] - t[i];
      return phi_(n);
    }
    case SymbolKind::callback:
      return callback_(s, t);
  }
  throw std::logic_error("DiscreteSymbol: unknown kind");
}

DiscreteSymbol DiscreteSymbol::scaled(Complex lambda) const {
  switch (kind_) {
    case SymbolKind::dense: {
      LabeledMatrix t = *table_;
      t.entries() *= lambda;
      return dense(std::move(t), name_);
    }
    case SymbolKind::toeplitz: {
      auto phi = phi_;
      return toeplitz(dim_, [phi, lambda](const Point& n) { return lambda * phi(n); }, name_);
    }
    case SymbolKind::callback: {
      auto cb = callback_;
      return callback(dim_, [cb, lambda](const Point& s, const Point& t) { return lambda * cb(s, t); }, name_);
    }
  }
  throw std::logic_error("DiscreteSymbol: unknown kind");
}

DiscreteSymbol operator*(const DiscreteSymbol& a, const DiscreteSymbol& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("symbol product: dimension mismatch");
  const std::string name = a.name() + "*" + b.name();
  if (a.kind() == SymbolKind::toeplitz && b.kind() == SymbolKind::toeplitz) {
    auto pa = a.phi_, pb = b.phi_;
    return DiscreteSymbol::toeplitz(a.dim(), [pa, pb](const Point& n) { return pa(n) * pb(n); }, name);
  }
  return DiscreteSymbol::callback(a.dim(), [a, b](const Point& s, const Point& t) { return a(s, t) * b(s, t); }, name);
}

Eigen::MatrixXcd tabulate(const DiscreteSymbol& m, const Box& rows, const Box& cols) {
  Eigen::MatrixXcd out(rows.size(), cols.size());
  Index i = 0;
  rows.for_each([&](const Point& s) {
    Index j = 0;
    cols.for_each([&](const Point& t) { out(i, j++) = m(s, t); });
    ++i;
  });
  return out;
}

DiscreteSymbol restrict_window(const DiscreteSymbol& m, const Box& rows, const Box& cols, Index max_entries) {
  if (rows.dim() != m.dim() || cols.dim() != m.dim()) throw std::invalid_argument("restrict_window: dimension mismatch");
  if (rows.size() * cols.size() > max_entries)
    throw std::length_error("restrict_window: window of " + std::to_string(rows.size() * cols.size()) +
                            " entries exceeds the cap of " + std::to_string(max_entries));
  return DiscreteSymbol::dense(LabeledMatrix(rows, cols, tabulate(m, rows, cols)), m.name());
}

ContinuousSymbol::ContinuousSymbol(int dim, Function M, std::optional<Partial> partial, std::string name, double step)
    : dim_(dim), name_(std::move(name)), M_(std::move(M)), partial_(std::move(partial)), step_(step) {
  if (dim < 1) throw std::invalid_argument("ContinuousSymbol: dimension must be positive");
  if (!(step > 0.0)) throw std::invalid_argument("ContinuousSymbol: step must be positive");
}

Complex ContinuousSymbol::operator()(double x, double y) const {
  if (dim_ != 1) throw std::invalid_argument("ContinuousSymbol: scalar call needs d = 1");
  return M_(std::span<const double>(&x, 1), std::span<const double>(&y, 1));
}

Complex ContinuousSymbol::partial(int argument, AlphaMask alpha, std::span<const double> x,
                                  std::span<const double> y) const {
  if (argument != 0 && argument != 1) throw std::invalid_argument("ContinuousSymbol::partial: argument must be 0 or 1");
  if (alpha.dim() != dim_) throw std::invalid_argument("ContinuousSymbol::partial: mask dimension mismatch");
  if (partial_) return (*partial_)(argument, alpha, x, y);
  return central_difference_partial(M_, argument, alpha, x, y, step_);
}

Complex central_difference_partial(const ContinuousSymbol::Function& M, int argument, AlphaMask alpha,
                                   std::span<const double> x, std::span<const double> y, double step) {
  const int order = alpha.count();
  if (order == 0) return M(x, y);
  const double h = std::pow(step, 1.0 / order);
  std::vector<int> coords;
  for (int i = 0; i < alpha.dim(); ++i)
    if (alpha[i]) coords.push_back(i);
  std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  std::vector<double>& moved = argument == 0 ? xs : ys;
  const std::vector<double> base = moved;
  Complex acc = 0.0;
  for (std::uint32_t signs = 0; signs < (1u << order); ++signs) {
    double weight = 1.0;
    moved = base;
    for (int k = 0; k < order; ++k) {
      const bool minus = (signs >> k) & 1u;
      moved[coords[k]] += minus ? -h : h;
      if (minus) weight = -weight;
    }
    acc += weight * M(xs, ys);
  }
  return acc / std::pow(2.0 * h, order);
}

Complex hashed_complex(std::uint64_t seed, std::span<const Index> key) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(seed);
  for (Index v : key) h = mix(h ^ static_cast<std::uint64_t>(v));
  const std::uint64_t a = mix(h), b = mix(a);
  auto unit = [](std::uint64_t z) { return static_cast<double>(z >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  return {unit(a), unit(b)};
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "constant_one",        "triangular",        "lacunary_toeplitz", "rank_one",
      "smooth_homogeneous",  "random",            "random_toeplitz",   "continuous_constant",
      "continuous_linear",   "continuous_arctan", "continuous_step",   "continuous_ratio"};
  return names;
}

bool is_continuous_catalog_name(const std::string& name) { return name.rfind("continuous_", 0) == 0; }

namespace {

double sum_abs(const Point& p) {
  double a = 0.0;
  for (Index v : p) a += std::abs(static_cast<double>(v));
  return a;
}

ContinuousSymbol::Function scalar_function(int dim, std::function<double(double)> g) {
  // M(x, y) = g(sum_i (x_i - y_i))
  return [dim, g = std::move(g)](std::span<const double> x, std::span<const double> y) {
    double u = 0.0;
    for (int i = 0; i < dim; ++i) u += x[i] - y[i];
    return Complex(g(u));
  };
}

ContinuousSymbol::Partial scalar_partial(int dim, std::function<double(double, int)> dg) {
  // derivatives of g(sum (x_i - y_i)): order r brings g^{(r)} and (-1)^r for y
  return [dim, dg = std::move(dg)](int argument, AlphaMask alpha, std::span<const double> x,
                                   std::span<const double> y) {
    double u = 0.0;
    for (int i = 0; i < dim; ++i) u += x[i] - y[i];
    const int r = alpha.count();
    const double sign = (argument == 1 && r % 2 == 1) ? -1.0 : 1.0;
    return Complex(sign * dg(u, r));
  };
}

}  // namespace

DiscreteSymbol discrete_catalog(const std::string& name, const CatalogParams& params) {
  const int d = params.dim;
  if (d < 1) throw std::invalid_argument("catalog: dimension must be positive");
  if (name == "constant_one")
    return DiscreteSymbol::toeplitz(d, [](const Point&) { return Complex(1.0); }, name);
  if (name == "triangular") {
    if (d != 1) throw std::invalid_argument("catalog: triangular is defined for d = 1");
    return DiscreteSymbol::toeplitz(1, [](const Point& n) { return Complex(n[0] >= 0 ? 1.0 : 0.0); }, name);
  }
  if (name == "lacunary_toeplitz") {
    const std::uint64_t seed = params.seed;
    return DiscreteSymbol::toeplitz(
        d,
        [seed](const Point& n) {
          const Index level = dyadic_level(n);
          return Complex(hashed_complex(seed, std::span<const Index>(&level, 1)).real() >= 0 ? 1.0 : -1.0);
        },
        name);
  }
  if (name == "rank_one") {
    if (d != 1) throw std::invalid_argument("catalog: rank_one is defined for d = 1");
    if (params.u.empty() || params.v.empty()) throw std::invalid_argument("catalog: rank_one needs parameters u and v");
    auto u = params.u, v = params.v;
    const Index off = params.offset;
    return DiscreteSymbol::callback(
        1,
        [u, v, off](const Point& s, const Point& t) {
          const Index i = s[0] - off, j = t[0] - off;
          if (i < 0 || j < 0 || i >= static_cast<Index>(u.size()) || j >= static_cast<Index>(v.size()))
            throw SymbolDomainError("rank_one: index outside the factor vectors");
          return u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
        },
        name);
  }
  if (name == "smooth_homogeneous")
    return DiscreteSymbol::callback(
        d,
        [](const Point& s, const Point& t) {
          double diff = 0.0;
          for (std::size_t i = 0; i < s.size(); ++i) diff += static_cast<double>(s[i] - t[i]);
          return Complex(std::tanh(2.0 * diff / (1.0 + sum_abs(s) + sum_abs(t))));
        },
        name);
  if (name == "random") {
    const std::uint64_t seed = params.seed;
    return DiscreteSymbol::callback(
        d,
        [seed](const Point& s, const Point& t) {
          Point key = s;
          key.insert(key.end(), t.begin(), t.end());
          return hashed_complex(seed, key);
        },
        name);
  }
  if (name == "random_toeplitz") {
    const std::uint64_t seed = params.seed;
    return DiscreteSymbol::toeplitz(d, [seed](const Point& n) { return hashed_complex(seed ^ 0x5bd1e995ull, n); },
                                    name);
  }
  if (is_continuous_catalog_name(name)) throw std::invalid_argument("catalog: '" + name + "' is a continuous symbol");
  throw std::invalid_argument("catalog: unknown symbol '" + name + "'");
}

ContinuousSymbol continuous_catalog(const std::string& name, const CatalogParams& params) {
  const int d = params.dim;
  if (d < 1) throw std::invalid_argument("catalog: dimension must be positive");
  if (name == "continuous_constant")
    return ContinuousSymbol(
        d, [](std::span<const double>, std::span<const double>) { return Complex(1.0); },
        [](int, AlphaMask alpha, std::span<const double>, std::span<const double>) {
          return Complex(alpha.is_zero() ? 1.0 : 0.0);
        },
        name);
  if (name == "continuous_linear")
    return ContinuousSymbol(d, scalar_function(d, [](double u) { return u; }),
                            scalar_partial(d, [](double u, int r) { return r == 0 ? u : (r == 1 ? 1.0 : 0.0); }), name);
  if (name == "continuous_arctan")
    return ContinuousSymbol(d, scalar_function(d, [](double u) { return std::atan(u); }),
                            scalar_partial(d,
                                           [](double u, int r) {
                                             const double w = 1.0 + u * u;
                                             switch (r) {
                                               case 0: return std::atan(u);
                                               case 1: return 1.0 / w;
                                               case 2: return -2.0 * u / (w * w);
                                               case 3: return (6.0 * u * u - 2.0) / (w * w * w);
                                               default: throw std::invalid_argument("continuous_arctan: order > 3");
                                             }
                                           }),
                            name);
  if (name == "continuous_step")
    return ContinuousSymbol(d, scalar_function(d, [](double u) { return std::tanh(u); }),
                            scalar_partial(d,
                                           [](double u, int r) {
                                             const double t = std::tanh(u), s2 = 1.0 - t * t;
                                             switch (r) {
                                               case 0: return t;
                                               case 1: return s2;
                                               case 2: return -2.0 * t * s2;
                                               case 3: return s2 * (6.0 * t * t - 2.0);
                                               default: throw std::invalid_argument("continuous_step: order > 3");
                                             }
                                           }),
                            name);
  if (name == "continuous_ratio") {
    if (d != 1) throw std::invalid_argument("catalog: continuous_ratio is defined for d = 1");
    auto M = [](std::span<const double> x, std::span<const double> y) {
      return Complex((x[0] - y[0]) / (1.0 + std::abs(x[0]) + std::abs(y[0])));
    };
    auto partial = [](int argument, AlphaMask alpha, std::span<const double> x, std::span<const double> y) {
      const double a = x[0], b = y[0], den = 1.0 + std::abs(a) + std::abs(b);
      if (alpha.is_zero()) return Complex((a - b) / den);
      auto sgn = [](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); };
      if (argument == 0) return Complex((den - (a - b) * sgn(a)) / (den * den));
      return Complex((-den - (a - b) * sgn(b)) / (den * den));
    };
    return ContinuousSymbol(1, M, partial, name);
  }
  throw std::invalid_argument("catalog: unknown continuous symbol '" + name + "'");
}

Symbol catalog(const std::string& name, const CatalogParams& params) {
  if (is_continuous_catalog_name(name)) return continuous_catalog(name, params);
  return discrete_catalog(name, params);
}

}  // namespace schurmarc
