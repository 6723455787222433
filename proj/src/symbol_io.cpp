#include "schurmarc/symbol_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>

#include "schurmarc/expression.hpp"

namespace schurmarc {

using nlohmann::json;

nlohmann::json complex_to_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw SpecError("expected a number or [re, im], got " + j.dump());
}

nlohmann::json box_to_json(const Box& b) { return {{"lo", b.lo()}, {"hi", b.hi()}}; }

Box box_from_json(const json& j) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi")) throw SpecError("box needs fields 'lo' and 'hi'");
  auto coords = [](const json& v) {
    if (v.is_number_integer()) return Point{v.get<Index>()};
    if (!v.is_array()) throw SpecError("box bound must be an integer or an integer list");
    Point p;
    for (const auto& x : v) {
      if (!x.is_number_integer()) throw SpecError("box bound must be an integer or an integer list");
      p.push_back(x.get<Index>());
    }
    return p;
  };
  Point lo = coords(j["lo"]), hi = coords(j["hi"]);
  if (lo.size() != hi.size()) throw SpecError("box bounds differ in dimension");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) throw SpecError("box has lo > hi");
  return Box(lo, hi);
}

namespace {

struct Guards {
  struct PointGuard {
    std::map<std::string, double> coords;
    Complex value;
  };
  std::vector<PointGuard> at_points;
  std::optional<Complex> on_division_by_zero;
};

Guards parse_guards(const json& spec, const std::vector<std::string>& variables) {
  Guards g;
  if (!spec.contains("guards")) return g;
  const json& list = spec["guards"];
  if (!list.is_array()) throw SpecError("'guards' must be a list");
  for (const auto& item : list) {
    if (!item.is_object() || !item.contains("when") || !item.contains("value"))
      throw SpecError("each guard needs 'when' and 'value'");
    const Complex value = complex_from_json(item["value"]);
    const json& when = item["when"];
    if (when.is_string()) {
      if (when.get<std::string>() != "division_by_zero")
        throw SpecError("unknown guard condition '" + when.get<std::string>() + "'");
      g.on_division_by_zero = value;
    } else if (when.is_object()) {
      Guards::PointGuard pg{{}, value};
      for (const auto& [name, v] : when.items()) {
        if (std::find(variables.begin(), variables.end(), name) == variables.end())
          throw SpecError("guard refers to unknown variable '" + name + "'");
        if (!v.is_number()) throw SpecError("guard coordinate '" + name + "' must be a number");
        pg.coords[name] = v.get<double>();
      }
      g.at_points.push_back(std::move(pg));
    } else {
      throw SpecError("guard 'when' must be \"division_by_zero\" or an object of coordinates");
    }
  }
  return g;
}

Expression parse_expression(const json& spec, const char* field, const std::vector<std::string>& variables) {
  if (!spec.contains(field) || !spec[field].is_string())
    throw SpecError(std::string("missing string field '") + field + "'");
  try {
    return Expression::parse(spec[field].get<std::string>(), variables);
  } catch (const ParseError& e) {
    throw SpecError(std::string("field '") + field + "': " + e.what());
  }
}

std::vector<std::string> numbered(const std::string& prefix, int d) {
  std::vector<std::string> out;
  for (int i = 1; i <= d; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// Expression evaluation with guards applied.
struct GuardedExpression {
  Expression expr;
  Guards guards;

  Complex operator()(std::span<const double> values) const {
    const auto& vars = expr.variables();
    for (const auto& pg : guards.at_points) {
      bool match = true;
      for (const auto& [name, v] : pg.coords) {
        const auto idx = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), name) - vars.begin());
        if (values[idx] != v) {
          match = false;
          break;
        }
      }
      if (match) return pg.value;
    }
    try {
      return expr.evaluate(values);
    } catch (const DivisionByZero&) {
      if (guards.on_division_by_zero) return *guards.on_division_by_zero;
      throw;
    }
  }
};

int read_dim(const json& spec) {
  if (!spec.contains("d")) return 1;
  if (!spec["d"].is_number_integer() || spec["d"].get<int>() < 1) throw SpecError("'d' must be a positive integer");
  return spec["d"].get<int>();
}

std::string read_name(const json& spec, const std::string& fallback) {
  if (spec.contains("name")) {
    if (!spec["name"].is_string()) throw SpecError("'name' must be a string");
    return spec["name"].get<std::string>();
  }
  return fallback;
}

DiscreteSymbol parse_dense(const json& spec, int d) {
  if (!spec.contains("rows") || !spec.contains("cols") || !spec.contains("entries"))
    throw SpecError("dense symbol needs 'rows', 'cols' and 'entries'");
  const Box rows = box_from_json(spec["rows"]), cols = box_from_json(spec["cols"]);
  if (rows.dim() != d || cols.dim() != d) throw SpecError("dense windows must have dimension d");
  const json& entries = spec["entries"];
  if (!entries.is_array() || static_cast<Index>(entries.size()) != rows.size() * cols.size())
    throw SpecError("dense 'entries' must list |rows| * |cols| = " + std::to_string(rows.size() * cols.size()) +
                    " values");
  Eigen::MatrixXcd m(rows.size(), cols.size());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      m(i, j) = complex_from_json(entries[static_cast<std::size_t>(i * m.cols() + j)]);
  return DiscreteSymbol::dense(LabeledMatrix(rows, cols, std::move(m)), read_name(spec, "dense"));
}

ContinuousSymbol parse_continuous(const json& spec, int d) {
  std::vector<std::string> vars = numbered("x", d);
  for (auto& y : numbered("y", d)) vars.push_back(y);
  auto M = std::make_shared<GuardedExpression>(
      GuardedExpression{parse_expression(spec, "expr", vars), parse_guards(spec, vars)});
  double h = ContinuousSymbol::kDefaultStep;
  if (spec.contains("h")) {
    if (!spec["h"].is_number() || !(spec["h"].get<double>() > 0)) throw SpecError("'h' must be a positive number");
    h = spec["h"].get<double>();
  }
  auto eval = [M](std::span<const double> x, std::span<const double> y) {
    std::vector<double> v(x.begin(), x.end());
    v.insert(v.end(), y.begin(), y.end());
    return (*M)(v);
  };
  std::optional<ContinuousSymbol::Partial> partial;
  if (spec.contains("partials")) {
    const json& ps = spec["partials"];
    if (!ps.is_object()) throw SpecError("'partials' must be an object");
    // key: (argument, mask bits)
    auto table = std::make_shared<std::map<std::pair<int, std::uint32_t>, GuardedExpression>>();
    for (const auto& [key, text] : ps.items()) {
      int argument = -1;
      std::uint32_t bits = 0;
      std::size_t pos = 0;
      while (pos <= key.size()) {
        const std::size_t comma = std::min(key.find(',', pos), key.size());
        const std::string var = key.substr(pos, comma - pos);
        pos = comma + 1;
        if (var.size() < 2 || (var[0] != 'x' && var[0] != 'y')) throw SpecError("bad partial key '" + key + "'");
        const int arg = var[0] == 'x' ? 0 : 1;
        int coord = 0;
        try {
          coord = std::stoi(var.substr(1)) - 1;
        } catch (const std::exception&) {
          throw SpecError("bad partial key '" + key + "'");
        }
        if (coord < 0 || coord >= d) throw SpecError("partial key '" + key + "' is out of range");
        if (argument != -1 && argument != arg) throw SpecError("partial key '" + key + "' mixes x and y");
        argument = arg;
        bits |= 1u << coord;
      }
      json holder = {{"expr", text}};
      (*table)[{argument, bits}] = GuardedExpression{parse_expression(holder, "expr", vars), parse_guards(spec, vars)};
    }
    partial = [table, eval, h](int argument, AlphaMask alpha, std::span<const double> x, std::span<const double> y) {
      if (alpha.is_zero()) return eval(x, y);
      auto it = table->find({argument, alpha.bits()});
      if (it == table->end()) return central_difference_partial(eval, argument, alpha, x, y, h);
      std::vector<double> v(x.begin(), x.end());
      v.insert(v.end(), y.begin(), y.end());
      return it->second(v);
    };
  }
  return ContinuousSymbol(d, eval, partial, read_name(spec, "continuous"), h);
}

}  // namespace

Symbol parse_symbol(const json& spec) {
  if (!spec.is_object()) throw SpecError("symbol spec must be a JSON object");
  if (!spec.contains("kind") || !spec["kind"].is_string()) throw SpecError("missing string field 'kind'");
  const std::string kind = spec["kind"].get<std::string>();
  const int d = read_dim(spec);
  if (kind == "dense") return parse_dense(spec, d);
  if (kind == "toeplitz") {
    const auto vars = numbered("k", d);
    auto phi = std::make_shared<GuardedExpression>(
        GuardedExpression{parse_expression(spec, "phi", vars), parse_guards(spec, vars)});
    return DiscreteSymbol::toeplitz(
        d,
        [phi](const Point& n) {
          std::vector<double> v(n.begin(), n.end());
          return (*phi)(v);
        },
        read_name(spec, "toeplitz"));
  }
  if (kind == "callback") {
    std::vector<std::string> vars = numbered("s", d);
    for (auto& t : numbered("t", d)) vars.push_back(t);
    auto m = std::make_shared<GuardedExpression>(
        GuardedExpression{parse_expression(spec, "expr", vars), parse_guards(spec, vars)});
    return DiscreteSymbol::callback(
        d,
        [m](const Point& s, const Point& t) {
          std::vector<double> v(s.begin(), s.end());
          v.insert(v.end(), t.begin(), t.end());
          return (*m)(v);
        },
        read_name(spec, "callback"));
  }
  if (kind == "continuous") return parse_continuous(spec, d);
  throw SpecError("unknown symbol kind '" + kind + "'");
}

Symbol load_symbol(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open symbol spec '" + path + "'");
  json spec;
  try {
    spec = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_symbol(spec);
}

nlohmann::json dense_symbol_to_json(const DiscreteSymbol& m) {
  const LabeledMatrix* t = m.table();
  if (!t) throw std::invalid_argument("dense_symbol_to_json: symbol is not dense");
  json entries = json::array();
  for (Index i = 0; i < t->entries().rows(); ++i)
    for (Index j = 0; j < t->entries().cols(); ++j) entries.push_back(complex_to_json(t->entries()(i, j)));
  return {{"kind", "dense"},
          {"d", m.dim()},
          {"name", m.name()},
          {"rows", box_to_json(t->rows())},
          {"cols", box_to_json(t->cols())},
          {"entries", std::move(entries)}};
}

}  // namespace schurmarc
