#include "schurmarc/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace schurmarc {

using Complex = std::complex<double>;

struct Expression::Node {
  enum class Op { constant, variable, neg, add, sub, mul, div, pow, call };
  Op op = Op::constant;
  Complex value;
  std::size_t variable = 0;
  std::string function;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

struct FunctionInfo {
  const char* name;
  int arity;
};

constexpr FunctionInfo kFunctions[] = {
    {"abs", 1},  {"sign", 1}, {"exp", 1},  {"log", 1}, {"sqrt", 1}, {"sin", 1},  {"cos", 1}, {"tan", 1},
    {"atan", 1}, {"tanh", 1}, {"re", 1},   {"im", 1},  {"conj", 1}, {"min", 2},  {"max", 2},
};

const FunctionInfo* find_function(const std::string& name) {
  for (const auto& f : kFunctions)
    if (name == f.name) return &f;
  return nullptr;
}

NodePtr make(Node::Op op, std::vector<NodePtr> args = {}) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make(Node::Op::add, {lhs, term()});
      else if (accept('-'))
        lhs = make(Node::Op::sub, {lhs, term()});
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Node::Op::mul, {lhs, unary()});
      else if (accept('/'))
        lhs = make(Node::Op::div, {lhs, unary()});
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::Op::neg, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Node::Op::pow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = std::make_shared<Node>();
    n->op = Node::Op::constant;
    n->value = Complex(v, 0.0);
    if (pos_ < text_.size() && (text_[pos_] == 'i' || text_[pos_] == 'j') &&
        (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      n->value = Complex(0.0, v);
    }
    return n;
  }

  NodePtr name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string id = text_.substr(start, pos_ - start);
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      const FunctionInfo* f = find_function(id);
      if (!f) {
        pos_ = start;
        fail("unknown function '" + id + "'");
      }
      ++pos_;
      std::vector<NodePtr> args{expr()};
      while (accept(',')) args.push_back(expr());
      expect(')');
      if (static_cast<int>(args.size()) != f->arity) {
        pos_ = start;
        fail("function '" + id + "' expects " + std::to_string(f->arity) + " argument(s)");
      }
      auto n = make(Node::Op::call, std::move(args));
      std::const_pointer_cast<Node>(n)->function = id;
      return n;
    }
    if (auto it = std::find(vars_.begin(), vars_.end(), id); it != vars_.end()) {
      auto n = std::make_shared<Node>();
      n->op = Node::Op::variable;
      n->variable = static_cast<std::size_t>(it - vars_.begin());
      return n;
    }
    auto n = std::make_shared<Node>();
    n->op = Node::Op::constant;
    if (id == "pi")
      n->value = std::numbers::pi;
    else if (id == "e")
      n->value = std::numbers::e;
    else if (id == "i")
      n->value = Complex(0.0, 1.0);
    else {
      pos_ = start;
      fail("unbound variable '" + id + "'");
    }
    return n;
  }

  const std::string& text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

Complex sign_of(Complex z) {
  if (z.imag() == 0.0) return z.real() > 0 ? 1.0 : (z.real() < 0 ? -1.0 : 0.0);
  return z / std::abs(z);
}

Complex integer_power(Complex base, Complex exponent) {
  const double r = exponent.real();
  if (exponent.imag() == 0.0 && r == std::round(r) && std::abs(r) <= 64) {
    Complex acc = 1.0;
    for (int k = 0; k < static_cast<int>(std::abs(r)); ++k) acc *= base;
    if (r < 0) {
      if (acc == Complex(0.0)) throw DivisionByZero();
      acc = 1.0 / acc;
    }
    return acc;
  }
  if (base.imag() == 0.0 && base.real() >= 0.0 && exponent.imag() == 0.0)
    return std::pow(base.real(), exponent.real());
  return std::pow(base, exponent);
}

Complex eval(const Node& n, std::span<const double> values) {
  switch (n.op) {
    case Node::Op::constant:
      return n.value;
    case Node::Op::variable:
      return values[n.variable];
    case Node::Op::neg:
      return -eval(*n.args[0], values);
    case Node::Op::add:
      return eval(*n.args[0], values) + eval(*n.args[1], values);
    case Node::Op::sub:
      return eval(*n.args[0], values) - eval(*n.args[1], values);
    case Node::Op::mul:
      return eval(*n.args[0], values) * eval(*n.args[1], values);
    case Node::Op::div: {
      const Complex den = eval(*n.args[1], values);
      if (den == Complex(0.0)) throw DivisionByZero();
      return eval(*n.args[0], values) / den;
    }
    case Node::Op::pow:
      return integer_power(eval(*n.args[0], values), eval(*n.args[1], values));
    case Node::Op::call: {
      const Complex a = eval(*n.args[0], values);
      const std::string& f = n.function;
      if (f == "abs") return std::abs(a);
      if (f == "sign") return sign_of(a);
      if (f == "exp") return std::exp(a);
      if (f == "log") return a.imag() == 0.0 && a.real() > 0 ? Complex(std::log(a.real())) : std::log(a);
      if (f == "sqrt") return a.imag() == 0.0 && a.real() >= 0 ? Complex(std::sqrt(a.real())) : std::sqrt(a);
      if (f == "sin") return std::sin(a);
      if (f == "cos") return std::cos(a);
      if (f == "tan") return std::tan(a);
      if (f == "atan") return a.imag() == 0.0 ? Complex(std::atan(a.real())) : std::atan(a);
      if (f == "tanh") return std::tanh(a);
      if (f == "re") return a.real();
      if (f == "im") return a.imag();
      if (f == "conj") return std::conj(a);
      const Complex b = eval(*n.args[1], values);
      if (f == "min") return a.real() <= b.real() ? a : b;
      if (f == "max") return a.real() >= b.real() ? a : b;
      break;
    }
  }
  throw std::logic_error("expression: unhandled node");
}

}  // namespace

Expression Expression::parse(const std::string& text, std::vector<std::string> variables) {
  Expression e;
  e.text_ = text;
  e.variables_ = std::move(variables);
  e.root_ = Parser(e.text_, e.variables_).parse();
  return e;
}

Complex Expression::evaluate(std::span<const double> values) const {
  if (values.size() != variables_.size()) throw std::invalid_argument("Expression::evaluate: wrong number of values");
  return eval(*root_, values);
}

}  // namespace schurmarc
