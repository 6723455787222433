// A small complex-valued arithmetic expression language used by symbol spec
// files.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?
//   primary := number ['i'] | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// Names are either bound variables, the constants pi, e and i, or one of the
// functions abs, sign, exp, log, sqrt, sin, cos, tan, atan, tanh, re, im,
// conj, min, max.

#ifndef SCHURMARC_EXPRESSION_HPP
#define SCHURMARC_EXPRESSION_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace schurmarc {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Raised when an expression divides by an exact zero.
class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

class Expression {
 public:
  /// Throws ParseError with the byte offset of the offending token; names
  /// that are neither variables, constants nor functions are reported as
  /// unbound.
  static Expression parse(const std::string& text, std::vector<std::string> variables);

  std::complex<double> evaluate(std::span<const double> values) const;

  const std::string& text() const { return text_; }
  const std::vector<std::string>& variables() const { return variables_; }

  struct Node;

 private:
  std::string text_;
  std::vector<std::string> variables_;
  std::shared_ptr<const Node> root_;
};

}  // namespace schurmarc

#endif  // SCHURMARC_EXPRESSION_HPP
