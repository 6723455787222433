// JSON symbol spec files.
//
//   {"kind": "toeplitz",   "d": 1, "phi":  "sign(k1)"}
//   {"kind": "callback",   "d": 1, "expr": "(s1-t1)/(1+abs(s1)+abs(t1))",
//    "guards": [{"when": {"s1": 0, "t1": 0}, "value": 0}]}
//   {"kind": "continuous", "d": 1, "expr": "atan(x1-y1)",
//    "partials": {"x1": "1/(1+(x1-y1)^2)", "y1": "-1/(1+(x1-y1)^2)"}, "h": 1e-6}
//   {"kind": "dense", "d": 1, "rows": {"lo": [0], "hi": [2]}, "cols": {"lo": [0], "hi": [2]},
//    "entries": [1, 0, [0.5, -1], 1]}
//
// Variables: k1..kd (toeplitz), s1..sd, t1..td (callback), x1..xd, y1..yd
// (continuous).  Partial keys list the differentiated variables of one
// argument joined by ',' (e.g. "x1,x2"); missing partials fall back to
// central differences with step "h" (default 2^-20).  Dense entries are listed
// row-major; a complex entry is [re, im].  Guards substitute a value when the
// evaluation point matches every listed coordinate, or when an expression
// divides by zero ("when": "division_by_zero").  Without a guard a division by
// zero is an error.

#ifndef SCHURMARC_SYMBOL_IO_HPP
#define SCHURMARC_SYMBOL_IO_HPP

#include "json.hpp"
#include <string>

#include "schurmarc/symbols.hpp"

namespace schurmarc {

/// Raised for malformed spec files; the message names the offending field or,
/// for expressions, the byte offset.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Symbol parse_symbol(const nlohmann::json& spec);
Symbol load_symbol(const std::string& path);

/// Dense symbol as a spec document that parse_symbol reads back.
nlohmann::json dense_symbol_to_json(const DiscreteSymbol& m);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json box_to_json(const Box& b);
Box box_from_json(const nlohmann::json& j);

}  // namespace schurmarc

#endif  // SCHURMARC_SYMBOL_IO_HPP
