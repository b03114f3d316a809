// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "poly.hpp"

namespace imtheta {

/// Syntax tree for polynomial expressions. Grammar (whitespace insignificant,
/// no implicit multiplication):
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' UINT)?
///   base   := RAT | 'i' | VAR | '(' expr ')'
///   VAR    := ('z'|'u') UINT
///   RAT    := '-'? UINT ('/' UINT)?
struct ExprNode {
  enum class Kind { sum, product, power, rational_lit, imag_lit, var };

  Kind kind;
  std::vector<std::unique_ptr<ExprNode>> children;
  std::vector<bool> negated;  // sum only, parallel to children
  unsigned exponent = 0;      // power only
  Int num, den;               // rational_lit only
  Block block = Block::z;     // var only
  int index = 0;              // var only, 1-based
  std::size_t offset = 0;     // byte offset of the node's first token
};

using ExprPtr = std::unique_ptr<ExprNode>;

/// Syntax-only parse; throws SyntaxError (with byte offset) and
/// ZeroDenominator. Variable indices are validated during evaluation.
ExprPtr parse_expression(std::string_view src);

/// Evaluates an expression tree in the given context. Throws
/// IndexOutOfRange and ImaginaryInNonGaussianField.
Poly evaluate(const ExprNode& ast, int nvars, const Field& field);

/// parse + evaluate in one step. parse -> print -> parse is a fixed point.
Poly parse_poly(std::string_view src, int nvars, const Field& field);

}  // namespace imtheta
