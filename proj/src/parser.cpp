// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#include "parser.hpp"

#include <cctype>
#include <string>

namespace imtheta {

namespace {

constexpr unsigned kMaxExponent = 1000000;

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw Error(Errc::syntax_error, what + " at byte " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Int parse_uint_big() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an unsigned integer");
    return Int(std::string(src_.substr(start, pos_ - start)));
  }

  unsigned parse_uint_small(const char* what) {
    const std::size_t at = pos_;
    Int v = parse_uint_big();
    if (v > kMaxExponent) {
      pos_ = at;
      fail(std::string(what) + " too large");
    }
    return v.convert_to<unsigned>();
  }

  ExprPtr parse_expr() {
    auto node = std::make_unique<ExprNode>();
    node->kind = ExprNode::Kind::sum;
    node->offset = pos_;
    node->children.push_back(parse_term());
    node->negated.push_back(false);
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      node->children.push_back(parse_term());
      node->negated.push_back(c == '-');
    }
    if (node->children.size() == 1 && !node->negated[0]) return std::move(node->children[0]);
    return node;
  }

  ExprPtr parse_term() {
    auto node = std::make_unique<ExprNode>();
    node->kind = ExprNode::Kind::product;
    node->offset = pos_;
    node->children.push_back(parse_factor());
    while (eat('*')) node->children.push_back(parse_factor());
    if (node->children.size() == 1) return std::move(node->children[0]);
    return node;
  }

  ExprPtr parse_factor() {
    ExprPtr base = parse_base();
    if (!eat('^')) return base;
    auto node = std::make_unique<ExprNode>();
    node->kind = ExprNode::Kind::power;
    node->offset = base->offset;
    node->exponent = parse_uint_small("exponent");
    node->children.push_back(std::move(base));
    return node;
  }

  ExprPtr parse_base() {
    const char c = peek();
    const std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      ExprPtr inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'i') {
      ++pos_;
      auto node = std::make_unique<ExprNode>();
      node->kind = ExprNode::Kind::imag_lit;
      node->offset = at;
      return node;
    }
    if (c == 'z' || c == 'u') {
      ++pos_;
      auto node = std::make_unique<ExprNode>();
      node->kind = ExprNode::Kind::var;
      node->block = (c == 'z') ? Block::z : Block::u;
      node->offset = at;
      node->index = static_cast<int>(parse_uint_small("variable index"));
      return node;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      auto node = std::make_unique<ExprNode>();
      node->kind = ExprNode::Kind::rational_lit;
      node->offset = at;
      bool neg = false;
      if (c == '-') {
        ++pos_;
        neg = true;
      }
      node->num = parse_uint_big();
      if (neg) node->num = -node->num;
      node->den = 1;
      if (eat('/')) {
        const std::size_t den_at = pos_;
        node->den = parse_uint_big();
        if (node->den == 0)
          throw Error(Errc::zero_denominator, "zero denominator at byte " + std::to_string(den_at),
                      den_at);
      }
      return node;
    }
    fail("expected a number, 'i', a variable, or '('");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expression(std::string_view src) { return Parser(src).parse(); }

Poly evaluate(const ExprNode& ast, int nvars, const Field& field) {
  switch (ast.kind) {
    case ExprNode::Kind::sum: {
      Poly r(nvars, field);
      for (std::size_t i = 0; i < ast.children.size(); ++i) {
        Poly c = evaluate(*ast.children[i], nvars, field);
        r = ast.negated[i] ? r - c : r + c;
      }
      return r;
    }
    case ExprNode::Kind::product: {
      Poly r = Poly::constant(nvars, field, field.one());
      for (const auto& c : ast.children) r = r * evaluate(*c, nvars, field);
      return r;
    }
    case ExprNode::Kind::power:
      return evaluate(*ast.children[0], nvars, field).pow(ast.exponent);
    case ExprNode::Kind::rational_lit:
      return Poly::constant(nvars, field, field.from_fraction(ast.num, ast.den));
    case ExprNode::Kind::imag_lit:
      return Poly::constant(nvars, field, field.imaginary_unit());
    case ExprNode::Kind::var: {
      if (ast.index < 1 || ast.index > nvars)
        throw Error(Errc::index_out_of_range,
                    "variable index " + std::to_string(ast.index) + " out of range 1.." +
                        std::to_string(nvars) + " at byte " + std::to_string(ast.offset),
                    ast.offset);
      return Poly::variable(nvars, field, ast.block, ast.index);
    }
  }
  throw Error(Errc::internal, "unreachable expression kind");
}

Poly parse_poly(std::string_view src, int nvars, const Field& field) {
  return evaluate(*parse_expression(src), nvars, field);
}

}  // namespace imtheta
