// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "multi_index.hpp"

namespace imtheta {

using Rat = boost::multiprecision::cpp_rational;

/// Gaussian rational a + b*i, both parts reduced fractions.
struct GaussRat {
  Rat re, im;
};

/// One exact field element. The active alternative must match the Field the
/// value lives in; all arithmetic goes through Field so the modulus of a
/// prime field is available.
class Coeff {
 public:
  Coeff() : v_(Rat(0)) {}
  explicit Coeff(Rat r) : v_(std::move(r)) {}
  explicit Coeff(GaussRat g) : v_(std::move(g)) {}
  explicit Coeff(std::uint64_t residue) : v_(residue) {}

  const Rat& rat() const { return std::get<Rat>(v_); }
  const GaussRat& gauss() const { return std::get<GaussRat>(v_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(v_); }

 private:
  std::variant<Rat, GaussRat, std::uint64_t> v_;
};

enum class FieldKind : std::uint8_t { rational, gaussian, fp };

bool is_prime_u64(std::uint64_t n);

/// Coefficient field descriptor: Q, Q(i), or F_p. Small value type carried
/// by every polynomial; all coefficient arithmetic is routed through it.
class Field {
 public:
  static Field rational() { return Field(FieldKind::rational, 0); }
  static Field gaussian() { return Field(FieldKind::gaussian, 0); }
  static Field fp(std::uint64_t p);  // throws NotPrime

  /// Parses "rational" | "gaussian" | "fp:<p>".
  static Field from_string(const std::string& s);
  std::string to_string() const;

  FieldKind kind() const { return kind_; }
  std::uint64_t modulus() const { return p_; }
  std::uint64_t characteristic() const { return kind_ == FieldKind::fp ? p_ : 0; }

  bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

  Coeff zero() const;
  Coeff one() const;
  Coeff imaginary_unit() const;  // throws ImaginaryInNonGaussianField
  Coeff from_int(const Int& n) const;
  /// num/den as a field element; den == 0 is ZeroDenominator, den divisible
  /// by p over F_p is DivisionByZero.
  Coeff from_fraction(const Int& num, const Int& den) const;

  bool is_zero(const Coeff& a) const;
  bool is_one(const Coeff& a) const;
  bool equal(const Coeff& a, const Coeff& b) const;

  Coeff add(const Coeff& a, const Coeff& b) const;
  Coeff sub(const Coeff& a, const Coeff& b) const;
  Coeff mul(const Coeff& a, const Coeff& b) const;
  Coeff neg(const Coeff& a) const;
  Coeff inv(const Coeff& a) const;  // throws DivisionByZero on zero
  Coeff div(const Coeff& a, const Coeff& b) const;

  /// Canonical text form: "3", "-3/2", "i", "3-i", "2*i", "1/2+3/4*i", "4".
  /// Composite Gaussian values parse back only inside parentheses.
  std::string to_text(const Coeff& a) const;
  /// True when the canonical text form starts with a '-' that can be folded
  /// into a sum separator (rationals and pure multiples of i).
  bool is_displayed_negative(const Coeff& a) const;
  /// Negation helper used by the printer alongside is_displayed_negative.
  Coeff abs_for_display(const Coeff& a) const;

 private:
  Field(FieldKind k, std::uint64_t p) : kind_(k), p_(p) {}
  std::uint64_t reduce_mod(const Int& n) const;

  FieldKind kind_;
  std::uint64_t p_;
};

}  // namespace imtheta
