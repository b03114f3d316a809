// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#include "field.hpp"

#include <cstdlib>

namespace imtheta {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Field Field::fp(std::uint64_t p) {
  if (!is_prime_u64(p)) throw Error(Errc::not_prime, "fp modulus must be prime, got " + std::to_string(p));
  return Field(FieldKind::fp, p);
}

Field Field::from_string(const std::string& s) {
  if (s == "rational") return rational();
  if (s == "gaussian") return gaussian();
  if (s.rfind("fp:", 0) == 0) {
    const std::string digits = s.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error(Errc::invalid_argument, "bad field spec '" + s + "'");
    errno = 0;
    char* end = nullptr;
    std::uint64_t p = std::strtoull(digits.c_str(), &end, 10);
    if (errno != 0 || end == nullptr || *end != '\0')
      throw Error(Errc::invalid_argument, "bad field spec '" + s + "'");
    return fp(p);
  }
  throw Error(Errc::invalid_argument, "unknown field '" + s + "' (expected rational|gaussian|fp:<p>)");
}

std::string Field::to_string() const {
  switch (kind_) {
    case FieldKind::rational: return "rational";
    case FieldKind::gaussian: return "gaussian";
    case FieldKind::fp: return "fp:" + std::to_string(p_);
  }
  return "rational";
}

std::uint64_t Field::reduce_mod(const Int& n) const {
  Int r = n % Int(p_);
  if (r < 0) r += Int(p_);
  return r.convert_to<std::uint64_t>();
}

Coeff Field::zero() const {
  switch (kind_) {
    case FieldKind::rational: return Coeff(Rat(0));
    case FieldKind::gaussian: return Coeff(GaussRat{Rat(0), Rat(0)});
    case FieldKind::fp: return Coeff(std::uint64_t{0});
  }
  return Coeff(Rat(0));
}

Coeff Field::one() const {
  switch (kind_) {
    case FieldKind::rational: return Coeff(Rat(1));
    case FieldKind::gaussian: return Coeff(GaussRat{Rat(1), Rat(0)});
    case FieldKind::fp: return Coeff(std::uint64_t{1 % p_});
  }
  return Coeff(Rat(1));
}

Coeff Field::imaginary_unit() const {
  if (kind_ != FieldKind::gaussian)
    throw Error(Errc::imaginary_in_non_gaussian_field, "imaginary unit requires the gaussian field");
  return Coeff(GaussRat{Rat(0), Rat(1)});
}

Coeff Field::from_int(const Int& n) const {
  switch (kind_) {
    case FieldKind::rational: return Coeff(Rat(n));
    case FieldKind::gaussian: return Coeff(GaussRat{Rat(n), Rat(0)});
    case FieldKind::fp: return Coeff(reduce_mod(n));
  }
  return Coeff(Rat(n));
}

Coeff Field::from_fraction(const Int& num, const Int& den) const {
  if (den == 0) throw Error(Errc::zero_denominator, "zero denominator");
  switch (kind_) {
    case FieldKind::rational: return Coeff(Rat(num, den));
    case FieldKind::gaussian: return Coeff(GaussRat{Rat(num, den), Rat(0)});
    case FieldKind::fp: {
      std::uint64_t d = reduce_mod(den);
      if (d == 0) throw Error(Errc::division_by_zero, "denominator divisible by field characteristic");
      return mul(Coeff(reduce_mod(num)), inv(Coeff(d)));
    }
  }
  return Coeff(Rat(num, den));
}

bool Field::is_zero(const Coeff& a) const {
  switch (kind_) {
    case FieldKind::rational: return a.rat() == 0;
    case FieldKind::gaussian: return a.gauss().re == 0 && a.gauss().im == 0;
    case FieldKind::fp: return a.residue() == 0;
  }
  return false;
}

bool Field::is_one(const Coeff& a) const { return equal(a, one()); }

bool Field::equal(const Coeff& a, const Coeff& b) const {
  switch (kind_) {
    case FieldKind::rational: return a.rat() == b.rat();
    case FieldKind::gaussian: return a.gauss().re == b.gauss().re && a.gauss().im == b.gauss().im;
    case FieldKind::fp: return a.residue() == b.residue();
  }
  return false;
}

Coeff Field::add(const Coeff& a, const Coeff& b) const {
  switch (kind_) {
    case FieldKind::rational: return Coeff(Rat(a.rat() + b.rat()));
    case FieldKind::gaussian:
      return Coeff(GaussRat{a.gauss().re + b.gauss().re, a.gauss().im + b.gauss().im});
    case FieldKind::fp: {
      std::uint64_t s = a.residue() + b.residue();
      if (s >= p_ || s < a.residue()) s -= p_;
      return Coeff(s);
    }
  }
  return a;
}

Coeff Field::sub(const Coeff& a, const Coeff& b) const { return add(a, neg(b)); }

Coeff Field::mul(const Coeff& a, const Coeff& b) const {
  switch (kind_) {
    case FieldKind::rational: return Coeff(Rat(a.rat() * b.rat()));
    case FieldKind::gaussian: {
      const GaussRat &x = a.gauss(), &y = b.gauss();
      return Coeff(GaussRat{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re});
    }
    case FieldKind::fp: return Coeff(mulmod(a.residue(), b.residue(), p_));
  }
  return a;
}

Coeff Field::neg(const Coeff& a) const {
  switch (kind_) {
    case FieldKind::rational: return Coeff(Rat(-a.rat()));
    case FieldKind::gaussian: return Coeff(GaussRat{-a.gauss().re, -a.gauss().im});
    case FieldKind::fp: return Coeff(a.residue() == 0 ? std::uint64_t{0} : p_ - a.residue());
  }
  return a;
}

Coeff Field::inv(const Coeff& a) const {
  if (is_zero(a)) throw Error(Errc::division_by_zero, "division by zero");
  switch (kind_) {
    case FieldKind::rational: return Coeff(Rat(1 / a.rat()));
    case FieldKind::gaussian: {
      const GaussRat& x = a.gauss();
      Rat n = x.re * x.re + x.im * x.im;
      return Coeff(GaussRat{x.re / n, -x.im / n});
    }
    case FieldKind::fp: return Coeff(powmod(a.residue(), p_ - 2, p_));
  }
  return a;
}

Coeff Field::div(const Coeff& a, const Coeff& b) const { return mul(a, inv(b)); }

namespace {

std::string rat_text(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

// Pure multiple of i: "i", "-i" is avoided ("-1*i" would not fold well), so
// we emit "<rat>*i" except for the plain unit.
std::string imag_text(const Rat& im) {
  if (im == 1) return "i";
  return rat_text(im) + "*i";
}

}  // namespace

std::string Field::to_text(const Coeff& a) const {
  switch (kind_) {
    case FieldKind::rational: return rat_text(a.rat());
    case FieldKind::fp: return std::to_string(a.residue());
    case FieldKind::gaussian: {
      const GaussRat& g = a.gauss();
      if (g.im == 0) return rat_text(g.re);
      if (g.re == 0) return imag_text(g.im);
      if (g.im > 0) return rat_text(g.re) + "+" + imag_text(g.im);
      return rat_text(g.re) + "-" + imag_text(-g.im);
    }
  }
  return "0";
}

bool Field::is_displayed_negative(const Coeff& a) const {
  switch (kind_) {
    case FieldKind::rational: return a.rat() < 0;
    case FieldKind::fp: return false;
    case FieldKind::gaussian: {
      const GaussRat& g = a.gauss();
      if (g.im == 0) return g.re < 0;
      if (g.re == 0) return g.im < 0;
      return false;  // composite values are parenthesized, never folded
    }
  }
  return false;
}

Coeff Field::abs_for_display(const Coeff& a) const {
  return is_displayed_negative(a) ? neg(a) : a;
}

}  // namespace imtheta
