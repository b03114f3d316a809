// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace imtheta {

enum class Errc {
  ok = 0,
  mismatched_context,
  index_out_of_range,
  singular_matrix,
  non_z_pure,
  non_constant_leading,
  not_integrable,
  positive_characteristic,
  non_commuting,
  all_zero_order,
  not_unimodular,
  not_homogeneous,
  oracle_disagreement,
  syntax_error,
  imaginary_in_non_gaussian_field,
  zero_denominator,
  division_by_zero,
  not_prime,
  invalid_argument,
  internal,
};

/// Stable PascalCase names, used verbatim in JSON error objects and the C API.
inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ok: return "Ok";
    case Errc::mismatched_context: return "MismatchedContext";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::singular_matrix: return "SingularMatrix";
    case Errc::non_z_pure: return "NonZPure";
    case Errc::non_constant_leading: return "NonConstantLeading";
    case Errc::not_integrable: return "NotIntegrable";
    case Errc::positive_characteristic: return "PositiveCharacteristic";
    case Errc::non_commuting: return "NonCommuting";
    case Errc::all_zero_order: return "AllZeroOrder";
    case Errc::not_unimodular: return "NotUnimodular";
    case Errc::not_homogeneous: return "NotHomogeneous";
    case Errc::oracle_disagreement: return "OracleDisagreement";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::imaginary_in_non_gaussian_field: return "ImaginaryInNonGaussianField";
    case Errc::zero_denominator: return "ZeroDenominator";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::not_prime: return "NotPrime";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::internal: return "Internal";
  }
  return "Internal";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}

  Error(Errc code, std::string msg, std::size_t byte_offset)
      : std::runtime_error(std::move(msg)), code_(code), offset_(byte_offset) {}

  static Error with_pair(Errc code, std::string msg, int i, int j) {
    Error e(code, std::move(msg));
    e.witness_ = {i, j};
    return e;
  }

  Errc code() const noexcept { return code_; }
  /// Byte offset into the source text; meaningful for syntax errors only.
  std::size_t offset() const noexcept { return offset_; }
  /// Witness index pair for NonCommuting / NotIntegrable; (-1,-1) otherwise.
  std::pair<int, int> witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::size_t offset_ = 0;
  std::pair<int, int> witness_{-1, -1};
};

}  // namespace imtheta
