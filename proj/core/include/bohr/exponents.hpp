#pragma once

// Frequency bases and integer exponent coordinates.
//
// An exponent lambda is represented by an integer vector r over a basis g,
// lambda = <r, g>. Bases are assumed linearly independent over the
// rationals; that assumption is certified only for log-integer bases.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bohr/lattice.hpp"

namespace bohr {

enum class BasisKind { explicit_values, log_primes };

class BasisSpec {
 public:
  BasisSpec() = default;

  /// Throws ErrorCode::invalid_input on an empty list, repeated values or
  /// a label count that differs from the value count.
  BasisSpec(std::vector<double> values, std::vector<std::string> labels,
            BasisKind kind = BasisKind::explicit_values);

  /// Explicit basis with generated labels g1, g2, ...
  static BasisSpec from_values(std::vector<double> values);

  /// Basis {log n : n in ns}. The integers must be multiplicatively
  /// independent; this is checked exactly and violations raise
  /// ErrorCode::dependent_basis.
  static BasisSpec log_integers(const std::vector<std::int64_t>& ns);

  std::size_t dimension() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  BasisKind kind() const noexcept { return kind_; }

  /// Source integers when the basis was built by log_integers(), else empty.
  const std::vector<std::int64_t>& source_integers() const noexcept { return integers_; }

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;

 private:
  std::vector<double> values_;
  std::vector<std::string> labels_;
  BasisKind kind_ = BasisKind::explicit_values;
  std::vector<std::int64_t> integers_;
};

struct ExponentVector {
  IntVector coords;

  /// Number of entries up to and including the last nonzero one.
  std::size_t support() const noexcept;
  /// Copy padded with zeros to `width`; throws if the support is longer.
  ExponentVector padded(std::size_t width) const;
  std::int64_t l1_norm() const noexcept;

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
};

/// Exact rational coordinates; rows are exponents, columns basis elements.
class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols);
  static RationalMatrix from_integers(const std::vector<IntVector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  mpq_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpq_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> data_;
};

/// lambda = sum_k coords[k] * values[k].
double resolve_exponent(const ExponentVector& v, const BasisSpec& basis);

struct FactoredIntegers {
  BasisSpec basis;                      // logs of the primes involved, ascending
  std::vector<ExponentVector> vectors;  // multiplicities, one per input
};

FactoredIntegers basis_from_log_integers(std::span<const std::int64_t> ns);

struct IntegralBasis {
  BasisSpec basis;
  std::vector<ExponentVector> vectors;
  /// Row l holds the new basis element l in coordinates of the input basis.
  RationalMatrix change;
};

/// Replaces rational coordinates by integer ones over a basis of the
/// Z-module generated by the rows.
IntegralBasis integralize(const RationalMatrix& m, const BasisSpec& basis);

/// Basis of { m in Z^J : sum_j m_j r_j = 0 } in Hermite form; empty when the
/// rows are independent.
std::vector<IntVector> left_kernel(std::span<const ExponentVector> rows);

/// Prime factorisation by trial division, ascending primes with multiplicity.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

}  // namespace bohr
