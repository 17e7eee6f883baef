#pragma once

// Exact integer matrices and row-style Hermite normal form.
//
// All arithmetic is done over GMP integers; nothing here rounds.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace bohr {

using IntVector = std::vector<std::int64_t>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool row_is_zero(std::size_t r) const;
  void swap_rows(std::size_t a, std::size_t b);
  /// row[dst] -= factor * row[src]
  void sub_row_multiple(std::size_t dst, std::size_t src, const mpz_class& factor);
  void negate_row(std::size_t r);

  /// Converts row r to machine integers; throws ErrorCode::overflow if an entry does not fit.
  IntVector row_as_int64(std::size_t r) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Result of the row-style reduction U * M = H.
///
/// H is in row echelon form: the first `rank` rows are nonzero with strictly
/// increasing pivot columns, every pivot is positive and the entries above a
/// pivot lie in [0, pivot). The remaining rows are zero. U is unimodular, so
/// its rows from index `rank` onward span the integer left kernel of M.
struct HermiteForm {
  IntMatrix h;
  IntMatrix transform;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

HermiteForm hermite_normal_form(const IntMatrix& m);

/// LLL-reduced basis (delta = 99/100) of the lattice spanned by the rows,
/// which must be linearly independent. The inner product is
/// <u, v> = sum_k weights[k] u_k v_k; empty weights mean all ones.
/// Exact rational arithmetic throughout.
IntMatrix lll_reduce(const IntMatrix& basis, const std::vector<mpq_class>& weights = {});

/// Basis of { v in Z^rows : v * M = 0 }, canonicalised to Hermite form.
IntMatrix left_kernel_basis(const IntMatrix& m);

}  // namespace bohr
