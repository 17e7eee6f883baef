#include "bohr/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "bohr/error.hpp"

namespace bohr {

BasisSpec::BasisSpec(std::vector<double> values, std::vector<std::string> labels, BasisKind kind)
    : values_(std::move(values)), labels_(std::move(labels)), kind_(kind) {
  if (values_.empty()) throw Error(ErrorCode::invalid_input, "basis must not be empty");
  if (labels_.size() != values_.size()) {
    throw Error(ErrorCode::invalid_input, "basis needs exactly one label per value");
  }
  std::set<double> seen;
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_input, "basis values must be finite");
    if (!seen.insert(v).second) {
      throw Error(ErrorCode::invalid_input, "basis values must be pairwise distinct");
    }
  }
}

BasisSpec BasisSpec::from_values(std::vector<double> values) {
  std::vector<std::string> labels;
  labels.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) labels.push_back("g" + std::to_string(k + 1));
  return BasisSpec(std::move(values), std::move(labels));
}

BasisSpec BasisSpec::log_integers(const std::vector<std::int64_t>& ns) {
  if (ns.empty()) throw Error(ErrorCode::invalid_input, "basis must not be empty");

  std::vector<std::vector<std::pair<std::int64_t, int>>> factorizations;
  std::map<std::int64_t, std::size_t> prime_index;
  for (std::int64_t n : ns) {
    if (n < 2) throw Error(ErrorCode::invalid_input, "log-integer basis needs integers >= 2");
    factorizations.push_back(factorize(n));
    for (const auto& [p, e] : factorizations.back()) prime_index.emplace(p, 0);
  }
  std::size_t col = 0;
  for (auto& [p, idx] : prime_index) idx = col++;

  IntMatrix exps(ns.size(), prime_index.size());
  bool all_prime = true;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const auto& fac = factorizations[i];
    all_prime = all_prime && fac.size() == 1 && fac.front().second == 1;
    for (const auto& [p, e] : fac) exps(i, prime_index.at(p)) = e;
  }
  if (hermite_normal_form(exps).rank != ns.size()) {
    throw Error(ErrorCode::dependent_basis,
                "integers are multiplicatively dependent, their logs are not a basis");
  }

  std::vector<double> values;
  std::vector<std::string> labels;
  for (std::int64_t n : ns) {
    values.push_back(std::log(static_cast<double>(n)));
    labels.push_back("log " + std::to_string(n));
  }
  BasisSpec out(std::move(values), std::move(labels),
                all_prime ? BasisKind::log_primes : BasisKind::explicit_values);
  out.integers_ = ns;
  return out;
}

std::size_t ExponentVector::support() const noexcept {
  std::size_t n = coords.size();
  while (n > 0 && coords[n - 1] == 0) --n;
  return n;
}

ExponentVector ExponentVector::padded(std::size_t width) const {
  if (support() > width) {
    throw Error(ErrorCode::dimension_mismatch,
                "exponent vector has " + std::to_string(support()) +
                    " significant entries but the basis has dimension " + std::to_string(width));
  }
  ExponentVector out{coords};
  out.coords.resize(width, 0);
  return out;
}

std::int64_t ExponentVector::l1_norm() const noexcept {
  std::int64_t n = 0;
  for (auto c : coords) n += c < 0 ? -c : c;
  return n;
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, mpq_class(0)) {}

RationalMatrix RationalMatrix::from_integers(const std::vector<IntVector>& rows) {
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.size());
  RationalMatrix m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      m(i, k) = mpq_class(mpz_class(static_cast<signed long>(rows[i][k])));
    }
  }
  return m;
}

double resolve_exponent(const ExponentVector& v, const BasisSpec& basis) {
  if (v.coords.size() > basis.dimension() && v.support() > basis.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "exponent vector longer than basis");
  }
  long double sum = 0.0L;
  const std::size_t n = std::min(v.coords.size(), basis.dimension());
  for (std::size_t k = 0; k < n; ++k) {
    sum += static_cast<long double>(v.coords[k]) * basis.values()[k];
  }
  return static_cast<double>(sum);
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  if (n < 2) return out;
  for (std::int64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

FactoredIntegers basis_from_log_integers(std::span<const std::int64_t> ns) {
  if (ns.empty()) throw Error(ErrorCode::invalid_input, "no integers given");
  std::vector<std::vector<std::pair<std::int64_t, int>>> facs;
  std::set<std::int64_t> primes;
  for (std::int64_t n : ns) {
    if (n <= 1) throw Error(ErrorCode::invalid_input, "integers must be >= 2");
    facs.push_back(factorize(n));
    for (const auto& [p, e] : facs.back()) primes.insert(p);
  }
  const std::vector<std::int64_t> prime_list(primes.begin(), primes.end());

  FactoredIntegers out{BasisSpec::log_integers(prime_list), {}};
  for (const auto& fac : facs) {
    ExponentVector v{IntVector(prime_list.size(), 0)};
    for (const auto& [p, e] : fac) {
      const auto it = std::lower_bound(prime_list.begin(), prime_list.end(), p);
      v.coords[static_cast<std::size_t>(it - prime_list.begin())] = e;
    }
    out.vectors.push_back(std::move(v));
  }
  return out;
}

namespace {

std::string combination_label(const RationalMatrix& change, std::size_t row, const BasisSpec& basis) {
  std::string label;
  for (std::size_t k = 0; k < change.cols(); ++k) {
    const mpq_class& c = change(row, k);
    if (sgn(c) == 0) continue;
    const bool negative = sgn(c) < 0;
    if (!label.empty()) label += negative ? " - " : " + ";
    else if (negative) label += "-";
    const mpq_class mag = abs(c);
    if (mag != 1) label += "(" + mag.get_str() + ")*";
    label += basis.labels()[k];
  }
  return label;
}

bool is_identity(const RationalMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (m(i, k) != (i == k ? 1 : 0)) return false;
    }
  }
  return true;
}

}  // namespace

IntegralBasis integralize(const RationalMatrix& m, const BasisSpec& basis) {
  if (m.rows() == 0) throw Error(ErrorCode::invalid_input, "no exponents to integralize");
  if (m.cols() != basis.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "coordinate matrix width differs from basis dimension");
  }
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = i + 1; j < rows; ++j) {
      bool same = true;
      for (std::size_t k = 0; k < cols && same; ++k) same = m(i, k) == m(j, k);
      if (same) {
        throw Error(ErrorCode::duplicate_exponent,
                    "rows " + std::to_string(i) + " and " + std::to_string(j) + " are the same exponent");
      }
    }
  }

  // Clear denominators column by column.
  std::vector<mpz_class> scale(cols, mpz_class(1));
  for (std::size_t k = 0; k < cols; ++k) {
    for (std::size_t i = 0; i < rows; ++i) {
      mpz_lcm(scale[k].get_mpz_t(), scale[k].get_mpz_t(), m(i, k).get_den_mpz_t());
    }
  }
  IntMatrix cleared(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) {
      const mpq_class v = m(i, k) * scale[k];
      cleared(i, k) = v.get_num();
    }
  }

  const HermiteForm form = hermite_normal_form(cleared);
  if (form.rank == 0) {
    // Only the zero exponent: nothing to change.
    IntegralBasis out{basis, {}, RationalMatrix(cols, cols)};
    for (std::size_t k = 0; k < cols; ++k) out.change(k, k) = 1;
    out.vectors.assign(rows, ExponentVector{IntVector(cols, 0)});
    return out;
  }

  const std::size_t rank = form.rank;
  IntMatrix top(rank, cols);
  for (std::size_t l = 0; l < rank; ++l) {
    for (std::size_t k = 0; k < cols; ++k) top(l, k) = form.h(l, k);
  }
  // Short vectors keep the integer coordinates small, so resolving them in
  // floating point does not cancel.
  std::vector<mpq_class> weights(cols);
  for (std::size_t k = 0; k < cols; ++k) weights[k] = mpq_class(1, 1) / (mpq_class(scale[k]) * scale[k]);
  const IntMatrix reduced = lll_reduce(top, weights);

  RationalMatrix change(rank, cols);
  for (std::size_t l = 0; l < rank; ++l) {
    for (std::size_t k = 0; k < cols; ++k) {
      change(l, k) = mpq_class(reduced(l, k), scale[k]);
      change(l, k).canonicalize();
    }
  }

  // Coordinates over the reduced rows: solve on the Hermite pivot columns,
  // where the reduced basis restricts to an invertible rank x rank block.
  std::vector<std::vector<mpq_class>> inv(rank, std::vector<mpq_class>(2 * rank));
  for (std::size_t l = 0; l < rank; ++l) {
    for (std::size_t c = 0; c < rank; ++c) inv[l][c] = reduced(l, form.pivots[c]);
    inv[l][rank + l] = 1;
  }
  // Gauss-Jordan on [B_P | I] gives B_P^{-1} in the right half.
  for (std::size_t c = 0; c < rank; ++c) {
    std::size_t p = c;
    while (sgn(inv[p][c]) == 0) ++p;
    std::swap(inv[p], inv[c]);
    const mpq_class lead = inv[c][c];
    for (auto& v : inv[c]) v /= lead;
    for (std::size_t i = 0; i < rank; ++i) {
      if (i == c || sgn(inv[i][c]) == 0) continue;
      const mpq_class f = inv[i][c];
      for (std::size_t k = 0; k < 2 * rank; ++k) inv[i][k] -= f * inv[c][k];
    }
  }

  std::vector<ExponentVector> vectors;
  vectors.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    IntMatrix coords(1, rank);
    for (std::size_t l = 0; l < rank; ++l) {
      mpq_class c = 0;
      for (std::size_t q = 0; q < rank; ++q) c += mpq_class(cleared(i, form.pivots[q])) * inv[q][rank + l];
      if (c.get_den() != 1) throw Error(ErrorCode::invalid_input, "internal: row outside the reduced lattice");
      coords(0, l) = c.get_num();
    }
    for (std::size_t k = 0; k < cols; ++k) {
      mpz_class s = 0;
      for (std::size_t l = 0; l < rank; ++l) s += coords(0, l) * reduced(l, k);
      if (s != cleared(i, k)) throw Error(ErrorCode::invalid_input, "internal: row outside the reduced lattice");
    }
    vectors.push_back(ExponentVector{coords.row_as_int64(0)});
  }

  if (is_identity(change)) return IntegralBasis{basis, std::move(vectors), std::move(change)};

  std::vector<double> values(rank);
  std::vector<std::string> labels(rank);
  for (std::size_t l = 0; l < rank; ++l) {
    long double v = 0.0L;
    for (std::size_t k = 0; k < cols; ++k) {
      if (sgn(change(l, k)) == 0) continue;
      v += static_cast<long double>(change(l, k).get_d()) * basis.values()[k];
    }
    values[l] = static_cast<double>(v);
    labels[l] = combination_label(change, l, basis);
  }
  return IntegralBasis{BasisSpec(std::move(values), std::move(labels)), std::move(vectors),
                       std::move(change)};
}

std::vector<IntVector> left_kernel(std::span<const ExponentVector> rows) {
  if (rows.empty()) throw Error(ErrorCode::invalid_input, "left kernel of an empty row set");
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.coords.size());
  std::vector<IntVector> raw;
  raw.reserve(rows.size());
  for (const auto& r : rows) raw.push_back(r.coords);
  const IntMatrix basis = left_kernel_basis(IntMatrix::from_rows(raw, width));
  std::vector<IntVector> out;
  out.reserve(basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i) out.push_back(basis.row_as_int64(i));
  return out;
}

}  // namespace bohr
