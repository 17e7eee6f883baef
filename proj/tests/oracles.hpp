#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "bohr/sums.hpp"

namespace oracle {

using Complex = std::complex<double>;
using IntVector = std::vector<std::int64_t>;

/// sum_j a_j exp(lambda_j s) with lambda_j = <r_j, g> accumulated term by term.
inline Complex direct_sum(const std::vector<Complex>& coeffs, const std::vector<IntVector>& rows,
                          const std::vector<double>& g, Complex s) {
  Complex total = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    double lambda = 0.0;
    for (std::size_t k = 0; k < rows[j].size(); ++k) lambda += static_cast<double>(rows[j][k]) * g[k];
    total += coeffs[j] * std::exp(Complex(lambda * s.real(), lambda * s.imag()));
  }
  return total;
}

inline bool annihilates(const IntVector& m, const std::vector<IntVector>& rows) {
  const std::size_t k = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < k; ++c) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < rows.size(); ++j) s += m[j] * rows[j][c];
    if (s != 0) return false;
  }
  return true;
}

/// Every nonzero m in [-bound, bound]^J with m * R = 0.
inline std::vector<IntVector> small_kernel_vectors(const std::vector<IntVector>& rows, std::int64_t bound) {
  std::vector<IntVector> found;
  IntVector m(rows.size(), -bound);
  for (;;) {
    if (std::any_of(m.begin(), m.end(), [](auto v) { return v != 0; }) && annihilates(m, rows)) found.push_back(m);
    std::size_t i = 0;
    while (i < m.size() && m[i] == bound) m[i++] = -bound;
    if (i == m.size()) break;
    ++m[i];
  }
  return found;
}

inline std::size_t rank(std::vector<std::vector<mpq_class>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      const mpq_class f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const std::vector<IntVector>& rows) {
  std::vector<std::vector<mpq_class>> m;
  for (const auto& r : rows) {
    std::vector<mpq_class> q;
    for (auto v : r) q.emplace_back(static_cast<long>(v));
    m.push_back(std::move(q));
  }
  return rank(std::move(m));
}

/// Exact determinant by cofactor expansion (small matrices only).
inline mpz_class determinant(const std::vector<std::vector<mpz_class>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  mpz_class det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpz_class> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(a[i][k]);
      }
      minor.push_back(std::move(row));
    }
    const mpz_class term = a[0][c] * determinant(minor);
    det += (c % 2 == 0) ? term : mpz_class(-term);
  }
  return det;
}

/// gcd of the maximal minors; equals 1 iff the rows span a saturated lattice.
inline mpz_class maximal_minor_gcd(const std::vector<IntVector>& rows) {
  const std::size_t d = rows.size();
  const std::size_t n = rows[0].size();
  mpz_class g = 0;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(d), true);
  do {
    std::vector<std::vector<mpz_class>> sub(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t c = 0; c < n; ++c) {
        if (pick[c]) sub[i].emplace_back(static_cast<long>(rows[i][c]));
      }
    }
    const mpz_class det = determinant(sub);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return g;
}

/// O(n m) Hausdorff distance.
inline double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

/// Seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Complex coefficient(double lo = 0.1, double hi = 3.0) {
    return std::polar(real(lo, hi), real(-std::numbers::pi, std::numbers::pi));
  }

  /// At most (2 bound + 1)^k rows exist; j is capped accordingly.
  std::vector<IntVector> distinct_rows(std::size_t j, std::size_t k, std::int64_t bound) {
    std::size_t available = 1;
    for (std::size_t i = 0; i < k && available < j; ++i) available *= static_cast<std::size_t>(2 * bound + 1);
    j = std::min(j, available);
    std::set<IntVector> seen;
    std::vector<IntVector> rows;
    while (rows.size() < j) {
      IntVector r(k);
      for (auto& e : r) e = integer(-bound, bound);
      if (seen.insert(r).second) rows.push_back(r);
    }
    return rows;
  }

  /// Random sum over log 2, log 3, ... (first k primes).
  bohr::ExponentialSum sum(std::size_t k, std::size_t j, std::int64_t bound = 3) {
    static const std::vector<std::int64_t> primes{2, 3, 5, 7};
    std::vector<bohr::Term> terms;
    for (auto& r : distinct_rows(j, k, bound)) terms.push_back({coefficient(), bohr::ExponentVector{r}});
    return bohr::ExponentialSum::make(
        bohr::BasisSpec::log_integers(std::vector<std::int64_t>(primes.begin(), primes.begin() + static_cast<long>(k))),
        std::move(terms));
  }

  std::vector<double> point(std::size_t k, double range) {
    std::vector<double> x(k);
    for (auto& v : x) v = real(-range, range);
    return x;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
