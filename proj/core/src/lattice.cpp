#include "bohr/lattice.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "bohr/error.hpp"

namespace bohr {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, mpz_class(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() > cols) {
      throw Error(ErrorCode::dimension_mismatch, "row longer than matrix width");
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(r, c) = mpz_class(static_cast<signed long>(rows[r][c]));
    }
  }
  return m;
}

bool IntMatrix::row_is_zero(std::size_t r) const {
  for (std::size_t c = 0; c < cols_; ++c) {
    if (sgn((*this)(r, c)) != 0) return false;
  }
  return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::sub_row_multiple(std::size_t dst, std::size_t src, const mpz_class& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    (*this)(dst, c) -= factor * (*this)(src, c);
  }
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

IntVector IntMatrix::row_as_int64(std::size_t r) const {
  IntVector out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    const mpz_class& v = (*this)(r, c);
    if (!v.fits_slong_p()) {
      throw Error(ErrorCode::overflow, "integer entry exceeds 64-bit range");
    }
    out[c] = v.get_si();
  }
  return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::dimension_mismatch, "matrix product shape mismatch");
  }
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

namespace {

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Row with the smallest nonzero |entry| in column c among rows [from, rows).
std::size_t smallest_nonzero_row(const IntMatrix& h, std::size_t c, std::size_t from) {
  std::size_t best = h.rows();
  for (std::size_t i = from; i < h.rows(); ++i) {
    if (sgn(h(i, c)) == 0) continue;
    if (best == h.rows() || mpz_cmpabs(h(i, c).get_mpz_t(), h(best, c).get_mpz_t()) < 0) best = i;
  }
  return best;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm out{m, IntMatrix::identity(m.rows()), {}, 0};
  IntMatrix& h = out.h;
  IntMatrix& u = out.transform;

  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    // Euclid down the column until a single nonzero entry remains at row r.
    for (;;) {
      const std::size_t p = smallest_nonzero_row(h, c, r);
      if (p == h.rows()) break;
      h.swap_rows(p, r);
      u.swap_rows(p, r);
      bool cleared = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (sgn(h(i, c)) == 0) continue;
        const mpz_class q = floor_div(h(i, c), h(r, c));
        h.sub_row_multiple(i, r, q);
        u.sub_row_multiple(i, r, q);
        if (sgn(h(i, c)) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (sgn(h(r, c)) == 0) continue;

    if (sgn(h(r, c)) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const mpz_class q = floor_div(h(i, c), h(r, c));
      h.sub_row_multiple(i, r, q);
      u.sub_row_multiple(i, r, q);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

IntMatrix left_kernel_basis(const IntMatrix& m) {
  const HermiteForm form = hermite_normal_form(m);
  const std::size_t nullity = m.rows() - form.rank;
  IntMatrix raw(nullity, m.rows());
  for (std::size_t i = 0; i < nullity; ++i) {
    for (std::size_t j = 0; j < m.rows(); ++j) raw(i, j) = form.transform(form.rank + i, j);
  }
  if (nullity == 0) return raw;

  // Canonical representative of the kernel lattice: its own Hermite form.
  const HermiteForm canon = hermite_normal_form(raw);
  IntMatrix basis(canon.rank, m.rows());
  for (std::size_t i = 0; i < canon.rank; ++i) {
    for (std::size_t j = 0; j < m.rows(); ++j) basis(i, j) = canon.h(i, j);
  }
  return basis;
}

namespace {

struct GramSchmidt {
  std::vector<std::vector<mpq_class>> mu;
  std::vector<mpq_class> norms;  // |b*_i|^2
};

GramSchmidt gram_schmidt(const IntMatrix& b, const std::vector<mpq_class>& w) {
  const std::size_t n = b.rows();
  const std::size_t d = b.cols();
  std::vector<std::vector<mpq_class>> star(n, std::vector<mpq_class>(d));
  GramSchmidt gs{std::vector<std::vector<mpq_class>>(n, std::vector<mpq_class>(n)), std::vector<mpq_class>(n)};
  auto dot = [&](const std::vector<mpq_class>& u, const std::vector<mpq_class>& v) {
    mpq_class s = 0;
    for (std::size_t k = 0; k < d; ++k) s += w[k] * u[k] * v[k];
    return s;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<mpq_class> bi(d);
    for (std::size_t k = 0; k < d; ++k) bi[k] = b(i, k);
    star[i] = bi;
    for (std::size_t j = 0; j < i; ++j) {
      gs.mu[i][j] = dot(bi, star[j]) / gs.norms[j];
      for (std::size_t k = 0; k < d; ++k) star[i][k] -= gs.mu[i][j] * star[j][k];
    }
    gs.norms[i] = dot(star[i], star[i]);
  }
  return gs;
}

mpz_class round_nearest(const mpq_class& q) {
  mpz_class r;
  const mpq_class shifted = q + mpq_class(1, 2);
  mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return r;
}

}  // namespace

IntMatrix lll_reduce(const IntMatrix& basis, const std::vector<mpq_class>& weights) {
  IntMatrix b = basis;
  const std::size_t n = b.rows();
  std::vector<mpq_class> w = weights.empty() ? std::vector<mpq_class>(b.cols(), mpq_class(1)) : weights;
  if (w.size() != b.cols()) throw Error(ErrorCode::dimension_mismatch, "one weight per column required");
  const mpq_class delta(99, 100);

  std::size_t k = 1;
  GramSchmidt gs = gram_schmidt(b, w);
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      const mpz_class q = round_nearest(gs.mu[k][j]);
      if (q == 0) continue;
      b.sub_row_multiple(k, j, q);
      gs = gram_schmidt(b, w);
    }
    const mpq_class& m = gs.mu[k][k - 1];
    if (gs.norms[k] >= (delta - m * m) * gs.norms[k - 1]) {
      ++k;
    } else {
      b.swap_rows(k, k - 1);
      gs = gram_schmidt(b, w);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return b;
}

}  // namespace bohr
