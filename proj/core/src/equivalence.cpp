#include "bohr/equivalence.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "bohr/error.hpp"
#include "bohr/lattice.hpp"
#include "detail/parallel.hpp"

namespace bohr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_basis(const ExponentialSum& a, const ExponentialSum& b) {
  if (!(a.basis() == b.basis())) {
    throw Error(ErrorCode::basis_mismatch,
                "sums are expressed over different bases; co-express both over one integral "
                "basis (integralize) before comparing");
  }
}

double dot(const ExponentVector& r, std::span<const double> x) {
  long double s = 0.0L;
  for (std::size_t k = 0; k < r.coords.size(); ++k) s += static_cast<long double>(r.coords[k]) * x[k];
  return static_cast<double>(s);
}

EquivalenceVerdict not_equivalent(Obstruction why) {
  EquivalenceVerdict v;
  v.status = EquivalenceStatus::not_equivalent;
  v.obstruction = std::move(why);
  return v;
}

}  // namespace

double wrap_angle(double angle) noexcept {
  double r = std::remainder(angle, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

ExponentialSum twist(const ExponentialSum& f, std::span<const double> x) {
  if (x.size() != f.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "twist vector length differs from basis dimension");
  }
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const Term& t : f.terms()) terms.push_back(Term{t.coeff * std::polar(1.0, dot(t.r, x)), t.r});
  return ExponentialSum::make(f.basis(), std::move(terms), f.strip());
}

EquivalenceVerdict check_equivalence(const ExponentialSum& a, const ExponentialSum& b,
                                     const Tolerances& tol) {
  require_same_basis(a, b);
  const std::size_t dim = a.dimension();

  // (1) supports
  std::map<IntVector, std::size_t> in_b;
  for (std::size_t j = 0; j < b.size(); ++j) in_b.emplace(b.terms()[j].r.coords, j);
  for (const Term& t : a.terms()) {
    if (!in_b.contains(t.r.coords)) return not_equivalent(SupportMismatch{t.r});
  }
  if (a.size() != b.size()) {
    std::map<IntVector, bool> in_a;
    for (const Term& t : a.terms()) in_a.emplace(t.r.coords, true);
    for (const Term& t : b.terms()) {
      if (!in_a.contains(t.r.coords)) return not_equivalent(SupportMismatch{t.r});
    }
  }

  // (2) moduli; canonical ordering makes the term lists parallel from here on.
  const std::size_t n = a.size();
  std::vector<double> theta(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex aj = a.terms()[j].coeff;
    const Complex bj = b.terms()[j].coeff;
    const double ma = std::abs(aj);
    const double mb = std::abs(bj);
    if (std::abs(ma - mb) > tol.modulus * std::max(ma, mb)) {
      return not_equivalent(ModulusMismatch{a.terms()[j].r, ma, mb});
    }
    theta[j] = std::arg(bj * std::conj(aj));
  }

  EquivalenceVerdict verdict;
  if (n == 0) {
    verdict.status = EquivalenceStatus::equivalent;
    verdict.witness = std::vector<double>(dim, 0.0);
    verdict.residual = 0.0;
    return verdict;
  }

  // (3) phase congruences along the integer left kernel.
  std::vector<IntVector> rows;
  rows.reserve(n);
  std::int64_t max_row_norm = 0;
  for (const Term& t : a.terms()) {
    rows.push_back(t.r.coords);
    max_row_norm = std::max(max_row_norm, t.r.l1_norm());
  }
  const IntMatrix r_matrix = IntMatrix::from_rows(rows, dim);
  const HermiteForm form = hermite_normal_form(r_matrix);

  std::vector<PhaseObstruction> relations;
  {
    std::vector<ExponentVector> as_vectors;
    for (const Term& t : a.terms()) as_vectors.push_back(t.r);
    for (IntVector& m : left_kernel(as_vectors)) {
      long double s = 0.0L;
      std::int64_t norm = 0;
      for (std::size_t j = 0; j < n; ++j) {
        s += static_cast<long double>(m[j]) * theta[j];
        norm += m[j] < 0 ? -m[j] : m[j];
      }
      const double defect = std::abs(wrap_angle(static_cast<double>(std::fmod(s, 2.0L * std::numbers::pi_v<long double>))));
      if (defect > tol.phase * (1.0 + static_cast<double>(norm))) {
        return not_equivalent(PhaseObstruction{std::move(m), defect});
      }
      relations.push_back(PhaseObstruction{std::move(m), defect});
    }
  }

  // (4) witness: with U R = H, solve H_top x = wrap(U theta)_top in the
  // minimum-norm sense; the remaining rows of U theta are the congruences
  // verified above.
  const std::size_t rank = form.rank;
  Eigen::MatrixXd h_top(static_cast<Eigen::Index>(rank), static_cast<Eigen::Index>(dim));
  Eigen::VectorXd phi(static_cast<Eigen::Index>(rank));
  for (std::size_t i = 0; i < rank; ++i) {
    long double s = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(form.transform(i, j)) == 0) continue;
      s += static_cast<long double>(form.transform(i, j).get_d()) * theta[j];
    }
    phi(static_cast<Eigen::Index>(i)) =
        wrap_angle(static_cast<double>(std::fmod(s, 2.0L * std::numbers::pi_v<long double>)));
    for (std::size_t k = 0; k < dim; ++k) {
      h_top(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = form.h(i, k).get_d();
    }
  }
  std::vector<double> witness(dim, 0.0);
  if (rank > 0) {
    const Eigen::VectorXd x = h_top.completeOrthogonalDecomposition().solve(phi);
    for (std::size_t k = 0; k < dim; ++k) witness[k] = x(static_cast<Eigen::Index>(k));
  }

  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    residual = std::max(residual, std::abs(wrap_angle(dot(a.terms()[j].r, witness) - theta[j])));
  }

  const double limit = tol.phase * (1.0 + static_cast<double>(max_row_norm));
  if (residual > limit && !relations.empty()) {
    // Numerically the congruences passed but no witness was found; report the
    // worst relation instead of claiming equivalence.
    auto worst = std::max_element(relations.begin(), relations.end(),
                                  [](const auto& l, const auto& r) { return l.defect < r.defect; });
    return not_equivalent(std::move(*worst));
  }

  verdict.status = EquivalenceStatus::equivalent;
  verdict.witness = std::move(witness);
  verdict.residual = residual;
  return verdict;
}

EquivalenceVerdict brute_force_equivalence(const ExponentialSum& a, const ExponentialSum& b,
                                           std::size_t grid_per_dim, const Tolerances& tol) {
  require_same_basis(a, b);
  const std::size_t dim = a.dimension();
  if (dim > 4) throw Error(ErrorCode::budget_exceeded, "brute-force scan limited to basis dimension <= 4");
  if (grid_per_dim == 0) throw Error(ErrorCode::invalid_input, "grid size must be >= 1");
  std::size_t total = 1;
  for (std::size_t k = 0; k < dim; ++k) {
    if (total > (std::size_t{1} << 30) / grid_per_dim) {
      throw Error(ErrorCode::budget_exceeded, "brute-force grid exceeds 2^30 points");
    }
    total *= grid_per_dim;
  }

  // Align both coefficient lists on the union of supports.
  struct Pair {
    ExponentVector r;
    Complex lhs{0.0, 0.0};
    Complex rhs{0.0, 0.0};
    double tolerance = 0.0;
  };
  std::map<IntVector, Pair> aligned;
  for (const Term& t : a.terms()) aligned[t.r.coords].lhs = t.coeff;
  for (const Term& t : b.terms()) aligned[t.r.coords].rhs = t.coeff;

  const auto n = static_cast<std::int64_t>(grid_per_dim);
  const double half_step = std::numbers::pi / static_cast<double>(grid_per_dim);
  std::vector<Pair> pairs;
  for (auto& [coords, p] : aligned) {
    p.r = ExponentVector{coords};
    // A torus point within half a grid step of a true witness moves each
    // phase by at most |r|_1 * half_step.
    const double scale = std::max(std::abs(p.lhs), std::abs(p.rhs));
    p.tolerance = std::abs(p.lhs) * static_cast<double>(p.r.l1_norm()) * half_step +
                  tol.modulus * scale + 1e-12 * scale;
    pairs.push_back(std::move(p));
  }

  std::vector<Complex> roots(grid_per_dim);
  for (std::size_t m = 0; m < grid_per_dim; ++m) {
    roots[m] = std::polar(1.0, kTwoPi * static_cast<double>(m) / static_cast<double>(grid_per_dim));
  }

  auto index_to_node = [&](std::size_t idx, std::vector<std::int64_t>& node) {
    for (std::size_t k = dim; k-- > 0;) {
      node[k] = static_cast<std::int64_t>(idx % grid_per_dim);
      idx /= grid_per_dim;
    }
  };

  const std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> first_hit(detail::chunk_count_upper_bound(), none);
  detail::parallel_chunks(total, 4096, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    std::vector<std::int64_t> node(dim);
    for (std::size_t idx = begin; idx < end; ++idx) {
      index_to_node(idx, node);
      bool ok = true;
      for (const Pair& p : pairs) {
        std::int64_t phase = 0;
        for (std::size_t k = 0; k < dim; ++k) phase += p.r.coords[k] * node[k];
        phase %= n;
        if (phase < 0) phase += n;
        if (std::abs(p.rhs - p.lhs * roots[static_cast<std::size_t>(phase)]) > p.tolerance) {
          ok = false;
          break;
        }
      }
      if (ok) {
        first_hit[chunk] = idx;
        return;
      }
    }
  });

  const std::size_t hit = *std::min_element(first_hit.begin(), first_hit.end());
  EquivalenceVerdict verdict;
  if (hit == none) return verdict;

  std::vector<std::int64_t> node(dim);
  index_to_node(hit, node);
  std::vector<double> witness(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    witness[k] = kTwoPi * static_cast<double>(node[k]) / static_cast<double>(grid_per_dim);
  }
  double residual = 0.0;
  for (const Pair& p : pairs) {
    if (p.lhs == Complex(0.0, 0.0) || p.rhs == Complex(0.0, 0.0)) continue;
    residual = std::max(residual, std::abs(wrap_angle(dot(p.r, witness) - std::arg(p.rhs * std::conj(p.lhs)))));
  }
  verdict.status = EquivalenceStatus::equivalent;
  verdict.witness = std::move(witness);
  verdict.residual = residual;
  return verdict;
}

namespace {

ExponentialSum over_primes(const ExponentialSum& f, const BasisSpec& primes) {
  const auto& ps = primes.source_integers();
  std::vector<IntVector> columns;  // prime multiplicities of each source integer
  for (std::int64_t n : f.basis().source_integers()) {
    IntVector e(ps.size(), 0);
    for (const auto& [p, k] : factorize(n)) {
      e[static_cast<std::size_t>(std::lower_bound(ps.begin(), ps.end(), p) - ps.begin())] = k;
    }
    columns.push_back(std::move(e));
  }
  std::vector<Term> terms;
  for (const Term& t : f.terms()) {
    IntVector r(ps.size(), 0);
    for (std::size_t k = 0; k < t.r.coords.size(); ++k) {
      for (std::size_t p = 0; p < ps.size(); ++p) r[p] += t.r.coords[k] * columns[k][p];
    }
    terms.push_back(Term{t.coeff, ExponentVector{std::move(r)}});
  }
  return ExponentialSum::make(primes, std::move(terms), f.strip());
}

}  // namespace

std::pair<ExponentialSum, ExponentialSum> co_express(const ExponentialSum& a, const ExponentialSum& b) {
  if (a.basis() == b.basis()) return {a, b};
  const auto& na = a.basis().source_integers();
  const auto& nb = b.basis().source_integers();
  if (na.empty() || nb.empty()) {
    throw Error(ErrorCode::basis_mismatch,
                "sums over different explicit bases cannot be co-expressed automatically; integralize them over "
                "one basis first");
  }
  std::vector<std::int64_t> all(na);
  all.insert(all.end(), nb.begin(), nb.end());
  const BasisSpec primes = basis_from_log_integers(all).basis;
  return {over_primes(a, primes), over_primes(b, primes)};
}

}  // namespace bohr
