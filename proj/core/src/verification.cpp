#include "bohr/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <gmpxx.h>

#include "bohr/auxiliary.hpp"
#include "bohr/equivalence.hpp"
#include "bohr/error.hpp"
#include "bohr/reference_sums.hpp"

namespace bohr {

namespace {

constexpr double kPi = std::numbers::pi;

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

BasisSpec prime_log_basis(std::size_t k) {
  static const std::vector<std::int64_t> primes{2, 3, 5, 7};
  return BasisSpec::log_integers(std::vector<std::int64_t>(primes.begin(), primes.begin() + static_cast<long>(k)));
}

/// Random sum with K basis elements, J distinct vectors with entries in
/// [-max_entry, max_entry] and coefficient moduli in [0.1, 3].
ExponentialSum random_sum(Rng& rng, std::size_t k, std::size_t j, std::int64_t max_entry = 3) {
  std::set<IntVector> seen;
  std::vector<Term> terms;
  while (terms.size() < j) {
    IntVector r(k);
    for (auto& e : r) e = uniform_int(rng, -max_entry, max_entry);
    if (!seen.insert(r).second) continue;
    terms.push_back(Term{std::polar(uniform(rng, 0.1, 3.0), uniform(rng, -kPi, kPi)), ExponentVector{r}});
  }
  return ExponentialSum::make(prime_log_basis(k), std::move(terms));
}

std::vector<double> random_point(Rng& rng, std::size_t k, double range) {
  std::vector<double> x(k);
  for (auto& v : x) v = uniform(rng, -range, range);
  return x;
}

double max_coefficient_gap(const ExponentialSum& a, const ExponentialSum& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double gap = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a.terms()[j].r != b.terms()[j].r) return std::numeric_limits<double>::infinity();
    gap = std::max(gap, std::abs(a.terms()[j].coeff - b.terms()[j].coeff));
  }
  return gap;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Exact rank by rational Gaussian elimination.
std::size_t rational_rank(std::vector<std::vector<mpq_class>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const mpq_class f = m[i][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<mpq_class>> to_rational(const std::vector<IntVector>& rows) {
  std::vector<std::vector<mpq_class>> out;
  for (const auto& r : rows) {
    std::vector<mpq_class> row;
    for (auto v : r) row.emplace_back(static_cast<long>(v));
    out.push_back(std::move(row));
  }
  return out;
}

// Determinant by Bareiss fraction-free elimination.
mpz_class determinant(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// gcd of all maximal minors; 1 iff the rows span a saturated lattice.
mpz_class maximal_minor_gcd(const std::vector<IntVector>& rows) {
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
    const mpz_class det = determinant(std::move(sub));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return g;
}

bool annihilates(const IntVector& m, const std::vector<IntVector>& rows) {
  const std::size_t k = rows[0].size();
  for (std::size_t c = 0; c < k; ++c) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < rows.size(); ++j) s += m[j] * rows[j][c];
    if (s != 0) return false;
  }
  return true;
}

// Every nonzero m with entries in [-bound, bound] and m * R = 0.
std::vector<IntVector> naive_kernel_search(const std::vector<IntVector>& rows, std::int64_t bound) {
  std::vector<IntVector> found;
  IntVector m(rows.size(), -bound);
  while (true) {
    if (std::any_of(m.begin(), m.end(), [](auto v) { return v != 0; }) && annihilates(m, rows)) found.push_back(m);
    std::size_t i = 0;
    while (i < m.size() && m[i] == bound) m[i++] = -bound;
    if (i == m.size()) break;
    ++m[i];
  }
  return found;
}

using Clock = std::chrono::steady_clock;

CheckResult titled(int id, std::string title) {
  CheckResult res;
  res.id = id;
  res.title = std::move(title);
  return res;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CheckResult f1_f2_not_equivalent(const VerificationOptions&) {
  CheckResult res = titled(1, "f1 and f2 are not equivalent");
  const auto start = Clock::now();
  const auto f1 = reference::f1();
  const auto f2 = reference::f2();
  const EquivalenceVerdict v = check_equivalence(f1, f2);
  const EquivalenceVerdict bf = brute_force_equivalence(f1, f2, 64);
  res.seconds = seconds_since(start);

  const auto* mm = v.obstruction ? std::get_if<ModulusMismatch>(&*v.obstruction) : nullptr;
  const bool at_log3 = mm && mm->exponent == ExponentVector{{0, 1, 0}};
  res.measured = res.seconds;
  res.threshold = 1.0;
  res.passed = !v.equivalent() && at_log3 && !bf.equivalent() && res.seconds < 1.0;
  res.detail = std::string("decision: ") + (v.equivalent() ? "Equivalent" : "NotEquivalent") +
               (at_log3 ? " (ModulusMismatch at log 3, |a|=" + fmt(mm->lhs_modulus) + " |b|=" + fmt(mm->rhs_modulus) + ")"
                        : " (unexpected certificate)") +
               "; brute force grid 64: " + (bf.equivalent() ? "Equivalent" : "NotEquivalent");
  return res;
}

CheckResult witness_round_trip(const VerificationOptions& opt) {
  CheckResult res = titled(2, "Witness round-trip on 200 random twists");
  Rng rng(opt.seed ^ 0x02);
  const auto start = Clock::now();
  double worst_residual = 0.0;
  double worst_gap = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto k = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const auto j = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    const ExponentialSum a = random_sum(rng, k, j);
    const ExponentialSum b = twist(a, random_point(rng, k, 10.0));
    const EquivalenceVerdict v = check_equivalence(a, b);
    if (!v.equivalent() || !v.witness || !v.residual) {
      ++failures;
      continue;
    }
    worst_residual = std::max(worst_residual, *v.residual);
    worst_gap = std::max(worst_gap, max_coefficient_gap(twist(a, *v.witness), b));
  }
  res.seconds = seconds_since(start);
  res.measured = worst_gap;
  res.threshold = 1e-7;
  res.passed = failures == 0 && worst_residual <= 1e-8 && worst_gap <= 1e-7 && res.seconds < 10.0;
  res.detail = std::to_string(failures) + " rejected; max residual " + fmt(worst_residual) + " (limit 1e-08); max coefficient gap " +
               fmt(worst_gap) + "; " + fmt(res.seconds) + " s (limit 10 s)";
  return res;
}

CheckResult phase_obstruction(const VerificationOptions&) {
  CheckResult res = titled(3, "Phase obstruction for exponents log 2, log 4");
  const auto start = Clock::now();
  const BasisSpec basis = BasisSpec::log_integers({2});
  const auto a = ExponentialSum::make(basis, {{Complex(1, 0), ExponentVector{{1}}}, {Complex(1, 0), ExponentVector{{2}}}});
  const auto b = ExponentialSum::make(basis, {{Complex(1, 0), ExponentVector{{1}}}, {Complex(0, 1), ExponentVector{{2}}}});
  const EquivalenceVerdict v = check_equivalence(a, b);
  const EquivalenceVerdict bf = brute_force_equivalence(a, b, 512);
  res.seconds = seconds_since(start);

  const auto* po = v.obstruction ? std::get_if<PhaseObstruction>(&*v.obstruction) : nullptr;
  const bool right_vector = po && po->kernel_vector == IntVector{2, -1};
  const double error = po ? std::abs(po->defect - kPi / 2) : std::numeric_limits<double>::infinity();
  res.measured = error;
  res.threshold = 1e-9;
  res.passed = !v.equivalent() && right_vector && error <= 1e-9 && !bf.equivalent();
  res.detail = po ? "kernel vector (" + std::to_string(po->kernel_vector.at(0)) + "," +
                        std::to_string(po->kernel_vector.at(1)) + "), defect " + fmt(po->defect) +
                        "; brute force grid 512: " + (bf.equivalent() ? "Equivalent" : "NotEquivalent")
                  : "no phase obstruction reported";
  return res;
}

CheckResult disk_containment(const VerificationOptions&) {
  CheckResult res = titled(4, "union of f1 images over (-6, 0) stays inside |w| < 4");
  const auto start = Clock::now();
  const ImageCloud cloud = sample_union(reference::f1(), SigmaRange::open(-6.0, 0.0, 25), GridSampler{32});
  res.seconds = seconds_since(start);
  res.measured = cloud.max_modulus();
  res.threshold = 4.0 - 1e-6;
  res.passed = res.measured < res.threshold && res.seconds < 30.0;
  res.detail = std::to_string(cloud.size()) + " points; max |w| = " + fmt(res.measured) + "; 4 - max|w| = " +
               fmt(4.0 - res.measured) + "; " + fmt(res.seconds) + " s (limit 30 s)";
  return res;
}

CheckResult disk_fill(const VerificationOptions& opt) {
  CheckResult res = titled(5, "union of f1 images over (-6, 0) fills the disk |w| < 4");
  const auto start = Clock::now();
  const SigmaRange range = SigmaRange::open_default_density(-6.0, 0.0);
  const ImageCloud cloud = sample_union(reference::f1(), range, GridSampler{32});
  std::vector<Complex> probes;
  for (int ri = 0; ri <= 8; ++ri) {
    const double r = ri < 8 ? 0.5 * ri : 3.9;
    for (int k = 0; k < 16; ++k) probes.push_back(std::polar(r, k * kPi / 8));
  }
  res.measured = directed_hausdorff(probes, cloud.points);
  res.seconds = seconds_since(start);
  res.threshold = opt.fill_tolerance;
  res.passed = res.measured <= res.threshold;
  res.detail = std::to_string(range.count) + " sigma slices x 32^3 grid; worst probe distance " + fmt(res.measured);
  return res;
}

CheckResult twisted_unions_coincide(const VerificationOptions& opt) {
  CheckResult res = titled(6, "Equivalent sums take the same values on an open strip");
  Rng rng(opt.seed ^ 0x06);
  const auto start = Clock::now();
  const SigmaRange range = SigmaRange::open(-0.5, 0.5, 5);
  const std::size_t grid_for_k[] = {0, 256, 48, 20};
  double worst_ratio = 0.0;
  double worst_distance = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto k = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const auto j = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    const ExponentialSum a = random_sum(rng, k, j);
    const ExponentialSum b = twist(a, random_point(rng, k, kPi));
    const GridSampler sampler{grid_for_k[k]};
    const ImageCloud ua = sample_union(a, range, sampler);
    const ImageCloud ub = sample_union(b, range, sampler);
    const double d = hausdorff(ua, ub);
    const double spacing = std::max(neighbor_spacing(ua), neighbor_spacing(ub));
    const double ratio = d == 0.0 ? 0.0 : (spacing > 0.0 ? d / spacing : std::numeric_limits<double>::infinity());
    worst_ratio = std::max(worst_ratio, ratio);
    worst_distance = std::max(worst_distance, d);
  }
  res.seconds = seconds_since(start);
  res.measured = worst_ratio;
  res.threshold = 3.0;
  res.passed = worst_ratio <= 3.0;
  res.detail = "50 pairs; max Hausdorff / neighbour spacing = " + fmt(worst_ratio) + "; max distance " + fmt(worst_distance);
  return res;
}

CheckResult converse_failure(const VerificationOptions&) {
  CheckResult res = titled(7, "f1 and f2 have equal auxiliary images without being equivalent");
  const auto start = Clock::now();
  const auto f1 = reference::f1();
  const auto f2 = reference::f2();
  const ImageCloud i1 = sample_image(f1, 0.0, GridSampler{32});
  const ImageCloud i2 = sample_image(f2, 0.0, GridSampler{32});
  const double d = hausdorff(i1, i2);
  const double bound = 3.0 * std::max(neighbor_spacing(i1), neighbor_spacing(i2));
  const bool not_equivalent = !check_equivalence(f1, f2).equivalent();
  res.seconds = seconds_since(start);
  res.measured = d;
  res.threshold = bound;
  res.passed = d <= bound && not_equivalent;
  res.detail = "Hausdorff " + fmt(d) + " vs bound " + fmt(bound) + "; decision: " +
               (not_equivalent ? "NotEquivalent" : "Equivalent");
  return res;
}

CheckResult diagonal_identity(const VerificationOptions& opt) {
  CheckResult res = titled(8, "Diagonal restriction agrees with evaluation");
  Rng rng(opt.seed ^ 0x08);
  const auto start = Clock::now();
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto k = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const auto j = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    const ExponentialSum f = random_sum(rng, k, j);
    const double sigma = uniform(rng, -2.0, 2.0);
    const double t = uniform(rng, -20.0, 20.0);
    const double err = std::abs(diagonal_restriction(f, sigma, t) - evaluate(f, Complex(sigma, t)));
    worst = std::max(worst, err / (1.0 + f.modulus_bound(sigma)));
  }
  res.seconds = seconds_since(start);
  res.measured = worst;
  res.threshold = 1e-12;
  res.passed = worst <= 1e-12;
  res.detail = "1000 samples; max scaled error " + fmt(worst);
  return res;
}

CheckResult basis_independence(const VerificationOptions&) {
  CheckResult res = titled(9, "Auxiliary image does not depend on the integral basis");
  const auto start = Clock::now();
  const double g = std::log(2.0);
  const std::vector<Complex> coeffs{Complex(1.0, 0.0), Complex(0.5, 0.5)};
  const auto over_g = ExponentialSum::make(BasisSpec({g}, {"g"}),
                                           {{coeffs[0], ExponentVector{{2}}}, {coeffs[1], ExponentVector{{3}}}});
  const auto over_h = ExponentialSum::make(BasisSpec({g / 6.0}, {"g/6"}),
                                           {{coeffs[0], ExponentVector{{12}}}, {coeffs[1], ExponentVector{{18}}}});
  const GridSampler sampler{128};
  const double d = check_basis_independence(over_g, over_h, 0.0, sampler);
  const double resolution =
      std::max(neighbor_spacing(sample_image(over_g, 0.0, sampler)), neighbor_spacing(sample_image(over_h, 0.0, sampler)));
  res.seconds = seconds_since(start);
  res.measured = d;
  res.threshold = 2.0 * resolution;
  res.passed = d <= res.threshold;
  res.detail = "Hausdorff " + fmt(d) + " vs 2 x resolution " + fmt(res.threshold);
  return res;
}

CheckResult fejer_limit(const VerificationOptions&) {
  CheckResult res = titled(10, "Bochner-Fejer polynomials converge to f1");
  const auto start = Clock::now();
  const auto f = reference::f1();
  const double sigma = 0.0;
  std::vector<Complex> points;
  for (int i = 0; i < 100; ++i) points.emplace_back(sigma, 1.0 + 99.0 * i / 99.0);

  double previous = std::numeric_limits<double>::infinity();
  bool monotone = true;
  bool bounded = true;
  double worst_ratio = 0.0;
  std::string trace;
  for (std::int64_t n : {2, 4, 8, 16}) {
    const std::vector<std::int64_t> degrees(f.dimension(), n);
    const ExponentialSum p = bochner_fejer(f, degrees);
    double err = 0.0;
    for (const Complex& s : points) err = std::max(err, std::abs(evaluate(p, s) - evaluate(f, s)));
    double max_defect = 0.0;
    for (const Term& t : f.terms()) max_defect = std::max(max_defect, 1.0 - fejer_factor(t.r, degrees));
    const double bound = f.modulus_bound(sigma) * max_defect;
    monotone = monotone && err < previous;
    bounded = bounded && err <= bound;
    worst_ratio = std::max(worst_ratio, err / bound);
    previous = err;
    trace += "n=" + std::to_string(n) + ": " + fmt(err) + " <= " + fmt(bound) + "; ";
  }
  res.seconds = seconds_since(start);
  res.measured = worst_ratio;
  res.threshold = 1.0;
  res.passed = monotone && bounded;
  res.detail = trace + (monotone ? "decreasing" : "not decreasing");
  return res;
}

CheckResult exact_lattice_layer(const VerificationOptions& opt) {
  CheckResult res = titled(11, "Exact kernel and integralization on 500 random matrices");
  Rng rng(opt.seed ^ 0x0b);
  const auto start = Clock::now();
  int kernel_failures = 0;
  int integralize_failures = 0;
  double worst_resolution = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto j = static_cast<std::size_t>(uniform_int(rng, 1, 5));
    const auto k = static_cast<std::size_t>(uniform_int(rng, 1, 4));

    std::vector<IntVector> rows(j, IntVector(k));
    for (auto& r : rows) {
      for (auto& e : r) e = uniform_int(rng, -3, 3);
    }
    std::vector<ExponentVector> exps;
    for (const auto& r : rows) exps.push_back(ExponentVector{r});
    const std::vector<IntVector> kernel = left_kernel(exps);

    bool ok = std::all_of(kernel.begin(), kernel.end(), [&](const IntVector& m) { return annihilates(m, rows); });
    ok = ok && kernel.size() == j - rational_rank(to_rational(rows));
    if (ok && !kernel.empty()) ok = maximal_minor_gcd(kernel) == 1;
    for (const IntVector& m : naive_kernel_search(rows, 3)) {
      if (!ok) break;
      auto stacked = kernel;
      stacked.push_back(m);
      ok = rational_rank(to_rational(stacked)) == kernel.size();
    }
    if (!ok) ++kernel_failures;

    // Rational coordinates with small denominators over a log-prime basis.
    const BasisSpec basis = prime_log_basis(k);
    std::set<std::vector<mpq_class>> seen;
    RationalMatrix m(j, k);
    for (std::size_t i = 0; i < j;) {
      std::vector<mpq_class> row(k);
      for (auto& q : row) {
        q = mpq_class(static_cast<long>(uniform_int(rng, -6, 6)), static_cast<unsigned long>(uniform_int(rng, 1, 6)));
        q.canonicalize();
      }
      if (!seen.insert(row).second) continue;
      for (std::size_t c = 0; c < k; ++c) m(i, c) = row[c];
      ++i;
    }
    const IntegralBasis ib = integralize(m, basis);
    bool exact = ib.vectors.size() == j;
    for (std::size_t i = 0; i < j && exact; ++i) {
      const IntVector& v = ib.vectors[i].coords;
      exact = v.size() == ib.change.rows();
      for (std::size_t c = 0; c < k && exact; ++c) {
        mpq_class s = 0;
        for (std::size_t l = 0; l < v.size(); ++l) s += mpq_class(static_cast<long>(v[l])) * ib.change(l, c);
        exact = s == m(i, c);
      }
      double direct = 0.0;
      double magnitude = 0.0;
      for (std::size_t c = 0; c < k; ++c) {
        direct += m(i, c).get_d() * basis.values()[c];
        magnitude += std::abs(m(i, c).get_d() * basis.values()[c]);
      }
      const double err = std::abs(resolve_exponent(ib.vectors[i], ib.basis) - direct) / std::max(magnitude, 1e-300);
      worst_resolution = std::max(worst_resolution, magnitude == 0.0 ? 0.0 : err);
    }
    if (!exact) ++integralize_failures;
  }
  res.seconds = seconds_since(start);
  res.measured = worst_resolution;
  res.threshold = 1e-12;
  res.passed = kernel_failures == 0 && integralize_failures == 0 && worst_resolution <= 1e-12;
  res.detail = std::to_string(kernel_failures) + " kernel failures, " + std::to_string(integralize_failures) +
               " integralize failures; max relative resolution error " + fmt(worst_resolution);
  return res;
}

}  // namespace

CheckResult run_acceptance_check(int id, const VerificationOptions& options) {
  switch (id) {
    case 1: return f1_f2_not_equivalent(options);
    case 2: return witness_round_trip(options);
    case 3: return phase_obstruction(options);
    case 4: return disk_containment(options);
    case 5: return disk_fill(options);
    case 6: return twisted_unions_coincide(options);
    case 7: return converse_failure(options);
    case 8: return diagonal_identity(options);
    case 9: return basis_independence(options);
    case 10: return fejer_limit(options);
    case 11: return exact_lattice_layer(options);
    default: throw Error(ErrorCode::invalid_input, "no acceptance check with id " + std::to_string(id));
  }
}

std::vector<CheckResult> run_acceptance_suite(const VerificationOptions& options) {
  std::vector<CheckResult> out;
  for (int id = 1; id <= kAcceptanceCheckCount; ++id) out.push_back(run_acceptance_check(id, options));
  return out;
}

}  // namespace bohr
