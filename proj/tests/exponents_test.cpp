#include <cmath>

#include <gtest/gtest.h>

#include "bohr/error.hpp"
#include "bohr/exponents.hpp"
#include "oracles.hpp"

namespace bohr {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::invalid_input;
}

RationalMatrix rational_rows(const std::vector<std::vector<mpq_class>>& rows) {
  RationalMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
  }
  return m;
}

TEST(ResolveExponent, Examples) {
  const BasisSpec b = BasisSpec::log_integers({2, 3, 5});
  EXPECT_NEAR(resolve_exponent(ExponentVector{{1, 0, 0}}, b), 0.693147, 1e-6);
  EXPECT_EQ(resolve_exponent(ExponentVector{{0, 0, 0}}, b), 0.0);
  EXPECT_NEAR(resolve_exponent(ExponentVector{{1, 1}}, BasisSpec::log_integers({2, 3})), 1.791759, 1e-6);
  EXPECT_EQ(resolve_exponent(ExponentVector{{1, 1}}, BasisSpec::log_integers({2, 3})), std::log(6.0));
}

TEST(ResolveExponent, VectorLongerThanBasisIsRejected) {
  const BasisSpec b = BasisSpec::log_integers({2});
  EXPECT_EQ(code_of([&] { resolve_exponent(ExponentVector{{1, 1}}, b); }), ErrorCode::dimension_mismatch);
  // Trailing zeros are not part of the support.
  EXPECT_NEAR(resolve_exponent(ExponentVector{{1, 0, 0}}, b), std::log(2.0), 1e-15);
}

TEST(BasisSpec, ValidatesItsInvariants) {
  EXPECT_EQ(code_of([] { BasisSpec::from_values({}); }), ErrorCode::invalid_input);
  EXPECT_EQ(code_of([] { BasisSpec::from_values({1.0, 1.0}); }), ErrorCode::invalid_input);
  EXPECT_EQ(code_of([] { BasisSpec({1.0, 2.0}, {"a"}); }), ErrorCode::invalid_input);
  EXPECT_EQ(code_of([] { BasisSpec::log_integers({2, 4}); }), ErrorCode::dependent_basis);
  EXPECT_EQ(code_of([] { BasisSpec::log_integers({6, 12, 18}); }), ErrorCode::dependent_basis);
  EXPECT_EQ(code_of([] { BasisSpec::log_integers({1}); }), ErrorCode::invalid_input);

  EXPECT_EQ(BasisSpec::log_integers({2, 3, 5}).kind(), BasisKind::log_primes);
  EXPECT_EQ(BasisSpec::log_integers({6, 5}).kind(), BasisKind::explicit_values);
  EXPECT_EQ(BasisSpec::from_values({0.5, 2.0}).labels(), (std::vector<std::string>{"g1", "g2"}));
}

TEST(ExponentVector, SupportAndPadding) {
  const ExponentVector v{{0, 3, 0, 0}};
  EXPECT_EQ(v.support(), 2u);
  EXPECT_EQ(v.padded(5).coords, (IntVector{0, 3, 0, 0, 0}));
  EXPECT_EQ(v.padded(2).coords, (IntVector{0, 3}));
  EXPECT_THROW(v.padded(1), Error);
  EXPECT_EQ((ExponentVector{{-2, 3}}).l1_norm(), 5);
}

TEST(BasisFromLogIntegers, Examples) {
  const std::vector<std::int64_t> a{2, 3, 5};
  const auto fa = basis_from_log_integers(a);
  EXPECT_EQ(fa.basis, BasisSpec::log_integers({2, 3, 5}));
  EXPECT_EQ(fa.vectors, (std::vector<ExponentVector>{{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}}));

  const std::vector<std::int64_t> b{6};
  const auto fb = basis_from_log_integers(b);
  EXPECT_EQ(fb.basis.source_integers(), (std::vector<std::int64_t>{2, 3}));
  EXPECT_EQ(fb.vectors, (std::vector<ExponentVector>{{{1, 1}}}));

  const std::vector<std::int64_t> c{4, 8};
  const auto fc = basis_from_log_integers(c);
  EXPECT_EQ(fc.basis.source_integers(), (std::vector<std::int64_t>{2}));
  EXPECT_EQ(fc.vectors, (std::vector<ExponentVector>{{{2}}, {{3}}}));

  const std::vector<std::int64_t> bad{1};
  EXPECT_EQ(code_of([&] { basis_from_log_integers(bad); }), ErrorCode::invalid_input);
}

TEST(BasisFromLogIntegers, ExponentialOfResolutionRecoversTheInteger) {
  oracle::Gen gen(21);
  std::vector<std::int64_t> ns;
  for (int i = 0; i < 200; ++i) ns.push_back(gen.integer(2, 100000));
  const auto f = basis_from_log_integers(ns);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double n = static_cast<double>(ns[i]);
    EXPECT_NEAR(std::exp(resolve_exponent(f.vectors[i], f.basis)), n, 1e-12 * n) << ns[i];
  }
}

TEST(Factorize, SmallNumbers) {
  EXPECT_EQ(factorize(360), (std::vector<std::pair<std::int64_t, int>>{{2, 3}, {3, 2}, {5, 1}}));
  EXPECT_EQ(factorize(97), (std::vector<std::pair<std::int64_t, int>>{{97, 1}}));
}

TEST(Integralize, HalfAndThird) {
  const BasisSpec g({1.7}, {"g"});
  const IntegralBasis ib = integralize(rational_rows({{mpq_class(1, 2)}, {mpq_class(1, 3)}}), g);
  ASSERT_EQ(ib.basis.dimension(), 1u);
  EXPECT_NEAR(ib.basis.values()[0], 1.7 / 6.0, 1e-15);
  EXPECT_EQ(ib.basis.labels()[0], "(1/6)*g");
  EXPECT_EQ(ib.vectors, (std::vector<ExponentVector>{{{3}}, {{2}}}));
}

TEST(Integralize, HalfAndOne) {
  const BasisSpec g({1.7}, {"g"});
  const IntegralBasis ib = integralize(rational_rows({{mpq_class(1, 2)}, {mpq_class(1)}}), g);
  EXPECT_NEAR(ib.basis.values()[0], 0.85, 1e-15);
  EXPECT_EQ(ib.vectors, (std::vector<ExponentVector>{{{1}}, {{2}}}));
}

TEST(Integralize, IntegralInputIsUnchanged) {
  const BasisSpec b = BasisSpec::log_integers({2, 3});
  const IntegralBasis ib = integralize(RationalMatrix::from_integers({{1, 0}, {0, 1}}), b);
  EXPECT_EQ(ib.basis, b);
  EXPECT_EQ(ib.vectors, (std::vector<ExponentVector>{{{1, 0}}, {{0, 1}}}));
}

TEST(Integralize, RepeatedRowsAreDuplicateExponents) {
  const BasisSpec b = BasisSpec::log_integers({2, 3});
  EXPECT_EQ(code_of([&] { integralize(RationalMatrix::from_integers({{0, 0}, {0, 0}}), b); }),
            ErrorCode::duplicate_exponent);
  EXPECT_EQ(code_of([&] { integralize(RationalMatrix::from_integers({{1, 2}, {1, 2}}), b); }),
            ErrorCode::duplicate_exponent);
  EXPECT_EQ(code_of([&] { integralize(RationalMatrix::from_integers({{1, 2, 3}}), b); }),
            ErrorCode::dimension_mismatch);
}

TEST(Integralize, RandomRationalRowsRoundTrip) {
  oracle::Gen gen(22);
  const std::vector<std::int64_t> primes{2, 3, 5, 7};
  for (int trial = 0; trial < 400; ++trial) {
    const auto j = static_cast<std::size_t>(gen.integer(1, 5));
    const auto k = static_cast<std::size_t>(gen.integer(1, 4));
    const BasisSpec basis = BasisSpec::log_integers({primes.begin(), primes.begin() + static_cast<long>(k)});
    std::set<std::vector<mpq_class>> seen;
    std::vector<std::vector<mpq_class>> rows;
    while (rows.size() < j) {
      std::vector<mpq_class> row(k);
      for (auto& q : row) {
        q = mpq_class(static_cast<long>(gen.integer(-6, 6)), static_cast<unsigned long>(gen.integer(1, 6)));
        q.canonicalize();
      }
      if (seen.insert(row).second) rows.push_back(row);
    }
    const RationalMatrix m = rational_rows(rows);
    const IntegralBasis ib = integralize(m, basis);

    // One new basis element per unit of rank; a lone zero row keeps the input basis.
    const std::size_t r = oracle::rank(rows);
    ASSERT_EQ(ib.change.rows(), r == 0 ? k : r);
    for (std::size_t i = 0; i < j; ++i) {
      double direct = 0.0, magnitude = 0.0;
      for (std::size_t c = 0; c < k; ++c) {
        direct += rows[i][c].get_d() * basis.values()[c];
        magnitude += std::abs(rows[i][c].get_d() * basis.values()[c]);
      }
      ASSERT_NEAR(resolve_exponent(ib.vectors[i], ib.basis), direct, 1e-12 * std::max(magnitude, 1e-300));
      for (std::size_t c = 0; c < k; ++c) {
        mpq_class s = 0;
        for (std::size_t l = 0; l < ib.vectors[i].coords.size(); ++l) {
          s += mpq_class(static_cast<long>(ib.vectors[i].coords[l])) * ib.change(l, c);
        }
        ASSERT_EQ(s, rows[i][c]);
      }
    }

    // Idempotence: integralizing the output changes the basis only unimodularly.
    std::vector<IntVector> out_rows;
    for (const auto& v : ib.vectors) out_rows.push_back(v.coords);
    const IntegralBasis again = integralize(RationalMatrix::from_integers(out_rows), ib.basis);
    for (std::size_t i = 0; i < j; ++i) {
      ASSERT_NEAR(resolve_exponent(again.vectors[i], again.basis), resolve_exponent(ib.vectors[i], ib.basis),
                  1e-12 * (1.0 + std::abs(resolve_exponent(ib.vectors[i], ib.basis))));
    }
    ASSERT_EQ(again.change.rows(), ib.change.rows());
    if (again.change.rows() == again.change.cols()) {
      std::vector<std::vector<mpz_class>> c(again.change.rows(), std::vector<mpz_class>(again.change.cols()));
      bool integral = true;
      for (std::size_t a = 0; a < c.size(); ++a) {
        for (std::size_t b = 0; b < c.size(); ++b) {
          integral = integral && again.change(a, b).get_den() == 1;
          c[a][b] = again.change(a, b).get_num();
        }
      }
      ASSERT_TRUE(integral);
      const mpz_class det = oracle::determinant(c);
      ASSERT_TRUE(det == 1 || det == -1);
    }
  }
}

TEST(LeftKernel, Examples) {
  const std::vector<ExponentVector> a{{{1, 0}}, {{0, 1}}, {{1, 1}}};
  EXPECT_EQ(left_kernel(a), (std::vector<IntVector>{{1, 1, -1}}));
  const std::vector<ExponentVector> b{{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}};
  EXPECT_TRUE(left_kernel(b).empty());
  const std::vector<ExponentVector> c{{{1}}, {{2}}};
  EXPECT_EQ(left_kernel(c), (std::vector<IntVector>{{2, -1}}));
}

TEST(LeftKernel, AgreesWithSmallCoefficientSearch) {
  oracle::Gen gen(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto j = static_cast<std::size_t>(gen.integer(1, 5));
    const auto k = static_cast<std::size_t>(gen.integer(1, 3));
    std::vector<IntVector> rows(j, IntVector(k));
    for (auto& r : rows) {
      for (auto& e : r) e = gen.integer(-3, 3);
    }
    std::vector<ExponentVector> exps;
    for (const auto& r : rows) exps.push_back(ExponentVector{r});
    const auto kernel = left_kernel(exps);

    ASSERT_EQ(kernel.size(), j - oracle::rank(rows));
    for (const auto& m : kernel) ASSERT_TRUE(oracle::annihilates(m, rows));
    if (!kernel.empty()) ASSERT_EQ(oracle::maximal_minor_gcd(kernel), 1);
    for (const auto& m : oracle::small_kernel_vectors(rows, 2)) {
      auto stacked = kernel;
      stacked.push_back(m);
      ASSERT_EQ(oracle::rank(stacked), kernel.size());
    }
  }
}

}  // namespace
}  // namespace bohr
