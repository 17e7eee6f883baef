#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bohr/error.hpp"
#include "bohr/reference_sums.hpp"
#include "bohr/sums.hpp"
#include "oracles.hpp"

namespace bohr {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Complex> coeffs_of(const ExponentialSum& f) {
  std::vector<Complex> out;
  for (const auto& t : f.terms()) out.push_back(t.coeff);
  return out;
}

std::vector<IntVector> rows_of(const ExponentialSum& f) {
  std::vector<IntVector> out;
  for (const auto& t : f.terms()) out.push_back(t.r.coords);
  return out;
}

TEST(Evaluate, F1AtZero) {
  EXPECT_NEAR(std::abs(evaluate(reference::f1(), 0.0) - Complex(4.0, 0.0)), 0.0, 1e-15);
}

TEST(Evaluate, EmptySumIsZero) {
  const auto f = ExponentialSum::make(BasisSpec::from_values({1.0}), {});
  EXPECT_TRUE(f.empty());
  EXPECT_EQ(evaluate(f, Complex(0.3, -7.0)), Complex(0.0, 0.0));
}

TEST(Evaluate, Log2TermFlipsSignAtPiOverLog2) {
  const auto f = reference::f1();
  const Complex s(0.0, kPi / std::log(2.0));
  const Complex expected = -1.0 + std::exp(Complex(0.0, kPi * std::log(3.0) / std::log(2.0))) +
                           2.0 * std::exp(Complex(0.0, kPi * std::log(5.0) / std::log(2.0)));
  EXPECT_NEAR(std::abs(evaluate(f, s) - expected), 0.0, 1e-13);
}

TEST(Evaluate, MatchesDirectSumOnRandomInputs) {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto k = static_cast<std::size_t>(gen.integer(1, 3));
    const ExponentialSum f = gen.sum(k, static_cast<std::size_t>(gen.integer(1, 6)));
    const Complex s(gen.real(-2, 2), gen.real(-30, 30));
    const Complex want = oracle::direct_sum(coeffs_of(f), rows_of(f), f.basis().values(), s);
    ASSERT_LE(std::abs(evaluate(f, s) - want), 1e-12 * (1.0 + f.modulus_bound(s.real())));
  }
}

TEST(Evaluate, TriangleInequalityOnVerticalLines) {
  oracle::Gen gen(32);
  for (int trial = 0; trial < 300; ++trial) {
    const ExponentialSum f = gen.sum(static_cast<std::size_t>(gen.integer(1, 3)), static_cast<std::size_t>(gen.integer(1, 6)));
    const double sigma = gen.real(-1, 1);
    const double t = gen.real(-100, 100);
    ASSERT_LE(std::abs(evaluate(f, Complex(sigma, t))), f.modulus_bound(sigma) * (1 + 1e-14));
  }
}

TEST(Strip, EvaluationOutsideIsRejectedUnlessOverridden) {
  const auto f = ExponentialSum::make(BasisSpec::from_values({1.0}), {{Complex(1, 0), ExponentVector{{1}}}},
                                      Strip::between(0.0, 1.0));
  EXPECT_THROW(evaluate(f, Complex(1.0, 0.0)), Error);
  EXPECT_THROW(evaluate(f, Complex(-0.5, 0.0)), Error);
  EXPECT_NEAR(evaluate(f, Complex(2.0, 0.0), StripPolicy::allow_outside).real(), std::exp(2.0), 1e-12);
  EXPECT_NO_THROW(evaluate(f, Complex(0.5, 3.0)));
  EXPECT_THROW(Strip::between(1.0, 1.0), Error);
}

TEST(ExponentialSum, CanonicalisationMergesDropsAndSorts) {
  const BasisSpec b = BasisSpec::log_integers({2, 3});
  const auto f = ExponentialSum::make(b, {{Complex(1, 0), ExponentVector{{0, 1}}},
                                          {Complex(2, 0), ExponentVector{{1}}},
                                          {Complex(0.5, 0), ExponentVector{{0, 1}}},
                                          {Complex(1, 0), ExponentVector{{-1, 0}}},
                                          {Complex(-1, 0), ExponentVector{{-1, 0}}}});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.terms()[0].r.coords, (IntVector{1, 0}));
  EXPECT_EQ(f.terms()[0].coeff, Complex(2, 0));
  EXPECT_EQ(f.terms()[1].r.coords, (IntVector{0, 1}));
  EXPECT_EQ(f.terms()[1].coeff, Complex(1.5, 0));
  EXPECT_LT(f.exponents()[0], f.exponents()[1]);
}

TEST(ExponentialSum, DistinctVectorsWithEqualExponentAreRejected) {
  const BasisSpec b = BasisSpec::from_values({1.0, 2.0});
  try {
    ExponentialSum::make(b, {{Complex(1, 0), ExponentVector{{2, 0}}}, {Complex(1, 0), ExponentVector{{0, 1}}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::duplicate_exponent);
  }
}

TEST(VerticalLineSamples, Examples) {
  const auto f1 = reference::f1();
  const ImageCloud single = vertical_line_samples(f1, 0.0, 0.0, 0.0, 1);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_NEAR(std::abs(single.points[0] - Complex(4, 0)), 0.0, 1e-15);
  EXPECT_EQ(single.t_of(0), 0.0);

  const ImageCloud line = vertical_line_samples(f1, 0.0, -50.0, 50.0, 1001);
  ASSERT_EQ(line.size(), 1001u);
  EXPECT_EQ(line.t_of(0), -50.0);
  EXPECT_EQ(line.t_of(1000), 50.0);
  for (const auto& p : line.points) EXPECT_LE(std::abs(p), 4.0 + 1e-12);

  const auto constant = ExponentialSum::make(BasisSpec::from_values({1.0}), {{Complex(0.5, -2), ExponentVector{{0}}}});
  for (const auto& p : vertical_line_samples(constant, 0.3, 0, 10, 50).points) EXPECT_EQ(p, Complex(0.5, -2));

  EXPECT_THROW(vertical_line_samples(f1, 0.0, 1.0, 0.0, 5), Error);
  EXPECT_THROW(vertical_line_samples(f1, 0.0, 0.0, 1.0, 0), Error);
}

TEST(BochnerFejer, Examples) {
  const auto f1 = reference::f1();
  const std::vector<std::int64_t> two{2, 2, 2};
  const ExponentialSum p2 = bochner_fejer(f1, two);
  ASSERT_EQ(p2.size(), 3u);
  EXPECT_EQ(coeffs_of(p2), (std::vector<Complex>{0.5, 0.5, 1.0}));

  const std::vector<std::int64_t> one{1, 1, 1};
  EXPECT_TRUE(bochner_fejer(f1, one).empty());

  const std::vector<std::int64_t> big{1000000, 1000000, 1000000};
  const ExponentialSum near = bochner_fejer(f1, big);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(near.terms()[j].coeff - f1.terms()[j].coeff), 0.0, 3e-6);

  const std::vector<std::int64_t> bad{2, 0, 2};
  EXPECT_THROW(bochner_fejer(f1, bad), Error);
  const std::vector<std::int64_t> short_degrees{2, 2};
  EXPECT_THROW(bochner_fejer(f1, short_degrees), Error);
}

TEST(BochnerFejer, FactorsMatchTheProductFormula) {
  const std::vector<std::int64_t> d{3, 5};
  EXPECT_DOUBLE_EQ(fejer_factor(ExponentVector{{1, -2}}, d), (1.0 - 1.0 / 3) * (1.0 - 2.0 / 5));
  EXPECT_EQ(fejer_factor(ExponentVector{{3, 0}}, d), 0.0);
  EXPECT_EQ(fejer_factor(ExponentVector{{0, 0}}, d), 1.0);
}

TEST(BochnerFejer, ErrorBoundHoldsAndShrinksWithDegree) {
  oracle::Gen gen(33);
  for (int trial = 0; trial < 60; ++trial) {
    const auto k = static_cast<std::size_t>(gen.integer(1, 3));
    const ExponentialSum f = gen.sum(k, static_cast<std::size_t>(gen.integer(1, 6)), 2);
    const double sigma = gen.real(-1, 1);
    double previous_bound = std::numeric_limits<double>::infinity();
    for (std::int64_t n : {3, 6, 12, 24}) {
      const std::vector<std::int64_t> degrees(k, n);
      const ExponentialSum p = bochner_fejer(f, degrees);
      double bound = 0.0;
      for (std::size_t j = 0; j < f.size(); ++j) {
        bound += std::abs(f.terms()[j].coeff) * std::exp(f.exponents()[j] * sigma) *
                 (1.0 - fejer_factor(f.terms()[j].r, degrees));
      }
      for (int i = 0; i < 40; ++i) {
        const Complex s(sigma, gen.real(-50, 50));
        ASSERT_LE(std::abs(evaluate(p, s) - evaluate(f, s)), bound * (1 + 1e-12) + 1e-13);
      }
      ASSERT_LE(bound, previous_bound);
      previous_bound = bound;
    }
  }
}

}  // namespace
}  // namespace bohr
