#pragma once

// Finite exponential sums  f(s) = sum_j a_j exp(lambda_j s)  over an integral
// basis, together with their vertical strip of definition.

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "bohr/exponents.hpp"
#include "bohr/image_cloud.hpp"

namespace bohr {

using Complex = std::complex<double>;

/// Open vertical strip alpha < Re s < beta; infinite bounds allowed.
struct Strip {
  double alpha = -std::numeric_limits<double>::infinity();
  double beta = std::numeric_limits<double>::infinity();

  static Strip whole_plane() { return {}; }
  /// Throws ErrorCode::invalid_input unless alpha < beta.
  static Strip between(double alpha, double beta);

  bool contains(double sigma) const noexcept { return alpha < sigma && sigma < beta; }
  friend bool operator==(const Strip&, const Strip&) = default;
};

struct Term {
  Complex coeff;
  ExponentVector r;

  friend bool operator==(const Term&, const Term&) = default;
};

class ExponentialSum {
 public:
  ExponentialSum() = default;

  /// Canonicalises the terms: vectors are padded to the basis dimension,
  /// terms with equal vectors are merged, zero coefficients dropped and the
  /// rest sorted by ascending resolved exponent. Two different vectors that
  /// resolve to the same exponent raise ErrorCode::duplicate_exponent.
  static ExponentialSum make(BasisSpec basis, std::vector<Term> terms, Strip strip = {});

  const BasisSpec& basis() const noexcept { return basis_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Strip& strip() const noexcept { return strip_; }
  /// Resolved exponents lambda_j, parallel to terms().
  const std::vector<double>& exponents() const noexcept { return exponents_; }

  std::size_t dimension() const noexcept { return basis_.dimension(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// sum_j |a_j| exp(lambda_j sigma): the triangle-inequality bound on |f| at Re s = sigma.
  double modulus_bound(double sigma) const noexcept;

  friend bool operator==(const ExponentialSum&, const ExponentialSum&) = default;

 private:
  BasisSpec basis_;
  std::vector<Term> terms_;
  Strip strip_;
  std::vector<double> exponents_;
};

enum class StripPolicy { enforce, allow_outside };

/// Throws ErrorCode::out_of_domain if sigma lies outside the strip and the
/// policy is enforce.
void require_in_strip(const ExponentialSum& f, double sigma, StripPolicy policy = StripPolicy::enforce);

Complex evaluate(const ExponentialSum& f, Complex s, StripPolicy policy = StripPolicy::enforce);

/// Values of f on sigma0 + i t for `count` equally spaced t in [t_min, t_max].
ImageCloud vertical_line_samples(const ExponentialSum& f, double sigma0, double t_min, double t_max,
                                 std::size_t count, StripPolicy policy = StripPolicy::enforce);

/// Product-Fejer damping over the integral basis:
///   p_j = prod_m max(0, 1 - |r_{j,m}| / degrees[m]),
/// coefficients become p_j a_j and vanishing terms are dropped.
ExponentialSum bochner_fejer(const ExponentialSum& f, std::span<const std::int64_t> degrees);

/// The damping factor p_j for one exponent vector.
double fejer_factor(const ExponentVector& r, std::span<const std::int64_t> degrees);

}  // namespace bohr
