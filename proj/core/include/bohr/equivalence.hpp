#pragma once

// Bohr-style equivalence of exponential sums over a shared integral basis:
// B ~ A iff b_j = a_j exp(i <r_j, x0>) for some real vector x0.

#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "bohr/sums.hpp"

namespace bohr {

struct Tolerances {
  double modulus = 1e-9;  // relative
  double phase = 1e-8;    // radians, scaled by (1 + |m|_1) per kernel row
};

/// An exponent present in one sum only.
struct SupportMismatch {
  ExponentVector exponent;
};

struct ModulusMismatch {
  ExponentVector exponent;
  double lhs_modulus;
  double rhs_modulus;
};

/// Integer relation m among the exponent vectors whose phase combination
/// sum_j m_j theta_j is not a multiple of 2 pi.
struct PhaseObstruction {
  IntVector kernel_vector;
  double defect;  // |sum_j m_j theta_j| reduced to [0, pi]
};

using Obstruction = std::variant<SupportMismatch, ModulusMismatch, PhaseObstruction>;

enum class EquivalenceStatus { equivalent, not_equivalent };

struct EquivalenceVerdict {
  EquivalenceStatus status = EquivalenceStatus::not_equivalent;
  std::optional<std::vector<double>> witness;
  std::optional<double> residual;
  std::optional<Obstruction> obstruction;

  bool equivalent() const noexcept { return status == EquivalenceStatus::equivalent; }
};

/// Coefficients a_j -> a_j exp(i <r_j, x>).
ExponentialSum twist(const ExponentialSum& f, std::span<const double> x);

/// Exact decision procedure. Both sums must be expressed over the same basis
/// (ErrorCode::basis_mismatch otherwise); co-express them with integralize()
/// first.
EquivalenceVerdict check_equivalence(const ExponentialSum& a, const ExponentialSum& b,
                                     const Tolerances& tol = {});

/// Brings two sums onto one basis. Identical bases are kept; two log-integer
/// bases are replaced by the logs of all primes involved. Anything else raises
/// ErrorCode::basis_mismatch.
std::pair<ExponentialSum, ExponentialSum> co_express(const ExponentialSum& a, const ExponentialSum& b);

/// Exhaustive scan of the torus grid [0, 2 pi)^K, K <= 4. Independent of
/// check_equivalence; gives no certificate when it fails.
EquivalenceVerdict brute_force_equivalence(const ExponentialSum& a, const ExponentialSum& b,
                                           std::size_t grid_per_dim, const Tolerances& tol = {});

/// Reduces an angle to (-pi, pi].
double wrap_angle(double angle) noexcept;

}  // namespace bohr
