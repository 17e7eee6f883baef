#include "bohr/sums.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "bohr/error.hpp"

namespace bohr {

Strip Strip::between(double alpha, double beta) {
  if (!(alpha < beta)) throw Error(ErrorCode::invalid_input, "strip needs alpha < beta");
  return Strip{alpha, beta};
}

ExponentialSum ExponentialSum::make(BasisSpec basis, std::vector<Term> terms, Strip strip) {
  if (!(strip.alpha < strip.beta)) throw Error(ErrorCode::invalid_input, "strip needs alpha < beta");
  const std::size_t dim = basis.dimension();

  std::map<IntVector, Complex> merged;
  for (const Term& t : terms) {
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
      throw Error(ErrorCode::invalid_input, "coefficients must be finite");
    }
    merged[t.r.padded(dim).coords] += t.coeff;
  }

  struct Entry {
    double lambda;
    Term term;
  };
  std::vector<Entry> entries;
  for (auto& [coords, coeff] : merged) {
    if (coeff == Complex(0.0, 0.0)) continue;
    ExponentVector r{coords};
    const double lambda = resolve_exponent(r, basis);
    entries.push_back({lambda, Term{coeff, std::move(r)}});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.term.r < b.term.r;
  });
  for (std::size_t j = 1; j < entries.size(); ++j) {
    if (entries[j].lambda == entries[j - 1].lambda) {
      throw Error(ErrorCode::duplicate_exponent,
                  "distinct exponent vectors resolve to the same exponent; is the basis dependent?");
    }
  }

  ExponentialSum f;
  f.basis_ = std::move(basis);
  f.strip_ = strip;
  for (auto& e : entries) {
    f.exponents_.push_back(e.lambda);
    f.terms_.push_back(std::move(e.term));
  }
  return f;
}

double ExponentialSum::modulus_bound(double sigma) const noexcept {
  double total = 0.0;
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    total += std::abs(terms_[j].coeff) * std::exp(exponents_[j] * sigma);
  }
  return total;
}

void require_in_strip(const ExponentialSum& f, double sigma, StripPolicy policy) {
  if (policy == StripPolicy::allow_outside) return;
  if (!f.strip().contains(sigma)) {
    std::ostringstream msg;
    msg << "Re s = " << sigma << " lies outside the strip (" << f.strip().alpha << ", "
        << f.strip().beta << ")";
    throw Error(ErrorCode::out_of_domain, msg.str());
  }
}

Complex evaluate(const ExponentialSum& f, Complex s, StripPolicy policy) {
  require_in_strip(f, s.real(), policy);
  Complex total(0.0, 0.0);
  const auto& lambdas = f.exponents();
  for (std::size_t j = 0; j < f.size(); ++j) {
    total += f.terms()[j].coeff * std::exp(lambdas[j] * s);
  }
  return total;
}

ImageCloud vertical_line_samples(const ExponentialSum& f, double sigma0, double t_min, double t_max,
                                 std::size_t count, StripPolicy policy) {
  require_in_strip(f, sigma0, policy);
  if (count == 0) throw Error(ErrorCode::invalid_input, "sample count must be >= 1");
  if (!(t_min <= t_max)) throw Error(ErrorCode::invalid_input, "need t_min <= t_max");

  ImageCloud cloud;
  cloud.sigma_grid = {sigma0};
  cloud.slice_size = count;
  cloud.sampler = SamplerInfo{SamplerKind::vertical_line, 1, 0, count, 0, t_min, t_max};
  cloud.points.reserve(count);
  cloud.ts.reserve(count);
  const double step = count > 1 ? (t_max - t_min) / static_cast<double>(count - 1) : 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = k + 1 == count && count > 1 ? t_max : t_min + step * static_cast<double>(k);
    cloud.ts.push_back(t);
    cloud.points.push_back(evaluate(f, Complex(sigma0, t), StripPolicy::allow_outside));
  }
  return cloud;
}

double fejer_factor(const ExponentVector& r, std::span<const std::int64_t> degrees) {
  double p = 1.0;
  for (std::size_t m = 0; m < degrees.size(); ++m) {
    const std::int64_t c = m < r.coords.size() ? r.coords[m] : 0;
    const double mag = static_cast<double>(c < 0 ? -c : c);
    p *= std::max(0.0, 1.0 - mag / static_cast<double>(degrees[m]));
    if (p == 0.0) break;
  }
  return p;
}

ExponentialSum bochner_fejer(const ExponentialSum& f, std::span<const std::int64_t> degrees) {
  if (degrees.size() != f.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "need one degree per basis element");
  }
  for (auto d : degrees) {
    if (d <= 0) throw Error(ErrorCode::invalid_input, "Bochner-Fejer degrees must be positive");
  }
  std::vector<Term> damped;
  for (const Term& t : f.terms()) {
    const double p = fejer_factor(t.r, degrees);
    if (p > 0.0) damped.push_back(Term{p * t.coeff, t.r});
  }
  return ExponentialSum::make(f.basis(), std::move(damped), f.strip());
}

}  // namespace bohr
