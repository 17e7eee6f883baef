#pragma once

// Text formats:
//
// Sum document
//   { "basis": {"kind": "explicit", "values": [...], "labels": [...]?}
//            | {"kind": "log_integers", "integers": [...]},
//     "terms": [{"re": r, "im": i, "r": [ints]}, ...],
//     "strip": {"alpha": number|null, "beta": number|null} }      null = infinite
//
// Cloud CSV: header `sigma,t,re,im`, one row per point, shortest round-trip
// decimal doubles; `t` is nan for torus samples.

#include <iosfwd>
#include <string>
#include <string_view>

#include "bohr/equivalence.hpp"
#include "bohr/image_cloud.hpp"
#include "bohr/sums.hpp"

namespace bohr {

/// Throws ErrorCode::parse_error on malformed documents; semantic errors
/// (duplicate exponents, bad strip) keep their own codes.
ExponentialSum parse_sum_json(std::string_view text);
std::string to_json(const ExponentialSum& f, int indent = 2);

std::string to_json(const EquivalenceVerdict& verdict, int indent = 2);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

void write_cloud_csv(std::ostream& out, const ImageCloud& cloud);
void write_cloud_json(std::ostream& out, const ImageCloud& cloud);

struct SvgOptions {
  std::size_t max_points = 50'000;  // clouds above this are thinned by stride
  double view_size = 800.0;
  double marker_radius = 1.0;
};

/// Scatter plot with a fixed square viewBox and one circle per plotted point.
void write_cloud_svg(std::ostream& out, const ImageCloud& cloud, const SvgOptions& options = {});

}  // namespace bohr
