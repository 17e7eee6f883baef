#include "bohr/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "bohr/error.hpp"

namespace bohr {

using nlohmann::json;

namespace {

double bound_from_json(const json& v, double infinite) {
  if (v.is_null()) return infinite;
  if (!v.is_number()) throw Error(ErrorCode::parse_error, "strip bounds must be numbers or null");
  return v.get<double>();
}

json bound_to_json(double v) {
  if (std::isinf(v)) return nullptr;
  return v;
}

BasisSpec basis_from_json(const json& b) {
  if (!b.is_object()) throw Error(ErrorCode::parse_error, "\"basis\" must be an object");
  const std::string kind = b.at("kind").get<std::string>();
  if (kind == "log_integers") {
    return BasisSpec::log_integers(b.at("integers").get<std::vector<std::int64_t>>());
  }
  if (kind == "explicit") {
    auto values = b.at("values").get<std::vector<double>>();
    if (b.contains("labels")) {
      return BasisSpec(std::move(values), b.at("labels").get<std::vector<std::string>>());
    }
    return BasisSpec::from_values(std::move(values));
  }
  throw Error(ErrorCode::parse_error, "unknown basis kind \"" + kind + "\"");
}

json basis_to_json(const BasisSpec& b) {
  if (!b.source_integers().empty()) {
    return json{{"kind", "log_integers"}, {"integers", b.source_integers()}};
  }
  return json{{"kind", "explicit"}, {"values", b.values()}, {"labels", b.labels()}};
}

json vector_to_json(const ExponentVector& v) { return v.coords; }

}  // namespace

ExponentialSum parse_sum_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  try {
    if (!doc.is_object()) throw Error(ErrorCode::parse_error, "sum document must be an object");
    BasisSpec basis = basis_from_json(doc.at("basis"));
    std::vector<Term> terms;
    for (const json& t : doc.at("terms")) {
      const double re = t.value("re", 0.0);
      const double im = t.value("im", 0.0);
      terms.push_back(Term{Complex(re, im), ExponentVector{t.at("r").get<IntVector>()}});
    }
    Strip strip;
    if (doc.contains("strip")) {
      const json& s = doc.at("strip");
      strip.alpha = bound_from_json(s.value("alpha", json()), -std::numeric_limits<double>::infinity());
      strip.beta = bound_from_json(s.value("beta", json()), std::numeric_limits<double>::infinity());
    }
    return ExponentialSum::make(std::move(basis), std::move(terms), strip);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

std::string to_json(const ExponentialSum& f, int indent) {
  json terms = json::array();
  for (const Term& t : f.terms()) {
    terms.push_back(json{{"re", t.coeff.real()}, {"im", t.coeff.imag()}, {"r", vector_to_json(t.r)}});
  }
  const json doc{{"basis", basis_to_json(f.basis())},
                 {"terms", std::move(terms)},
                 {"strip", json{{"alpha", bound_to_json(f.strip().alpha)}, {"beta", bound_to_json(f.strip().beta)}}}};
  return doc.dump(indent);
}

std::string to_json(const EquivalenceVerdict& verdict, int indent) {
  json doc;
  doc["status"] = verdict.equivalent() ? "Equivalent" : "NotEquivalent";
  doc["witness"] = verdict.witness ? json(*verdict.witness) : json(nullptr);
  doc["residual"] = verdict.residual ? json(*verdict.residual) : json(nullptr);
  if (!verdict.obstruction) {
    doc["obstruction"] = nullptr;
  } else {
    doc["obstruction"] = std::visit(
        [](const auto& o) -> json {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, SupportMismatch>) {
            return json{{"kind", "SupportMismatch"}, {"exponent", vector_to_json(o.exponent)}};
          } else if constexpr (std::is_same_v<T, ModulusMismatch>) {
            return json{{"kind", "ModulusMismatch"},
                        {"exponent", vector_to_json(o.exponent)},
                        {"lhs_modulus", o.lhs_modulus},
                        {"rhs_modulus", o.rhs_modulus}};
          } else {
            return json{{"kind", "PhaseObstruction"}, {"kernel_vector", o.kernel_vector}, {"defect", o.defect}};
          }
        },
        *verdict.obstruction);
  }
  return doc.dump(indent);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_cloud_csv(std::ostream& out, const ImageCloud& cloud) {
  out << "sigma,t,re,im\n";
  std::string line;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    line.clear();
    line += format_double(cloud.sigma_of(i));
    line += ',';
    line += format_double(cloud.t_of(i));
    line += ',';
    line += format_double(cloud.points[i].real());
    line += ',';
    line += format_double(cloud.points[i].imag());
    line += '\n';
    out << line;
  }
}

void write_cloud_json(std::ostream& out, const ImageCloud& cloud) {
  json doc;
  const char* kind = cloud.sampler.kind == SamplerKind::vertical_line ? "vertical_line"
                     : cloud.sampler.kind == SamplerKind::torus_grid  ? "torus_grid"
                                                                      : "quasi_random";
  doc["sampler"] = json{{"kind", kind},
                        {"dimension", cloud.sampler.dimension},
                        {"grid_per_dim", cloud.sampler.grid_per_dim},
                        {"count", cloud.sampler.count},
                        {"seed", cloud.sampler.seed}};
  doc["sigmas"] = cloud.sigma_grid;
  json pts = json::array();
  for (const auto& p : cloud.points) pts.push_back(json::array({p.real(), p.imag()}));
  doc["points"] = std::move(pts);
  if (!cloud.ts.empty()) doc["t"] = cloud.ts;
  out << doc.dump() << '\n';
}

void write_cloud_svg(std::ostream& out, const ImageCloud& cloud, const SvgOptions& options) {
  const std::size_t stride =
      cloud.size() > options.max_points ? (cloud.size() + options.max_points - 1) / options.max_points : 1;

  double extent = 0.0;
  for (const auto& p : cloud.points) extent = std::max({extent, std::abs(p.real()), std::abs(p.imag())});
  if (!(extent > 0.0)) extent = 1.0;
  const double half = options.view_size / 2.0;
  const double scale = 0.95 * half / extent;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << format_double(options.view_size) << ' '
      << format_double(options.view_size) << "\" width=\"" << format_double(options.view_size) << "\" height=\""
      << format_double(options.view_size) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"0\" y1=\"" << half << "\" x2=\"" << options.view_size << "\" y2=\"" << half
      << "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
  out << "<line x1=\"" << half << "\" y1=\"0\" x2=\"" << half << "\" y2=\"" << options.view_size
      << "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
  out << "<g fill=\"#1f4e9c\" fill-opacity=\"0.6\">\n";
  char buf[128];
  for (std::size_t i = 0; i < cloud.size(); i += stride) {
    const double x = half + scale * cloud.points[i].real();
    const double y = half - scale * cloud.points[i].imag();
    const int len = std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%g\"/>\n", x, y,
                                  options.marker_radius);
    out.write(buf, len);
  }
  out << "</g>\n</svg>\n";
}

}  // namespace bohr
