#include "bohr_cli/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bohr/auxiliary.hpp"
#include "bohr/equivalence.hpp"
#include "bohr/error.hpp"
#include "bohr/io.hpp"
#include "bohr/verification.hpp"

namespace bohr::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ExponentialSum load_sum(const std::string& path) { return parse_sum_json(read_file(path)); }

double parse_real(std::string_view s, const char* what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw UsageError(std::string("bad ") + what + ": '" + std::string(s) + "'");
  }
  return v;
}

/// lo:hi or lo:hi:count
SigmaRange parse_sigma_range(const std::string& text, bool compact) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 2 && parts.size() != 3) throw UsageError("--sigma-range expects lo:hi[:count]");
  const double lo = parse_real(parts[0], "sigma range bound");
  const double hi = parse_real(parts[1], "sigma range bound");
  if (!(lo < hi)) throw UsageError("--sigma-range needs lo < hi");
  if (parts.size() == 2) {
    SigmaRange r = SigmaRange::open_default_density(lo, hi);
    r.compact = compact;
    return r;
  }
  std::size_t count = 0;
  const auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
  if (res.ec != std::errc() || res.ptr != parts[2].data() + parts[2].size() || count == 0) {
    throw UsageError("--sigma-range count must be a positive integer");
  }
  return SigmaRange{lo, hi, count, compact};
}

struct SamplerFlags {
  std::optional<std::size_t> grid;
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;

  TorusSampler make() const {
    if (grid && samples) throw UsageError("--grid and --samples are mutually exclusive");
    if (samples) return QuasiRandomSampler{*samples, seed};
    return GridSampler{grid.value_or(32)};
  }
};

struct OutputFlags {
  std::string path;
  std::string format = "csv";
};

void write_cloud(const ImageCloud& cloud, const OutputFlags& o, std::ostream& stdout_stream) {
  std::ofstream file;
  if (!o.path.empty()) {
    file.open(o.path, std::ios::binary);
    if (!file) throw UsageError("cannot write " + o.path);
  }
  std::ostream& out = o.path.empty() ? stdout_stream : file;
  if (o.format == "csv") write_cloud_csv(out, cloud);
  else if (o.format == "json") write_cloud_json(out, cloud);
  else write_cloud_svg(out, cloud);
}

void print_summary(const ImageCloud& cloud, std::ostream& s) {
  s << "points: " << cloud.size() << "\n"
    << "max modulus: " << std::fixed << std::setprecision(6) << cloud.max_modulus() << std::defaultfloat << "\n";
}

void add_sampler_flags(CLI::App& cmd, SamplerFlags& s) {
  cmd.add_option("--grid", s.grid, "Torus grid points per dimension (default 32)")->check(CLI::PositiveNumber);
  cmd.add_option("--samples", s.samples, "Quasi-random torus sample count")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", s.seed, "Seed for quasi-random sampling");
}

void add_output_flags(CLI::App& cmd, OutputFlags& o) {
  cmd.add_option("--out", o.path, "Output file (default: stdout)");
  cmd.add_option("--format", o.format, "Cloud format")->check(CLI::IsMember({"csv", "json", "svg"}));
}

nlohmann::json report_json(const std::vector<CheckResult>& results) {
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    checks.push_back({{"id", r.id},
                      {"title", r.title},
                      {"passed", r.passed},
                      {"measured", r.measured},
                      {"threshold", r.threshold},
                      {"seconds", r.seconds},
                      {"detail", r.detail}});
  }
  return {{"passed", all}, {"checks", std::move(checks)}};
}

void print_table(const std::vector<CheckResult>& results, std::ostream& out) {
  int passed = 0;
  for (const auto& r : results) {
    passed += r.passed ? 1 : 0;
    out << (r.passed ? "PASS " : "FAIL ") << std::setw(2) << r.id << "  " << r.title << "\n"
        << "         measured " << r.measured << ", threshold " << r.threshold << ", " << std::fixed
        << std::setprecision(2) << r.seconds << std::defaultfloat << std::setprecision(6) << " s\n"
        << "         " << r.detail << "\n";
  }
  out << passed << "/" << results.size() << " checks passed\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential sums over an integral basis: equivalence, images and example checks", "bohr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bohr 0.1.0");

  Tolerances tol;
  SamplerFlags sampler;
  OutputFlags output;
  bool override_strip = false;
  double sigma = 0.0;

  std::string path_a, path_b;
  auto* check = app.add_subcommand("check-equiv", "Decide whether two sums are equivalent");
  check->add_option("a", path_a, "First sum (JSON)")->required();
  check->add_option("b", path_b, "Second sum (JSON)")->required();
  check->add_option("--tol-modulus", tol.modulus, "Relative modulus tolerance");
  check->add_option("--tol-phase", tol.phase, "Phase tolerance per unit kernel norm");

  auto* image = app.add_subcommand("image", "Sample the auxiliary-function image at one sigma");
  image->add_option("sum", path_a, "Sum (JSON)")->required();
  image->add_option("--sigma", sigma, "Real part sigma0")->required();
  image->add_flag("--override-strip", override_strip, "Allow sigma outside the strip");
  add_sampler_flags(*image, sampler);
  add_output_flags(*image, output);

  std::string range_text;
  bool compact = false;
  auto* union_image = app.add_subcommand("union-image", "Sample the union of images over a sigma range");
  union_image->add_option("sum", path_a, "Sum (JSON)")->required();
  union_image->add_option("--sigma-range", range_text, "lo:hi[:count]; count defaults to 25 per unit length")
      ->required();
  union_image->add_flag("--compact", compact, "Include the endpoints");
  add_sampler_flags(*union_image, sampler);
  add_output_flags(*union_image, output);

  std::vector<std::int64_t> degrees;
  std::string sum_out;
  auto* bf = app.add_subcommand("bf-approx", "Bochner-Fejer polynomial of a sum");
  bf->add_option("sum", path_a, "Sum (JSON)")->required();
  bf->add_option("--degrees", degrees, "One positive degree per basis element")->required()->delimiter(',');
  bf->add_option("--out", sum_out, "Output file (default: stdout)");

  std::string report = "text";
  VerificationOptions verify_opts;
  auto* verify = app.add_subcommand("verify-examples", "Run the built-in acceptance checks");
  verify->add_option("--report", report, "Report format")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--fill-tolerance", verify_opts.fill_tolerance, "Disk-fill probe tolerance")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_opts.seed, "Seed for the randomized checks");
  verify->add_option("--out", sum_out, "Also write the JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const StripPolicy policy = override_strip ? StripPolicy::allow_outside : StripPolicy::enforce;
  try {
    if (*check) {
      const auto [a, b] = co_express(load_sum(path_a), load_sum(path_b));
      const EquivalenceVerdict v = check_equivalence(a, b, tol);
      out << to_json(v) << "\n";
      return v.equivalent() ? kSuccess : kNegative;
    }
    if (*image) {
      const ImageCloud cloud = sample_image(load_sum(path_a), sigma, sampler.make(), {}, policy);
      write_cloud(cloud, output, out);
      print_summary(cloud, output.path.empty() ? err : out);
      return kSuccess;
    }
    if (*union_image) {
      const ImageCloud cloud =
          sample_union(load_sum(path_a), parse_sigma_range(range_text, compact), sampler.make());
      write_cloud(cloud, output, out);
      print_summary(cloud, output.path.empty() ? err : out);
      return kSuccess;
    }
    if (*bf) {
      const std::string text = to_json(bochner_fejer(load_sum(path_a), degrees)) + "\n";
      if (sum_out.empty()) {
        out << text;
      } else {
        std::ofstream file(sum_out, std::ios::binary);
        if (!file) throw UsageError("cannot write " + sum_out);
        file << text;
      }
      return kSuccess;
    }
    const std::vector<CheckResult> results = run_acceptance_suite(verify_opts);
    const nlohmann::json doc = report_json(results);
    if (report == "json") out << doc.dump(2) << "\n";
    else print_table(results, out);
    if (!sum_out.empty()) {
      std::ofstream file(sum_out, std::ios::binary);
      if (!file) throw UsageError("cannot write " + sum_out);
      file << doc.dump(2) << "\n";
    }
    return doc.at("passed").get<bool>() ? kSuccess : kNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace bohr::cli
