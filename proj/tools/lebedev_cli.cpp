// lebedev: kernels, coefficients, reconstruction, verification and timing
// for the discrete Lebedev index transforms.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <omp.h>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lebedev/error.hpp"
#include "lebedev/kernels.hpp"
#include "lebedev/transforms.hpp"
#include "lebedev/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace lebedev;

constexpr int kReportVersion = 1;

enum Exit : int {
  kOk = 0,
  kVerifyFailed = 1,
  kPartial = 2,
  kUsage = 64,
  kNumeric = 65,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failure at a specific point of a sweep.
struct PointError : std::runtime_error {
  PointError(const std::string& where, const Error& e)
      : std::runtime_error(where + ": " + e.what()), code(e.code()) {}
  ErrorCode code;
};

struct Options {
  std::string family;
  int n = 1;
  int n_max = 8;
  std::vector<double> x;
  std::string x_grid;
  std::string profile;
  std::optional<double> tol_abs;
  std::optional<double> tol_rel;
  std::string suite = "all";
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::string out;
  std::string target = "k_imag";
};

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

QuadratureConfig make_config(const Options& o, QuadratureConfig cfg = {}) {
  if (o.tol_abs) cfg.abs_tol = *o.tol_abs;
  if (o.tol_rel) cfg.rel_tol = *o.tol_rel;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

json config_json(const QuadratureConfig& cfg) {
  return {{"abs_tol", cfg.abs_tol},
          {"rel_tol", cfg.rel_tol},
          {"max_subdivisions", cfg.max_subdivisions},
          {"max_evaluations", cfg.max_evaluations},
          {"decay_cutoff", cfg.decay_cutoff}};
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw UsageError("cannot parse number '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> make_grid(const Options& o) {
  std::vector<double> grid;
  if (!o.x_grid.empty()) {
    if (!o.x.empty()) throw UsageError("give either --x or --x-grid, not both");
    const auto a = o.x_grid.find(':');
    const auto b = a == std::string::npos ? a : o.x_grid.find(':', a + 1);
    if (b == std::string::npos) throw UsageError("--x-grid expects start:stop:count");
    const double start = parse_double(std::string_view(o.x_grid).substr(0, a));
    const double stop = parse_double(std::string_view(o.x_grid).substr(a + 1, b - a - 1));
    const double count_d = parse_double(std::string_view(o.x_grid).substr(b + 1));
    const int count = static_cast<int>(count_d);
    if (count < 1 || count != count_d) throw UsageError("--x-grid count must be a positive integer");
    if (count == 1 && start != stop) throw UsageError("--x-grid with count 1 needs start == stop");
    for (int i = 0; i < count; ++i) {
      grid.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
    }
  } else {
    grid = o.x;
  }
  if (grid.empty()) throw UsageError("no x values given (use --x or --x-grid)");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(std::isfinite(grid[i]) && grid[i] > 0.0)) throw UsageError("x values must be > 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw UsageError("x values must be strictly increasing");
  }
  return grid;
}

KernelFamily transform_family(const std::string& name) {
  if (name == "product") return KernelFamily::ProductKernel;
  if (name == "squared") return KernelFamily::SquaredKernel;
  throw UsageError("--family must be 'product' or 'squared'");
}

PeriodicProfile load_profile(const Options& o) {
  if (o.profile.empty()) throw UsageError("--profile is required");
  auto p = parse_profile(o.profile);
  check_profile(p, o.seed);
  return p;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + o.out + "'");
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_format(const Options& o) {
  if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
}

// Runs fn over the index range in parallel, turning library errors into
// PointError tagged by `where(i)`.
template <class Fn, class Where>
void sweep(std::size_t count, Fn fn, Where where) {
  for_each_index(count, Execution::Parallel, [&](std::size_t i) {
    try {
      fn(i);
    } catch (const Error& e) {
      throw PointError(where(i), e);
    }
  });
}

int cmd_kernel(const Options& o) {
  require_format(o);
  const auto cfg = make_config(o);
  const auto grid = make_grid(o);
  if (o.n < 1 || o.n > kMaxIndex) throw UsageError("--n must be in [1, 200]");
  const std::string& fam = o.family;
  if (fam != "phi" && fam != "psi" && fam != "product" && fam != "squared") {
    throw UsageError("--family must be one of phi, psi, product, squared");
  }
  std::vector<QuadratureResult> rows(grid.size());
  sweep(
      grid.size(),
      [&](std::size_t i) {
        const double x = grid[i];
        if (fam == "phi" || fam == "psi") {
          const auto k = fam == "phi" ? phi_kernel(o.n, x, cfg) : psi_kernel(o.n, x, cfg);
          rows[i] = {k.value, k.error_estimate, k.evaluations, k.converged};
        } else {
          rows[i] = fam == "product" ? product_kernel(o.n, x, cfg) : squared_kernel(o.n, x, cfg);
        }
      },
      [&](std::size_t i) { return "x=" + fmt(grid[i]); });

  bool converged = true;
  for (const auto& r : rows) converged = converged && r.converged;
  if (o.format == "csv") {
    std::string text = "x,value,error_estimate\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      text += fmt(grid[i]) + "," + fmt(rows[i].value) + "," + fmt(rows[i].error_estimate) + "\n";
    }
    emit(o, text);
  } else {
    json j = {{"report_version", kReportVersion}, {"command", "kernel"}, {"family", fam},
              {"n", o.n},                         {"tolerances", config_json(cfg)}};
    j["rows"] = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      j["rows"].push_back({{"x", grid[i]},
                           {"value", rows[i].value},
                           {"error_estimate", rows[i].error_estimate},
                           {"evaluations", rows[i].evaluations},
                           {"converged", rows[i].converged}});
    }
    j["converged"] = converged;
    emit(o, dump(j));
  }
  return converged ? kOk : kPartial;
}

int cmd_coeffs(const Options& o) {
  require_format(o);
  const auto cfg = make_config(o);
  const auto family = transform_family(o.family);
  if (o.n_max < 1 || o.n_max > kMaxIndex) throw UsageError("--n-max must be in [1, 200]");
  const auto p = load_profile(o);
  std::vector<QuadratureResult> rows(static_cast<std::size_t>(o.n_max));
  sweep(
      rows.size(),
      [&](std::size_t i) { rows[i] = coefficient_from_profile(p, static_cast<int>(i) + 1, cfg); },
      [&](std::size_t i) { return "n=" + std::to_string(i + 1); });

  CoefficientSequence c{family, {}};
  bool converged = true;
  for (const auto& r : rows) {
    c.values.push_back(r.value);
    converged = converged && r.converged;
  }
  if (o.format == "csv") {
    std::string text = "n,a_n\n";
    for (int n = 1; n <= c.n_max(); ++n) text += std::to_string(n) + "," + fmt(c[n]) + "\n";
    emit(o, text);
  } else {
    const auto probe = summability_probe(c);
    json j = {{"report_version", kReportVersion},
              {"command", "coeffs"},
              {"family", std::string(to_string(family))},
              {"profile", p.label},
              {"n_max", o.n_max},
              {"tolerances", config_json(cfg)}};
    j["coefficients"] = json::array();
    for (int n = 1; n <= c.n_max(); ++n) {
      const auto& r = rows[static_cast<std::size_t>(n - 1)];
      j["coefficients"].push_back({{"n", n},
                                   {"a_n", r.value},
                                   {"error_estimate", r.error_estimate},
                                   {"converged", r.converged}});
    }
    j["summability"] = {{"weighted_sum", probe.weighted_sum},
                        {"last_terms", probe.last_terms},
                        {"ok", probe.ok}};
    j["converged"] = converged;
    emit(o, dump(j));
  }
  return converged ? kOk : kPartial;
}

int cmd_reconstruct(const Options& o) {
  const auto cfg = make_config(o);
  const auto family = transform_family(o.family);
  if (o.n_max < 1 || o.n_max > kMaxIndex) throw UsageError("--n-max must be in [1, 200]");
  const auto grid = make_grid(o);
  const auto p = load_profile(o);
  const auto report = roundtrip_report(p, family, o.n_max, grid, cfg, Execution::Parallel);
  json j = {{"report_version", kReportVersion},
            {"command", "reconstruct"},
            {"family", std::string(to_string(family))},
            {"profile", p.label},
            {"tolerances", config_json(cfg)},
            {"grid", report.grid},
            {"truth", report.truth},
            {"reconstructed", report.reconstructed},
            {"max_abs_error", report.max_abs_error},
            {"max_rel_error", report.max_rel_error},
            {"terms_used", report.terms_used},
            {"tail_warning", report.tail_warning},
            {"converged", report.converged}};
  emit(o, dump(j));
  return report.converged ? kOk : kPartial;
}

int cmd_verify(const Options& o) {
  std::optional<QuadratureConfig> cfg;
  if (o.tol_abs || o.tol_rel) cfg = make_config(o);
  const auto checks = run_suite(o.suite, cfg ? &*cfg : nullptr, o.seed, Execution::Parallel);
  bool passed = true;
  json list = json::array();
  for (const auto& c : checks) {
    passed = passed && c.passed;
    list.push_back({{"suite", c.suite},
                    {"name", c.name},
                    {"measured", c.measured},
                    {"tolerance", c.tolerance},
                    {"passed", c.passed},
                    {"detail", c.detail}});
  }
  json tolerances = cfg ? config_json(*cfg) : json::object();
  tolerances["source"] = cfg ? "command line" : "suite defaults";
  if (!cfg) {
    tolerances["identities"] = config_json(identity_config());
    tolerances["default"] = config_json(QuadratureConfig{});
  }
  json j = {{"report_version", kReportVersion},
            {"command", "verify"},
            {"suite", o.suite},
            {"seed", o.seed},
            {"tolerances", tolerances},
            {"checks", list},
            {"passed", passed}};
  emit(o, dump(j));
  return passed ? kOk : kVerifyFailed;
}

int cmd_bench(const Options& o) {
  const auto cfg = make_config(o);
  long evaluations = 0;
  long points = 0;
  const auto start = std::chrono::steady_clock::now();
  if (o.target == "k_imag") {
    for (int i = 0; i < 10; ++i) {
      for (int k = 0; k < 100; ++k) {
        const auto r = macdonald_k_imag(0.5 * (i + 1), 0.1 + 0.1 * k, cfg);
        evaluations += r.evaluations;
        ++points;
      }
    }
  } else if (o.target == "phi") {
    std::vector<long> counts(20, 0);
    for_each_index(counts.size(), Execution::Parallel, [&](std::size_t i) {
      for (const auto& k : phi_kernels(8, 0.25 * static_cast<double>(i + 1), cfg)) {
        counts[i] += k.evaluations;
      }
    });
    for (long c : counts) evaluations += c;
    points = 160;
  } else if (o.target == "full_roundtrip") {
    const auto report = roundtrip_report(PeriodicProfile::builtin("sin"),
                                         KernelFamily::ProductKernel, 8,
                                         {0.2, 0.5, 1.0, 2.0, 4.0}, cfg, Execution::Parallel);
    points = static_cast<long>(report.grid.size());
  } else {
    throw UsageError("--target must be one of k_imag, phi, full_roundtrip");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json j = {{"report_version", kReportVersion},
            {"command", "bench"},
            {"target", o.target},
            {"tolerances", config_json(cfg)},
            {"threads", omp_get_max_threads()},
            {"points", points},
            {"evaluations", evaluations},
            {"wall_seconds", seconds}};
  emit(o, dump(j));
  return kOk;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidInterval:
    case ErrorCode::InvalidProfile:
    case ErrorCode::FamilyMismatch:
      return kUsage;
    default:
      return kNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Lebedev index transforms"};
  app.require_subcommand(1);
  Options o;

  auto tolerances = [&](CLI::App* sub) {
    sub->add_option("--tol-abs", o.tol_abs, "Absolute quadrature tolerance");
    sub->add_option("--tol-rel", o.tol_rel, "Relative quadrature tolerance");
    sub->add_option("--out", o.out, "Write output to this file instead of stdout");
  };
  auto grid = [&](CLI::App* sub) {
    sub->add_option("--x", o.x, "Evaluation points")->delimiter(',');
    sub->add_option("--x-grid", o.x_grid, "Evenly spaced points start:stop:count");
  };

  auto* kernel = app.add_subcommand("kernel", "Evaluate phi, psi, product or squared kernels");
  kernel->add_option("--family", o.family, "phi | psi | product | squared")->required();
  kernel->add_option("--n", o.n, "Kernel index");
  kernel->add_option("--format", o.format, "csv | json");
  grid(kernel);
  tolerances(kernel);

  auto* coeffs = app.add_subcommand("coeffs", "Coefficients a_n of a periodic profile");
  coeffs->add_option("--profile", o.profile, "builtin:NAME[:AMP] | fourier:b1,b2,.. | sampled:PATH")
      ->required();
  coeffs->add_option("--family", o.family, "product | squared")->required();
  coeffs->add_option("--n-max", o.n_max, "Number of coefficients");
  coeffs->add_option("--format", o.format, "csv | json");
  coeffs->add_option("--seed", o.seed, "Seed for the profile Lipschitz check");
  tolerances(coeffs);

  auto* reconstruct = app.add_subcommand("reconstruct", "Profile round trip through the inversion series");
  reconstruct->add_option("--profile", o.profile, "Profile specification")->required();
  reconstruct->add_option("--family", o.family, "product | squared")->required();
  reconstruct->add_option("--n-max", o.n_max, "Number of series terms");
  reconstruct->add_option("--seed", o.seed, "Seed for the profile Lipschitz check");
  grid(reconstruct);
  tolerances(reconstruct);

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", o.suite, "identities | biorthogonality | roundtrip | bounds | all");
  verify->add_option("--seed", o.seed, "Seed for randomized checks");
  tolerances(verify);

  auto* bench = app.add_subcommand("bench", "Time a fixed workload");
  bench->add_option("--target", o.target, "k_imag | phi | full_roundtrip");
  tolerances(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*kernel) return cmd_kernel(o);
    if (*coeffs) return cmd_coeffs(o);
    if (*reconstruct) return cmd_reconstruct(o);
    if (*verify) return cmd_verify(o);
    if (*bench) return cmd_bench(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.code);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}
