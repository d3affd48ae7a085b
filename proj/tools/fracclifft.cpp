#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fraccft/cli.hpp"
#include "fraccft/run_config.hpp"

using fraccft::RunConfig;

namespace {

struct AngleFlags {
  std::string alpha_pi, beta_pi, both_pi;
  double alpha = 0.0, beta = 0.0;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;

  void add(CLI::App* sub, RunConfig& c) {
    sub->add_option("--m", c.m, "Dimension m of R^m")->check(CLI::Range(2, 8))->capture_default_str();
    alpha_opt = sub->add_option("--alpha", alpha, "Angle alpha in radians (default pi/2)");
    beta_opt = sub->add_option("--beta", beta, "Angle beta in radians (default pi/2)");
    sub->add_option("--alpha-pi", alpha_pi, "alpha as a fraction of pi, e.g. 1/3")->excludes(alpha_opt);
    sub->add_option("--beta-pi", beta_pi, "beta as a fraction of pi, e.g. -1/4")->excludes(beta_opt);
    sub->add_option("--pi-fraction", both_pi, "Set alpha and beta to this fraction of pi unless given separately");
  }

  void apply(RunConfig& c) const {
    if (!both_pi.empty()) c.alpha = c.beta = std::numbers::pi * fraccft::parse_fraction(both_pi);
    if (*alpha_opt) c.alpha = alpha;
    if (*beta_opt) c.beta = beta;
    if (!alpha_pi.empty()) c.alpha = std::numbers::pi * fraccft::parse_fraction(alpha_pi);
    if (!beta_pi.empty()) c.beta = std::numbers::pi * fraccft::parse_fraction(beta_pi);
  }
};

struct PointFlags {
  std::string x;
  std::vector<std::string> ys;

  void add(CLI::App* sub, RunConfig& c, bool with_x) {
    if (with_x) sub->add_option("--x", x, "Fixed first argument x, comma-separated (default e1)");
    sub->add_option("--y", ys, "Output point, comma-separated; repeat for several");
    sub->add_option("--y-min", c.y_min, "Lower end of the y range")->capture_default_str();
    sub->add_option("--y-max", c.y_max, "Upper end of the y range")->capture_default_str();
    sub->add_option("--resolution", c.resolution, "Grid points per axis in the e1-e2 plane")->capture_default_str();
    sub->add_option("--random", c.random_points, "Use this many random points in [y-min, y-max]^m instead of a grid");
    sub->add_option("--seed", c.seed, "Seed for random points")->capture_default_str();
  }

  void apply(RunConfig& c) const {
    if (!x.empty()) c.x = fraccft::parse_list(x);
    for (const auto& y : ys) c.y_points.push_back(fraccft::parse_list(y));
  }
};

void add_basis_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--parity", c.parity, "Basis parity")->check(CLI::IsMember({"even", "odd"}))->capture_default_str();
  sub->add_option("--j", c.j, "Laguerre index j")->check(CLI::NonNegativeNumber)->capture_default_str();
  sub->add_option("--k", c.k, "Monogenic degree k")->check(CLI::NonNegativeNumber)->capture_default_str();
  sub->add_flag("--companion", c.companion, "Use (x1 - e12 x2)^k e1 instead of (x1 - e12 x2)^k");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Clifford-Fourier transform: kernels, transforms, basis functions and checks"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  bool print_config = false;
  app.add_option("--threads", c.threads, "Worker threads (0: FRACCLIFFT_THREADS, then hardware)");
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("-o,--output", c.output, "Write output to this file instead of stdout");
  app.add_flag("--print-config", print_config, "Print the parsed configuration as JSON and exit");

  AngleFlags kernel_angles, transform_angles, basis_angles;
  PointFlags kernel_points, transform_points;

  auto* kernel = app.add_subcommand("kernel", "Evaluate K_{alpha,beta}(x, y) for a fixed x over output points y");
  kernel_angles.add(kernel, c);
  kernel_points.add(kernel, c, true);
  kernel->add_option("--route", c.route, "series, closed or both (both adds a discrepancy column)")
      ->check(CLI::IsMember({"series", "closed", "both"}))
      ->capture_default_str();
  kernel->add_option("--truncation", c.truncation, "Series truncation order (0: automatic)");

  auto* transform = app.add_subcommand("transform", "Apply F_{alpha,beta} to a basis function or a manifest");
  transform_angles.add(transform, c);
  transform_points.add(transform, c, false);
  add_basis_flags(transform, c);
  transform->add_option("--manifest", c.input, "JSON manifest {params, quadrature, function, points}")
      ->check(CLI::ExistingFile);
  transform->add_option("--method", c.method, "quadrature or radial")
      ->check(CLI::IsMember({"quadrature", "radial"}))
      ->capture_default_str();
  transform->add_option("--box-radius", c.box_radius, "Quadrature box half-width R")->capture_default_str();
  transform->add_option("--nodes", c.nodes_per_axis, "Gauss-Legendre nodes per axis (0: default for m)");
  transform->add_option("--resolution-tolerance", c.resolution_tolerance,
                        "Re-run with 1.5x nodes and flag points that move by more than this");

  auto* basis = app.add_subcommand("basis", "Build a basis function psi and report its eigenvalues as JSON");
  basis_angles.add(basis, c);
  add_basis_flags(basis, c);

  auto* verify = app.add_subcommand("verify", "Run the residual checks; exit status 0 iff all pass");
  bool json_lines = false;
  verify->add_option("--only", c.only, "Run only checks whose name starts with this");
  verify->add_option("--seed", c.seed, "Seed for sampled parameters and points")->capture_default_str();
  verify->add_flag("--json", json_lines, "Emit one JSON report per line");
  verify->add_option("--kernel-perturbation", c.kernel_perturbation,
                     "Relative perturbation of the series kernel in the route check (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*kernel) {
      c.subcommand = "kernel";
      kernel_angles.apply(c);
      kernel_points.apply(c);
    } else if (*transform) {
      c.subcommand = "transform";
      transform_angles.apply(c);
      transform_points.apply(c);
    } else if (*basis) {
      c.subcommand = "basis";
      basis_angles.apply(c);
    } else {
      c.subcommand = "verify";
      if (json_lines) c.format = "json";
    }

    if (print_config) {
      std::cout << nlohmann::json(c).dump(2) << '\n';
      return 0;
    }
    if (c.output.empty()) return fraccft::cli::dispatch(c, std::cout, std::cerr);
    std::ofstream out(c.output);
    if (!out) throw fraccft::domain_error("cannot open '" + c.output + "' for writing");
    return fraccft::cli::dispatch(c, out, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
