#ifndef FRACCFT_RUN_CONFIG_HPP
#define FRACCFT_RUN_CONFIG_HPP

#include <charconv>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"

namespace fraccft {

/// Everything a CLI invocation needs; subcommands read the fields they use.
struct RunConfig {
  std::string subcommand;

  // kernel parameters
  int m = 2;
  double alpha = std::numbers::pi / 2;
  double beta = std::numbers::pi / 2;
  int truncation = 0;
  std::string route = "closed";  // series | closed | both

  // quadrature
  double box_radius = 8.0;
  int nodes_per_axis = 0;
  int threads = 0;
  double resolution_tolerance = 0.0;
  std::string method = "quadrature";  // quadrature | radial

  // basis function
  std::string parity = "even";
  int j = 0;
  int k = 0;
  bool companion = false;

  // points: kernel grid uses x with a y grid or random y; transform uses explicit y points or random ones
  std::vector<double> x;
  std::vector<std::vector<double>> y_points;
  double y_min = -2.0;
  double y_max = 2.0;
  int resolution = 5;
  int random_points = 0;

  std::uint64_t seed = 20240101;
  std::string only;
  double kernel_perturbation = 0.0;
  std::string format = "csv";  // csv | json
  std::string input;
  std::string output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RunConfig, subcommand, m, alpha, beta, truncation, route, box_radius,
                                                nodes_per_axis, threads, resolution_tolerance, method, parity, j, k,
                                                companion, x, y_points, y_min, y_max, resolution, random_points, seed,
                                                only, kernel_perturbation, format, input, output)

/// "p/q", "p" or a decimal, as a real number.
inline double parse_fraction(const std::string& s) {
  auto parse = [&](std::string_view t) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
      throw domain_error("cannot parse number '" + std::string(t) + "'");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse(s);
  const double den = parse(std::string_view(s).substr(slash + 1));
  if (den == 0.0) throw domain_error("zero denominator in '" + s + "'");
  return parse(std::string_view(s).substr(0, slash)) / den;
}

/// Comma-separated reals.
inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string::npos ? s.size() : comma;
    out.push_back(parse_fraction(s.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Locale-independent text with 17 significant digits; -0 prints as 0.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

}  // namespace fraccft

#endif  // FRACCFT_RUN_CONFIG_HPP
