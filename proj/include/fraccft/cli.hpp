#ifndef FRACCFT_CLI_HPP
#define FRACCFT_CLI_HPP

// Subcommand bodies for the fracclifft tool. Each takes a parsed RunConfig,
// writes its table or report to `out`, diagnostics to `err`, and returns the
// process exit code.

#include <bit>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaussian_poly.hpp"
#include "kernel.hpp"
#include "run_config.hpp"
#include "transform.hpp"
#include "verification.hpp"

namespace fraccft::cli {

inline Parity parse_parity(const std::string& s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  throw domain_error("parity must be 'even' or 'odd', got '" + s + "'");
}

inline Vector to_vector(const std::vector<double>& v, int m, const char* what) {
  if (static_cast<int>(v.size()) != m)
    throw dimension_mismatch(std::string(what) + " has " + std::to_string(v.size()) + " components, expected " +
                             std::to_string(m));
  Vector r(m);
  for (int i = 0; i < m; ++i) r[i] = v[i];
  return r;
}

/// Output points: explicit list, else N random points in [y_min, y_max]^m, else a
/// resolution x resolution grid in the e1-e2 plane.
inline std::vector<Vector> output_points(const RunConfig& c) {
  std::vector<Vector> ys;
  if (!c.y_points.empty()) {
    for (const auto& p : c.y_points) ys.push_back(to_vector(p, c.m, "output point"));
    return ys;
  }
  if (!(c.y_max >= c.y_min)) throw domain_error("y range is empty");
  if (c.random_points > 0) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> u(c.y_min, c.y_max);
    for (int i = 0; i < c.random_points; ++i) {
      Vector y(c.m);
      for (int d = 0; d < c.m; ++d) y[d] = u(rng);
      ys.push_back(y);
    }
    return ys;
  }
  if (c.resolution < 1) throw domain_error("resolution must be >= 1");
  for (int a = 0; a < c.resolution; ++a)
    for (int b = 0; b < c.resolution; ++b) {
      auto at = [&](int i) {
        return c.resolution == 1 ? c.y_min : c.y_min + (c.y_max - c.y_min) * i / (c.resolution - 1.0);
      };
      Vector y(c.m);
      y[0] = at(a);
      y[1] = at(b);
      ys.push_back(y);
    }
  return ys;
}

inline std::string blade_name(blade_t b) {
  if (b == 0) return "s";
  std::string s = "e";
  for (int i = 0; (blade_t{1} << i) <= b; ++i)
    if (b & (blade_t{1} << i)) s += std::to_string(i + 1);
  return s;
}

/// Kernel blades: the scalar and every e_ij.
inline std::vector<blade_t> kernel_blades(int m) {
  std::vector<blade_t> r{0};
  for (blade_t b = 1; b < (blade_t{1} << m); ++b)
    if (std::popcount(b) == 2) r.push_back(b);
  return r;
}

inline std::vector<blade_t> all_blades(int m) {
  std::vector<blade_t> r;
  for (blade_t b = 0; b < (blade_t{1} << m); ++b) r.push_back(b);
  return r;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  CsvWriter& field(const std::string& s) {
    sep();
    os_ << s;
    return *this;
  }
  CsvWriter& field(double v) { return field(format_number(v)); }
  CsvWriter& field(complex v) { return field(v.real()).field(v.imag()); }
  void end() {
    os_ << '\n';
    first_ = true;
  }

 private:
  void sep() {
    if (!first_) os_ << ',';
    first_ = false;
  }
  std::ostream& os_;
  bool first_ = true;
};

// ---- kernel ------------------------------------------------------------------------

inline int cmd_kernel(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.route != "series" && c.route != "closed" && c.route != "both")
    throw domain_error("route must be series, closed or both");
  if (c.route != "series" && c.m % 2 != 0) throw unsupported("closed form requires even m");
  const KernelParams p(c.alpha, c.beta, c.m, c.truncation);
  Vector x(c.m);
  if (c.x.empty())
    x[0] = 1.0;
  else
    x = to_vector(c.x, c.m, "x");
  const auto ys = output_points(c);
  const bool both = c.route == "both";

  auto series_at = [&](const Vector& y) {
    KernelParams ps = p;
    if (both && ps.truncation == 0) ps.truncation = std::max(60, default_truncation(invariants(x, y, p).z_tilde));
    return kernel_series(x, y, ps).assembled();
  };

  std::vector<Multivector> values(ys.size(), Multivector(c.m));
  std::vector<double> disc(ys.size(), 0.0);
  parallel_for(ys.size(), resolve_threads(c.threads), [&](std::size_t i) {
    if (c.route == "series") {
      values[i] = series_at(ys[i]);
      return;
    }
    values[i] = evaluate_kernel(x, ys[i], p, KernelRoute::closed).assembled();
    if (both) disc[i] = (series_at(ys[i]) - values[i]).norm() / std::max(1e-300, values[i].norm());
  });
  double max_disc = 0.0;
  for (double d : disc) max_disc = std::max(max_disc, d);

  if (c.format == "json") {
    nlohmann::json pts = nlohmann::json::array();
    for (std::size_t i = 0; i < ys.size(); ++i) {
      nlohmann::json e = {{"y", ys[i].components()}, {"kernel", values[i]}};
      if (both) e["discrepancy"] = disc[i];
      pts.push_back(e);
    }
    nlohmann::json doc = {{"params", p}, {"x", x.components()}, {"route", c.route}, {"points", pts}};
    if (both) doc["max_discrepancy"] = max_disc;
    out << doc.dump(2) << '\n';
  } else {
    CsvWriter w(out);
    for (int d = 0; d < c.m; ++d) w.field("y" + std::to_string(d + 1));
    for (blade_t b : kernel_blades(c.m)) w.field(blade_name(b) + "_re").field(blade_name(b) + "_im");
    if (both) w.field("discrepancy");
    w.end();
    for (std::size_t i = 0; i < ys.size(); ++i) {
      for (int d = 0; d < c.m; ++d) w.field(ys[i][d]);
      for (blade_t b : kernel_blades(c.m)) w.field(values[i][b]);
      if (both) w.field(disc[i]);
      w.end();
    }
  }
  if (both) err << "max discrepancy " << format_number(max_disc) << '\n';
  return 0;
}

// ---- transform ---------------------------------------------------------------------

/// Fold a transform manifest {params, quadrature, function, points} into the config.
inline RunConfig apply_manifest(RunConfig c, const nlohmann::json& j) {
  if (j.contains("params")) {
    const auto& p = j["params"];
    c.m = p.value("m", c.m);
    c.alpha = p.contains("alpha_pi") ? std::numbers::pi * p["alpha_pi"].get<double>() : p.value("alpha", c.alpha);
    c.beta = p.contains("beta_pi") ? std::numbers::pi * p["beta_pi"].get<double>() : p.value("beta", c.beta);
  }
  if (j.contains("quadrature")) {
    const auto& q = j["quadrature"];
    c.box_radius = q.value("box_radius", c.box_radius);
    c.nodes_per_axis = q.value("nodes_per_axis", c.nodes_per_axis);
    c.threads = q.value("threads", c.threads);
    c.resolution_tolerance = q.value("resolution_tolerance", c.resolution_tolerance);
  }
  if (j.contains("function")) {
    const auto& f = j["function"];
    const std::string kind = f.value("kind", "psi");
    if (kind == "psi") {
      c.parity = f.value("parity", c.parity);
      c.j = f.value("j", c.j);
      c.k = f.value("k", c.k);
      c.companion = f.value("companion", c.companion);
    } else if (kind != "gaussian_polynomial") {
      throw domain_error("function kind must be psi or gaussian_polynomial");
    }
  }
  if (j.contains("points")) c.y_points = j["points"].get<std::vector<std::vector<double>>>();
  return c;
}

inline BasisExpansion named_basis(const RunConfig& c) {
  const auto mk = monogenic_m2(c.k, c.m);
  BasisExpansion e(c.m);
  e.add(parse_parity(c.parity), c.j, c.k, c.companion ? mk.second : mk.first);
  return e;
}

/// <a, b> / <a, a> over blade coefficients, NaN if a vanishes.
inline complex projection_ratio(const Multivector& a, const Multivector& b) {
  complex num = 0.0;
  double den = 0.0;
  for (blade_t i = 0; i < a.size(); ++i) {
    num += std::conj(a[i]) * b[i];
    den += std::norm(a[i]);
  }
  if (den < 1e-28) return {NAN, NAN};
  return num / den;
}

inline int cmd_transform(RunConfig c, std::ostream& out, std::ostream& err) {
  std::optional<GaussianPolynomial> poly;
  if (!c.input.empty()) {
    std::ifstream in(c.input);
    if (!in) throw domain_error("cannot open manifest '" + c.input + "'");
    const auto j = nlohmann::json::parse(in);
    c = apply_manifest(c, j);
    if (j.contains("function") && j["function"].value("kind", "psi") == "gaussian_polynomial")
      poly = GaussianPolynomial(j["function"].at("poly").get<CliffordPolynomial>());
  }
  if (c.method != "quadrature" && c.method != "radial") throw domain_error("method must be quadrature or radial");
  const auto ys = output_points(c);

  std::optional<BasisExpansion> basis;
  TargetFunction f;
  if (poly) {
    if (poly->dim() != c.m) throw dimension_mismatch("manifest polynomial dimension differs from m");
    f = TargetFunction::from_polynomial(*poly);
  } else {
    basis = named_basis(c);
    f = TargetFunction::from_basis(*basis);
  }

  QuadratureSpec q;
  q.box_radius = c.box_radius;
  q.nodes_per_axis = c.nodes_per_axis;
  q.threads = c.threads;
  q.resolution_tolerance = c.resolution_tolerance;

  std::vector<Multivector> values(ys.size(), Multivector(c.m));
  std::vector<bool> flagged(ys.size(), false);
  std::string path;
  if (detail::exceptional_angle(c.alpha)) {
    if (!basis) throw unsupported("alpha in {0, +-pi} needs a named basis function");
    path = std::abs(c.alpha) > 1.0 ? "parity" : "gamma_phase";
    for (std::size_t i = 0; i < ys.size(); ++i) values[i] = exceptional_operator(*basis, c.alpha, c.beta, ys[i]);
  } else if (c.method == "radial") {
    if (!basis) throw unsupported("the radial method needs a named basis function");
    path = "radial";
    const KernelParams p(c.alpha, c.beta, c.m);
    const auto& t = basis->terms()[0];
    const auto profile = psi_radial_profile(t.parity, t.j, t.k, c.m);
    parallel_for(ys.size(), resolve_threads(c.threads),
                 [&](std::size_t i) { values[i] = radial_transform(profile, t.mk, t.k, t.parity, p, ys[i]); });
  } else {
    path = "quadrature";
    const KernelParams p(c.alpha, c.beta, c.m);
    q.validate(c.m);
    values = fractional_cft_batch({f}, p, ys, q)[0];
    if (q.resolution_tolerance > 0.0) {
      QuadratureSpec finer = q;
      finer.nodes_per_axis = static_cast<int>(std::ceil(1.5 * q.resolved_nodes(c.m)));
      const auto fine = fractional_cft_batch({f}, p, ys, finer)[0];
      for (std::size_t i = 0; i < ys.size(); ++i) flagged[i] = (fine[i] - values[i]).norm() > q.resolution_tolerance;
    }
  }
  bool any_flag = false;
  for (bool b : flagged) any_flag = any_flag || b;

  complex expected = NAN;
  std::vector<complex> ratios(ys.size(), complex(NAN, NAN));
  if (basis) {
    const auto& t = basis->terms()[0];
    expected = eigenvalue(t.parity, t.j, t.k, c.alpha, c.beta, c.m);
    for (std::size_t i = 0; i < ys.size(); ++i) ratios[i] = projection_ratio(basis->evaluate(ys[i]), values[i]);
  }

  if (c.format == "json") {
    nlohmann::json pts = nlohmann::json::array();
    for (std::size_t i = 0; i < ys.size(); ++i) {
      nlohmann::json e = {{"y", ys[i].components()}, {"value", values[i]}, {"under_resolved", bool(flagged[i])}};
      if (basis) e["ratio"] = {ratios[i].real(), ratios[i].imag()};
      pts.push_back(e);
    }
    nlohmann::json meta = {{"path", path},
                           {"under_resolved", any_flag},
                           {"box_radius", q.box_radius},
                           {"nodes_per_axis", q.resolved_nodes(c.m)}};
    if (basis) meta["expected_eigenvalue"] = {expected.real(), expected.imag()};
    out << nlohmann::json{{"alpha", c.alpha}, {"beta", c.beta}, {"m", c.m}, {"metadata", meta}, {"points", pts}}.dump(2)
        << '\n';
  } else {
    CsvWriter w(out);
    for (int d = 0; d < c.m; ++d) w.field("y" + std::to_string(d + 1));
    for (blade_t b : all_blades(c.m)) w.field(blade_name(b) + "_re").field(blade_name(b) + "_im");
    if (basis) w.field("ratio_re").field("ratio_im").field("expected_re").field("expected_im");
    w.field("under_resolved");
    w.end();
    for (std::size_t i = 0; i < ys.size(); ++i) {
      for (int d = 0; d < c.m; ++d) w.field(ys[i][d]);
      for (blade_t b : all_blades(c.m)) w.field(values[i][b]);
      if (basis) w.field(ratios[i]).field(expected);
      w.field(flagged[i] ? "1" : "0");
      w.end();
    }
  }
  if (any_flag) err << "warning: quadrature under-resolved at some output points\n";
  return 0;
}

// ---- basis ---------------------------------------------------------------------

inline int cmd_basis(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto e = named_basis(c);
  const auto& t = e.terms()[0];
  const auto psi = e.psi(0);
  nlohmann::json doc = {{"m", c.m},
                        {"parity", to_string(t.parity)},
                        {"j", t.j},
                        {"k", t.k},
                        {"companion", c.companion},
                        {"index", basis_index(t.parity, t.j)},
                        {"hamiltonian_eigenvalue", hamiltonian_eigenvalue(t.parity, t.j, t.k)},
                        {"gamma_eigenvalue", gamma_eigenvalue(t.parity, t.k, c.m)},
                        {"monogenic", t.mk},
                        {"function", psi}};
  const complex ev = eigenvalue(t.parity, t.j, t.k, c.alpha, c.beta, c.m);
  doc["transform_eigenvalue"] = {{"alpha", c.alpha}, {"beta", c.beta}, {"value", {ev.real(), ev.imag()}}};
  out << doc.dump(2) << '\n';
  return 0;
}

// ---- verify --------------------------------------------------------------------

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream&) {
  SuiteConfig s;
  s.seed = c.seed;
  s.only = c.only;
  s.threads = c.threads;
  s.kernel_perturbation = c.kernel_perturbation;
  const auto reports = run_suite(s);
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.pass;
    if (c.format == "json")
      out << nlohmann::json(r).dump() << '\n';
    else
      out << (r.pass ? "PASS " : "FAIL ") << r.name << " residual=" << format_number(r.max_residual)
          << " tolerance=" << format_number(r.tolerance) << '\n';
  }
  return ok ? 0 : 1;
}

inline int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.subcommand == "kernel") return cmd_kernel(c, out, err);
  if (c.subcommand == "transform") return cmd_transform(c, out, err);
  if (c.subcommand == "basis") return cmd_basis(c, out, err);
  if (c.subcommand == "verify") return cmd_verify(c, out, err);
  throw domain_error("unknown subcommand '" + c.subcommand + "'");
}

}  // namespace fraccft::cli

#endif  // FRACCFT_CLI_HPP
