// Command-line front end: dual complements, separation tests, star-product
// sweeps, series operations and the cross-validation suites.

#include <cstdlib>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "hadstar/dual.hpp"
#include "hadstar/errors.hpp"
#include "hadstar/io.hpp"
#include "hadstar/separation.hpp"
#include "hadstar/series.hpp"
#include "hadstar/star.hpp"
#include "hadstar/verify.hpp"

namespace {

using namespace hadstar;

constexpr int kExitOk = 0;
constexpr int kExitUndetermined = 1;
constexpr int kExitInvalid = 2;

int env_max_refine() {
  if (const char* v = std::getenv("HD_MAX_REFINE")) {
    try {
      return std::clamp(std::stoi(v), 0, 12);
    } catch (...) {
      throw invalid_parameter("HD_MAX_REFINE must be an integer");
    }
  }
  return 4;
}

void check_grid_size(int n) {
  if (n < 16 || n > 4096 || (n & (n - 1)) != 0) {
    throw invalid_parameter("grid size must be a power of two between 16 and 4096");
  }
}

// Inputs may repeat (d and g are often the same file); every output must be
// distinct from the other outputs and from every input.
void check_distinct_paths(const std::vector<std::string>& inputs,
                          const std::vector<std::string>& outputs) {
  std::set<std::string> seen(inputs.begin(), inputs.end());
  for (const auto& p : outputs) {
    if (p.empty()) continue;
    if (!seen.insert(p).second) throw invalid_parameter("file paths must be distinct: " + p);
  }
}

struct Options {
  // shared
  int threads = 1;
  // dual
  std::string dual_domain, dual_out;
  int dual_samples = 257;
  // separates
  std::string sep_domain, sep_z, sep_cert;
  double smin = 0.0, smax = 0.0;
  bool has_smin = false, has_smax = false;
  int ns = 256, ntheta = 256;
  // hstar / star
  std::string star_d, star_g, star_out, star_svg;
  int grid = 256;
  // series
  std::string ser_f, ser_g, ser_out, ser_xi, ser_z, ser_center = "0";
  int ser_cap = 16, ser_nodes = 64;
  double ser_rho = 0.0, ser_radius = 1.0;
  // verify
  std::string verify_suite = "all", verify_report;
  std::uint64_t verify_seed = 20240701;
  int verify_trials = 50;
  int verify_grid = 256;
  double verify_shadow_tol = kShadowTol;
  double verify_rel_tol = kRelTol;
};

int run_dual(const Options& o) {
  check_distinct_paths({o.dual_domain}, {o.dual_out});
  Domain2 d = load_domain_json(o.dual_domain);
  auto pts = dual_boundary(d, o.dual_samples);
  write_file(o.dual_out, dual_csv(pts));
  std::cout << "dual boundary: " << pts.size() << " points -> " << o.dual_out << "\n";
  return kExitOk;
}

int run_separates(const Options& o) {
  check_distinct_paths({o.sep_domain}, {o.sep_cert});
  Domain2 d = load_domain_json(o.sep_domain);
  C2 z = parse_c2(o.sep_z);

  check_grid_size(o.ns);
  check_grid_size(o.ntheta);
  LogPolarGrid grid;
  grid.ns = o.ns;
  grid.ntheta = o.ntheta;
  grid.max_refinements = env_max_refine();
  if (o.has_smin != o.has_smax) {
    throw invalid_parameter("provide both --smin and --smax or neither");
  }
  if (o.has_smin) {
    grid.s_min = o.smin;
    grid.s_max = o.smax;
  } else {
    auto [lo, hi] = auto_range(d, z);
    grid.s_min = lo;
    grid.s_max = hi;
  }

  SeparationVerdict v = separates(d, z, grid);
  const char* name = v.kind == SeparationVerdict::Kind::Separated
                         ? "Separated"
                         : (v.kind == SeparationVerdict::Kind::NotSeparated ? "NotSeparated"
                                                                            : "Undetermined");
  std::cout << name << " range=[" << fmt_double(grid.s_min) << "," << fmt_double(grid.s_max)
            << "] certificate_vertices=" << v.certificate.size() << "\n";
  if (!o.sep_cert.empty() && !v.certificate.empty()) {
    write_file(o.sep_cert, certificate_csv(v.certificate));
  }
  return v.kind == SeparationVerdict::Kind::Undetermined ? kExitUndetermined : kExitOk;
}

int run_hstar(const Options& o) {
  check_grid_size(o.grid);
  check_distinct_paths({o.star_g}, {o.star_out, o.star_svg});
  Domain2 g = load_domain_json(o.star_g);
  StarResult r = h_star_shadow(g, o.grid, o.threads, env_max_refine());
  write_file(o.star_out, mask_csv(r.mask));
  if (!o.star_svg.empty()) write_file(o.star_svg, mask_svg(r.mask));
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "h-star sweep " << o.grid << "x" << o.grid << " window=["
            << fmt_double(r.mask.x1) << "," << fmt_double(r.mask.y1) << "] -> " << o.star_out
            << "\n";
  return kExitOk;
}

int run_star(const Options& o) {
  check_grid_size(o.grid);
  check_distinct_paths({o.star_d, o.star_g}, {o.star_out, o.star_svg});
  Domain2 d = load_domain_json(o.star_d);
  Domain2 g = load_domain_json(o.star_g);
  StarResult r = star_shadow(d, g, o.grid, o.threads, 257, env_max_refine());
  write_file(o.star_out, mask_csv(r.mask));
  if (!o.star_svg.empty()) write_file(o.star_svg, mask_svg(r.mask));
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "star sweep " << o.grid << "x" << o.grid << " window=[" << fmt_double(r.mask.x1)
            << "," << fmt_double(r.mask.y1) << "] -> " << o.star_out << "\n";
  return kExitOk;
}

int run_series_hadamard(const Options& o) {
  check_distinct_paths({o.ser_f, o.ser_g}, {o.ser_out});
  auto f = parse_series_csv(read_file(o.ser_f));
  auto g = parse_series_csv(read_file(o.ser_g));
  write_file(o.ser_out, series_csv(hadamard(f, g)));
  std::cout << "hadamard -> " << o.ser_out << "\n";
  return kExitOk;
}

int run_series_hxi(const Options& o) {
  C2 xi = parse_c2(o.ser_xi);
  write_file(o.ser_out, series_csv(h_xi_coeffs(xi, o.ser_cap)));
  std::cout << "hxi cap=" << o.ser_cap << " -> " << o.ser_out << "\n";
  return kExitOk;
}

int run_series_lambda(const Options& o) {
  check_distinct_paths({o.ser_f}, {o.ser_out});
  auto f = parse_series_csv(read_file(o.ser_f));
  write_file(o.ser_out, series_csv(lambda_op(f)));
  std::cout << "lambda -> " << o.ser_out << "\n";
  return kExitOk;
}

int run_series_torus(const Options& o) {
  check_distinct_paths({o.ser_f, o.ser_g}, {});
  auto f = parse_series_csv(read_file(o.ser_f));
  auto g = parse_series_csv(read_file(o.ser_g));
  if (!(o.ser_rho > 0.0)) throw invalid_parameter("torus: --rho must be positive");
  C2 z = parse_c2(o.ser_z);
  QuadratureResult q = torus_hadamard(evaluator(f), evaluator(g), o.ser_rho, z, o.ser_nodes);
  std::cout << fmt_double(q.value.real()) << "," << fmt_double(q.value.imag())
            << " convergence=" << fmt_double(q.convergence) << "\n";
  return kExitOk;
}

int run_series_contour(const Options& o) {
  auto f = parse_series_csv(read_file(o.ser_f));
  C2 z = parse_c2(o.ser_z);
  Complex center = parse_complex(o.ser_center);
  Complex v = contour_h_star(f, z, ContourSpec::circle(center, o.ser_radius, o.ser_nodes));
  std::cout << fmt_double(v.real()) << "," << fmt_double(v.imag()) << "\n";
  return kExitOk;
}

int run_verify(const Options& o) {
  check_grid_size(o.verify_grid);
  std::vector<Report> reports;
  if (o.verify_suite == "hstar" || o.verify_suite == "all") {
    reports.push_back(run_suite_hstar(o.verify_grid, o.verify_shadow_tol));
  }
  if (o.verify_suite == "contour" || o.verify_suite == "all") {
    reports.push_back(run_suite_contour(o.verify_trials, o.verify_seed, o.verify_rel_tol));
  }
  if (o.verify_suite == "union" || o.verify_suite == "all") {
    reports.push_back(run_suite_union(std::min(o.verify_grid, 128), 6));
  }
  if (reports.empty()) throw invalid_parameter("unknown suite: " + o.verify_suite);

  bool all_ok = true;
  std::string combined;
  for (auto& r : reports) {
    r.seed = o.verify_seed;
    all_ok = all_ok && r.ok();
    combined += report_json(r);
    std::cout << "suite " << r.suite << ": " << (r.ok() ? "ok" : "FAILED") << " ("
              << r.passed() << " passed, " << r.failed() << " failed)\n";
  }
  if (!o.verify_report.empty()) write_file(o.verify_report, combined);
  return all_ok ? kExitOk : kExitUndetermined;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hadamard star-products of domains in C^2"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "cap on internal parallelism")->capture_default_str();

  auto* dual = app.add_subcommand("dual", "sample the dual complement boundary");
  dual->add_option("--domain", o.dual_domain, "domain json")->required();
  dual->add_option("--samples", o.dual_samples)->capture_default_str();
  dual->add_option("--out", o.dual_out, "csv output")->required();

  auto* sep = app.add_subcommand("separates", "0/infinity separation test");
  sep->add_option("--domain", o.sep_domain)->required();
  sep->add_option("--z", o.sep_z, "point, e.g. \"0.6,0.6\" or \"1+2i,0.5i\"")->required();
  sep->add_option("--smin", o.smin)->trigger_on_parse()->each([&](const std::string&) {
    o.has_smin = true;
  });
  sep->add_option("--smax", o.smax)->trigger_on_parse()->each([&](const std::string&) {
    o.has_smax = true;
  });
  sep->add_option("--ns", o.ns)->capture_default_str();
  sep->add_option("--ntheta", o.ntheta)->capture_default_str();
  sep->add_option("--cert", o.sep_cert, "write certificate polyline csv");

  auto* hstar = app.add_subcommand("hstar", "extremal-multiplier domain sweep");
  hstar->add_option("--g", o.star_g)->required();
  hstar->add_option("--grid", o.grid)->capture_default_str();
  hstar->add_option("--out", o.star_out)->required();
  hstar->add_option("--svg", o.star_svg);

  auto* star = app.add_subcommand("star", "star product sweep");
  star->add_option("--d", o.star_d)->required();
  star->add_option("--g", o.star_g)->required();
  star->add_option("--grid", o.grid)->capture_default_str();
  star->add_option("--out", o.star_out)->required();
  star->add_option("--svg", o.star_svg);

  auto* series = app.add_subcommand("series", "series engine");
  series->require_subcommand(1);
  auto* s_had = series->add_subcommand("hadamard", "coefficientwise product");
  s_had->add_option("--f", o.ser_f)->required();
  s_had->add_option("--g", o.ser_g)->required();
  s_had->add_option("--out", o.ser_out)->required();
  auto* s_hxi = series->add_subcommand("hxi", "multiplier coefficients");
  s_hxi->add_option("--xi", o.ser_xi)->required();
  s_hxi->add_option("--cap", o.ser_cap)->capture_default_str();
  s_hxi->add_option("--out", o.ser_out)->required();
  auto* s_lam = series->add_subcommand("lambda", "f + z1 df/dz1");
  s_lam->add_option("--f", o.ser_f)->required();
  s_lam->add_option("--out", o.ser_out)->required();
  auto* s_tor = series->add_subcommand("torus", "torus quadrature product");
  s_tor->add_option("--f", o.ser_f)->required();
  s_tor->add_option("--g", o.ser_g)->required();
  s_tor->add_option("--rho", o.ser_rho)->required();
  s_tor->add_option("--z", o.ser_z)->required();
  s_tor->add_option("--nodes", o.ser_nodes)->capture_default_str();
  auto* s_con = series->add_subcommand("contour", "contour continuation value");
  s_con->add_option("--f", o.ser_f)->required();
  s_con->add_option("--z", o.ser_z)->required();
  s_con->add_option("--center", o.ser_center)->capture_default_str();
  s_con->add_option("--radius", o.ser_radius)->capture_default_str();
  s_con->add_option("--nodes", o.ser_nodes)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "cross-validation suites");
  verify->add_option("--suite", o.verify_suite, "hstar|contour|union|all")
      ->capture_default_str();
  verify->add_option("--seed", o.verify_seed)->capture_default_str();
  verify->add_option("--trials", o.verify_trials)->capture_default_str();
  verify->add_option("--grid", o.verify_grid)->capture_default_str();
  verify->add_option("--report", o.verify_report, "json report output");
  verify->add_option("--shadow-tol", o.verify_shadow_tol, "shadow comparison tolerance")
      ->capture_default_str();
  verify->add_option("--rel-tol", o.verify_rel_tol, "relative identity tolerance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (dual->parsed()) return run_dual(o);
    if (sep->parsed()) return run_separates(o);
    if (hstar->parsed()) return run_hstar(o);
    if (star->parsed()) return run_star(o);
    if (series->parsed()) {
      if (s_had->parsed()) return run_series_hadamard(o);
      if (s_hxi->parsed()) return run_series_hxi(o);
      if (s_lam->parsed()) return run_series_lambda(o);
      if (s_tor->parsed()) return run_series_torus(o);
      if (s_con->parsed()) return run_series_contour(o);
    }
    if (verify->parsed()) return run_verify(o);
    std::cerr << "no subcommand\n";
    return kExitInvalid;
  } catch (const quadrature_failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUndetermined;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
