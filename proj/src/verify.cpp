#include "hadstar/verify.hpp"

#include <algorithm>
#include <cmath>

#include "hadstar/errors.hpp"
#include "hadstar/star.hpp"

namespace hadstar {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::uint64_t Rng::next() {
  // splitmix64; stable across platforms
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t x = state_;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double Rng::unit() { return double(next() >> 11) * 0x1.0p-53; }

double Rng::range(double lo, double hi) { return lo + (hi - lo) * unit(); }

Complex Rng::disc(double radius) {
  double r = radius * std::sqrt(unit());
  double phi = 2.0 * kPi * unit();
  return std::polar(r, phi);
}

int Report::passed() const {
  int n = 0;
  for (const auto& c : cases)
    if (!c.negative_control && c.pass) ++n;
  return n;
}

int Report::failed() const {
  int n = 0;
  for (const auto& c : cases)
    if (!c.negative_control && !c.pass) ++n;
  return n;
}

bool Report::ok() const {
  bool has_control = false;
  for (const auto& c : cases) {
    if (c.negative_control) {
      has_control = true;
      if (c.pass) return false;  // a designed-to-fail case passed
    } else if (!c.pass) {
      return false;
    }
  }
  return has_control || !cases.empty();
}

CaseResult make_case(std::string inputs, double predicted, double observed, double tolerance,
                     bool negative_control) {
  CaseResult c;
  c.inputs = std::move(inputs);
  c.predicted = predicted;
  c.observed = observed;
  c.tolerance = tolerance;
  c.pass = std::abs(predicted - observed) <= tolerance;
  c.negative_control = negative_control;
  return c;
}

ShadowDistance shadow_distance_detail(const Shadow& a, const Shadow& b, int grid_n, int rays) {
  if (!a.bounded() || !b.bounded()) {
    throw invalid_parameter("shadow_distance: shadows must be bounded");
  }
  if (grid_n < 2) throw invalid_parameter("shadow_distance: grid too small");
  const double X = std::max(a.xmax(), b.xmax());
  const double Y = std::max(a.ymax(), b.ymax());

  long mismatch = 0;
  for (int j = 0; j < grid_n; ++j) {
    double y = (double(j) + 0.5) * Y / grid_n;
    for (int i = 0; i < grid_n; ++i) {
      double x = (double(i) + 0.5) * X / grid_n;
      if (a.contains(x, y) != b.contains(x, y)) ++mismatch;
    }
  }

  ShadowDistance d;
  d.sym_diff_area = double(mismatch) / (double(grid_n) * double(grid_n));

  const double tmax = std::hypot(X, Y);
  for (int k = 0; k < rays; ++k) {
    double theta = (kPi / 2.0) * double(k) / double(rays - 1);
    double cx = std::cos(theta), cy = std::sin(theta);
    auto extent = [&](const Shadow& s) {
      double lo = 0.0, hi = tmax;
      if (s.contains(hi * cx, hi * cy)) return hi;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (s.contains(mid * cx, mid * cy) ? lo : hi) = mid;
      }
      return lo;
    };
    d.max_ray_gap = std::max(d.max_ray_gap, std::abs(extent(a) - extent(b)));
  }
  return d;
}

double shadow_distance(const Shadow& a, const Shadow& b, int grid_n) {
  return shadow_distance_detail(a, b, grid_n).sym_diff_area;
}

Report verify_hstar(const Domain2& G, const TruncatedSeries2& g_extremal, int grid_n,
                    double shadow_tol) {
  Report r;
  r.suite = "hstar";
  Shadow geometric = h_star_shadow(G, grid_n).shadow;
  TruncatedSeries2 h = h_xi_coeffs(C2{1.0, 1.0}, g_extremal.degree_cap());
  Shadow analytic = cauchy_hadamard_shadow(hadamard(h, g_extremal));
  double dist = shadow_distance(geometric, analytic, grid_n);
  // a single germ certifies one side only: its continuation shadow is an
  // upper bound for the geometric sweep
  r.cases.push_back(make_case(
      "h_star_shadow vs cauchy_hadamard_shadow (series side certifies upper bound only)", 0.0,
      dist, shadow_tol));
  return r;
}

Report verify_contour_vs_series(int trials, std::uint64_t seed, double rel_tol) {
  Report r;
  r.suite = "contour";
  r.seed = seed;
  Rng rng(seed);
  const int cap = 8;
  TruncatedSeries2 h = h_xi_coeffs(C2{1.0, 1.0}, cap);
  for (int t = 0; t < trials; ++t) {
    TruncatedSeries2 f(cap);
    for (int a1 = 0; a1 <= cap; ++a1)
      for (int a2 = 0; a2 + a1 <= cap; ++a2) f.at(a1, a2) = rng.disc(1.0);
    C2 z{rng.disc(2.0), rng.disc(2.0)};
    Complex predicted = eval(hadamard(h, f), z);
    Complex observed = contour_h_star(f, z, ContourSpec::circle({0.0, 0.0}, 1.0, 64));
    double rel = std::abs(predicted - observed) /
                 std::max({1.0, std::abs(predicted), std::abs(observed)});
    r.cases.push_back(make_case("trial " + std::to_string(t), 0.0, rel, rel_tol));
  }
  return r;
}

Report verify_union_lemma(const Domain2& D, const Domain2& G, int n_max, int grid_n) {
  if (n_max < 1) throw invalid_parameter("verify_union_lemma: n_max must be >= 1");
  Report r;
  r.suite = "union";

  StarResult full = star_shadow(D, G, grid_n);
  long full_in = 0;
  for (CellState s : full.mask.cells)
    if (s == CellState::In) ++full_in;

  // sweep the exhaustion elements over the full sweep's window so the masks
  // share cell centers and compare cellwise
  std::vector<StarResult> steps;
  steps.reserve(size_t(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    steps.push_back(star_shadow(exhaustion(D, n), G, grid_n, 1, 257, 4, full.mask.x1,
                                full.mask.y1));
  }

  long monotone_violations = 0;
  for (int n = 0; n < n_max; ++n) {
    for (size_t k = 0; k < full.mask.cells.size(); ++k) {
      if (steps[size_t(n)].mask.cells[k] == CellState::In &&
          steps[size_t(n) + 1].mask.cells[k] != CellState::In) {
        ++monotone_violations;
      }
    }
  }
  r.cases.push_back(
      make_case("cellwise monotone growth over n", 0.0, double(monotone_violations), 0.0));

  for (int n = 0; n <= n_max; ++n) {
    long in_n = 0;
    for (size_t k = 0; k < full.mask.cells.size(); ++k) {
      if (steps[size_t(n)].mask.cells[k] == CellState::In &&
          full.mask.cells[k] == CellState::In) {
        ++in_n;
      }
    }
    double coverage = full_in > 0 ? double(in_n) / double(full_in) : 0.0;
    // smoothing shrinks radii by about 2^-(n+1); the grid adds a boundary
    // fringe of a few cells
    double slack = std::ldexp(1.0, -(n + 1)) + 8.0 / double(grid_n);
    r.cases.push_back(make_case("coverage at n=" + std::to_string(n), 1.0, coverage,
                                std::ldexp(1.0, -n) + slack));
  }
  return r;
}

Report run_suite_hstar(int grid_n, double shadow_tol) {
  Report r;
  r.suite = "hstar";
  const int cap = 60;

  {
    TruncatedSeries2 ones(cap);
    for (int a1 = 0; a1 <= cap; ++a1)
      for (int a2 = 0; a2 + a1 <= cap; ++a2) ones.at(a1, a2) = 1.0;
    Report one = verify_hstar(make_polydisc(1.0, 1.0), ones, grid_n, shadow_tol);
    r.cases.push_back(one.cases[0]);
    r.cases.back().inputs = "polydisc(1,1), geometric germ";
  }
  {
    TruncatedSeries2 g(cap);
    for (int a1 = 0; a1 <= cap; ++a1)
      for (int a2 = 0; a2 + a1 <= cap; ++a2) g.at(a1, a2) = std::pow(2.0, -a1);
    Report two = verify_hstar(make_polydisc(2.0, 1.0), g, grid_n, shadow_tol);
    r.cases.push_back(two.cases[0]);
    r.cases.back().inputs = "polydisc(2,1), germ 2^-a1";
  }
  {
    // control: a germ converging on a strictly smaller region must disagree
    TruncatedSeries2 bad(cap);
    for (int a1 = 0; a1 <= cap; ++a1)
      for (int a2 = 0; a2 + a1 <= cap; ++a2) bad.at(a1, a2) = std::pow(2.0, a1);
    Report three = verify_hstar(make_polydisc(1.0, 1.0), bad, grid_n, shadow_tol);
    r.cases.push_back(three.cases[0]);
    r.cases.back().inputs = "control: polydisc(1,1), germ 2^{+a1}";
    r.cases.back().negative_control = true;
  }
  return r;
}

Report run_suite_contour(int trials, std::uint64_t seed, double rel_tol) {
  Report r = verify_contour_vs_series(trials, seed, rel_tol);
  // control: wrong multiplier coefficients must not match the contour value
  TruncatedSeries2 f(4);
  f.at(1, 1) = 1.0;
  C2 z{1.0, 1.0};
  Complex wrong = eval(hadamard(h_xi_coeffs(C2{1.25, 1.0}, 4), f), z);
  Complex observed = contour_h_star(f, z, ContourSpec::circle({0.0, 0.0}, 1.0, 64));
  double rel =
      std::abs(wrong - observed) / std::max({1.0, std::abs(wrong), std::abs(observed)});
  r.cases.push_back(make_case("control: mismatched multiplier", 0.0, rel, rel_tol, true));
  return r;
}

Report run_suite_union(int grid_n, int n_max) {
  Report r;
  r.suite = "union";
  {
    Report a = verify_union_lemma(make_polydisc(1.25, 1.25), make_polydisc(0.8, 0.8), n_max,
                                  grid_n);
    for (auto& c : a.cases) {
      c.inputs = "polydisc(1.25)*polydisc(0.8): " + c.inputs;
      r.cases.push_back(c);
    }
  }
  {
    Report b = verify_union_lemma(make_ball(1.0), make_polydisc(1.0, 1.0), n_max, grid_n);
    for (auto& c : b.cases) {
      c.inputs = "ball(1)*polydisc(1,1): " + c.inputs;
      r.cases.push_back(c);
    }
  }
  {
    // control: the first exhaustion step cannot already cover the full sweep
    StarResult full = star_shadow(make_polydisc(1.0, 1.0), make_polydisc(1.0, 1.0), grid_n);
    StarResult step = star_shadow(exhaustion(make_polydisc(1.0, 1.0), 0),
                                  make_polydisc(1.0, 1.0), grid_n, 1, 257, 4, full.mask.x1,
                                  full.mask.y1);
    long full_in = 0, in_0 = 0;
    for (size_t k = 0; k < full.mask.cells.size(); ++k) {
      if (full.mask.cells[k] == CellState::In) {
        ++full_in;
        if (step.mask.cells[k] == CellState::In) ++in_0;
      }
    }
    double coverage = full_in > 0 ? double(in_0) / double(full_in) : 0.0;
    r.cases.push_back(make_case("control: full coverage at n=0", 1.0, coverage, 1e-3, true));
  }
  return r;
}

}  // namespace hadstar
