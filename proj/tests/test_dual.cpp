#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hadstar/dual.hpp"
#include "hadstar/errors.hpp"
#include "oracles.hpp"

using namespace hadstar;

TEST_CASE("support closed forms") {
  Domain2 pd = make_polydisc(1.0, 1.0);
  CHECK(support(pd, 1.0, 1.0) == doctest::Approx(oracles::support_polydisc(1, 1, 1, 1)));
  CHECK(support(pd, 1.0, 1.0) == doctest::Approx(2.0));

  Domain2 b = make_ball(1.0);
  CHECK(support(b, 3.0, 4.0) == doctest::Approx(oracles::support_ball(1.0, 3.0, 4.0)).epsilon(1e-5));
  CHECK(support(b, 3.0, 4.0) == doctest::Approx(5.0).epsilon(1e-5));

  CHECK(support(pd, 0.0, 0.0) == 0.0);
  CHECK(support(b, 0.0, 0.0) == 0.0);
}

TEST_CASE("support against brute force on an ellipsoid") {
  double p1 = 0.75, p2 = 1.25;
  Domain2 e = make_ellipsoid(p1, p2);
  auto beta = [&](double x) {
    return std::pow(std::max(0.0, 1.0 - std::pow(x, 2 * p1)), 1.0 / (2 * p2));
  };
  for (auto [a, b] : {std::pair{1.0, 0.5}, {0.3, 2.0}, {2.5, 2.5}}) {
    double brute = oracles::support_profile_bruteforce(beta, 1.0, a, b);
    CHECK(support(e, a, b) == doctest::Approx(brute).epsilon(1e-5));
  }
}

TEST_CASE("support errors") {
  Domain2 pd = make_polydisc(1.0, 1.0);
  CHECK_THROWS_AS(support(pd, -1.0, 0.0), invalid_parameter);
  GeneralDomain g;
  g.member = [](const C2&) { return true; };
  CHECK_THROWS_AS(support(Domain2::general(g), 1.0, 1.0), unsupported_domain);
}

TEST_CASE("support homogeneity and subadditivity hold exactly over samples") {
  std::mt19937_64 rng(23);
  auto unit = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  Domain2 doms[] = {make_polydisc(1.3, 0.6), make_ball(1.1), make_ellipsoid(0.5, 2.0)};
  for (const Domain2& d : doms) {
    for (int i = 0; i < 500; ++i) {
      double a = 3 * unit(), b = 3 * unit(), a2 = 3 * unit(), b2 = 3 * unit();
      double lam = 2 * unit();
      CHECK(support(d, lam * a, lam * b) ==
            doctest::Approx(lam * support(d, a, b)).epsilon(1e-10));
      CHECK(support(d, a + a2, b + b2) <= support(d, a, b) + support(d, a2, b2) + 1e-10);
    }
  }
}

TEST_CASE("dual_contains anchors") {
  Domain2 pd = make_polydisc(1.0, 1.0);
  CHECK(dual_contains(pd, {0.5, 0.5}).inside);       // sigma = 1, boundary counts as inside
  CHECK(dual_contains(pd, {0.5, 0.5}).exact);
  CHECK_FALSE(dual_contains(pd, {0.7, Complex(0.0, 0.4)}).inside);  // 0.7 + 0.4 > 1
  CHECK(dual_contains(make_ball(2.0), {0.3, 0.4}).inside);          // 2 * 0.5 = 1
}

TEST_CASE("dual defining property has no counterexample") {
  std::mt19937_64 rng(29);
  auto unit = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  const double two_pi = 2.0 * std::acos(-1.0);
  Domain2 doms[] = {make_polydisc(1.0, 2.0), make_ball(1.4)};
  for (const Domain2& d : doms) {
    const Shadow& sh = d.shadow();
    for (int i = 0; i < 1000; ++i) {
      // xi with sigma(|xi|) <= 1
      double a = unit(), b = unit();
      double s = support(d, a, b);
      double scale = s > 0 ? unit() / s : 1.0;
      C2 xi{std::polar(a * scale, two_pi * unit()), std::polar(b * scale, two_pi * unit())};
      // z in D
      double x = sh.xmax() * unit(), y = 0.0;
      double cap = sh.beta_at(x);
      y = cap * unit();
      if (!sh.contains(x, y)) continue;
      C2 z{std::polar(x, two_pi * unit()), std::polar(y, two_pi * unit())};
      CHECK(std::abs(1.0 - dot(xi, z)) > 0.0);
    }
  }
}

TEST_CASE("dual scaling covariance") {
  std::mt19937_64 rng(31);
  auto unit = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  Domain2 d = make_ellipsoid(0.5, 1.0);
  for (int i = 0; i < 200; ++i) {
    double l1 = 0.5 + 1.5 * unit(), l2 = 0.5 + 1.5 * unit();
    Domain2 scaled = Domain2::reinhardt(d.shadow().scaled(l1, l2));
    C2 xi{1.5 * unit(), 1.5 * unit()};
    C2 scaled_xi{xi.z1 * l1, xi.z2 * l2};
    double lhs = support(scaled, std::abs(xi.z1), std::abs(xi.z2));
    double rhs = support(d, std::abs(scaled_xi.z1), std::abs(scaled_xi.z2));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(dual_contains(scaled, xi).inside == dual_contains(d, scaled_xi).inside);
  }
}

TEST_CASE("dual_contains on a general domain is sampled and flagged") {
  GeneralDomain g;
  g.member = [](const C2& z) { return std::abs(z.z1) < 1.0 && std::abs(z.z2) < 1.0; };
  g.bound_radius = 1.0;
  g.flags.bounded = true;
  Domain2 d = Domain2::general(g);
  DualMembership in = dual_contains(d, {0.5, 0.5});
  CHECK(in.inside);
  CHECK_FALSE(in.exact);
  DualMembership out = dual_contains(d, {0.7, Complex(0.0, 0.4)});
  CHECK_FALSE(out.inside);
  CHECK_FALSE(out.exact);
}

TEST_CASE("dual_boundary endpoints and residual") {
  Domain2 pd = make_polydisc(1.0, 1.0);
  auto three = dual_boundary(pd, 3);
  REQUIRE(three.size() == 3);
  CHECK(three[0].first == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(three[0].second == 0.0);
  CHECK(three[1].first == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(three[1].second == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(three[2].first == 0.0);
  CHECK(three[2].second == doctest::Approx(1.0).epsilon(1e-10));

  auto ball3 = dual_boundary(make_ball(1.0), 3);
  CHECK(ball3[1].first == doctest::Approx(std::sqrt(0.5)).epsilon(1e-5));
  CHECK(ball3[1].second == doctest::Approx(std::sqrt(0.5)).epsilon(1e-5));

  auto two = dual_boundary(pd, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].second == 0.0);
  CHECK(two[1].first == 0.0);

  Domain2 e = make_ellipsoid(0.5, 1.5);
  for (auto [a, b] : dual_boundary(e, 33)) {
    CHECK(std::abs(support(e, a, b) - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(dual_boundary(pd, 1), invalid_parameter);
}

TEST_CASE("DualSet caches the boundary eagerly and matches the free functions") {
  Domain2 e = make_ellipsoid(0.5, 1.5);
  DualSet ds(e, 33);
  CHECK(ds.boundary().size() == 33);
  CHECK(ds.boundary() == dual_boundary(e, 33));
  for (auto [a, b] : {std::pair{1.0, 0.0}, {0.4, 1.3}, {2.0, 2.0}}) {
    CHECK(ds.support(a, b) == support(e, a, b));
  }
  C2 xi{0.3, Complex(0.0, 0.4)};
  CHECK(ds.contains(xi) == dual_contains(e, xi).inside);
  CHECK_THROWS_AS(ds.support(-1.0, 0.0), invalid_parameter);
}

TEST_CASE("phi_map identities") {
  NormalSample axis({1.0, 0.0}, {1.0, 0.0});
  C2 phi = phi_map(axis);
  CHECK(std::abs(phi.z1 - 1.0) < 1e-14);
  CHECK(std::abs(phi.z2) < 1e-14);
  CHECK(std::abs(dot(axis.w, phi) - 1.0) < 1e-14);

  double c = std::sqrt(0.5);
  NormalSample diag({c, c}, {c, c});
  C2 p = phi_map(diag);
  CHECK(std::abs(p.z1 - c) < 1e-12);
  CHECK(support(make_ball(1.0), std::abs(p.z1), std::abs(p.z2)) ==
        doctest::Approx(1.0).epsilon(1e-5));

  std::mt19937_64 rng(37);
  auto unit = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  for (int i = 0; i < 200; ++i) {
    C2 w{std::polar(0.5 + unit(), 6.28 * unit()), std::polar(0.5 + unit(), 6.28 * unit())};
    C2 nu{std::polar(unit() + 0.1, 6.28 * unit()), std::polar(unit() + 0.1, 6.28 * unit())};
    NormalSample s(w, nu);
    if (std::abs(dot(s.w, s.nu)) < 1e-6) continue;
    CHECK(std::abs(dot(s.w, phi_map(s)) - 1.0) < 1e-13);
  }

  CHECK_THROWS_AS(phi_map(NormalSample({1.0, 0.0}, {0.0, 1.0})), degenerate_normal);
}

TEST_CASE("phi_map outputs land in the dual for convex families") {
  // boundary samples of a Reinhardt domain with phases; nu carries the
  // conjugate phases so that the hyperplane misses the domain
  std::mt19937_64 rng(41);
  auto unit = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  const double two_pi = 2.0 * std::acos(-1.0);
  Domain2 doms[] = {make_ball(1.0), make_ellipsoid(1.0, 1.5)};
  for (const Domain2& d : doms) {
    const Shadow& sh = d.shadow();
    for (int i = 0; i < 100; ++i) {
      double x = 0.05 + 0.9 * sh.xmax() * unit();
      double y = sh.beta_at(x);
      if (y <= 1e-6) continue;
      // profile gradient by central difference in x
      double h = 1e-6 * sh.xmax();
      double slope = (sh.beta_at(x + h) - sh.beta_at(x - h)) / (2 * h);
      double n1 = -slope, n2 = 1.0;
      double t1 = two_pi * unit(), t2 = two_pi * unit();
      NormalSample s({std::polar(x, t1), std::polar(y, t2)},
                     {std::polar(n1, -t1), std::polar(n2, -t2)});
      C2 phi = phi_map(s);
      // allow for the profile's piecewise-linear wobble
      CHECK(support(d, std::abs(phi.z1), std::abs(phi.z2)) <= 1.0 + 1e-4);
    }
  }
}
