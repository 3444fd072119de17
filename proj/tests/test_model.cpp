#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "support.hpp"
#include "superint/model.hpp"

using namespace superint;
using namespace superint::model;

namespace {

ModelParams params(unsigned n, Rational gamma, std::vector<Rational> p) { return {n, std::move(gamma), std::move(p)}; }

double rel_residual(const FieldDiffOp& op, const FieldCoef& psi, const std::vector<double>& pt, double eigen) {
  const unsigned order = static_cast<unsigned>(std::max(op.order(), 0));
  auto jet = taylor::lift(psi, pt, order);
  const double out = op.apply(jet).value();
  return std::abs(out - eigen * jet.value()) / std::max(std::abs(jet.value()), 1e-30);
}

bool exact_eigen(const FieldDiffOp& op, const FieldCoef& psi, const std::vector<Rational>& pt, const Rational& eigen) {
  const unsigned order = static_cast<unsigned>(std::max(op.order(), 0));
  auto jet = taylor::lift_exact(psi, pt, order);
  auto out = op.apply(jet);
  auto expected = jet.truncated(0) * eigen;
  if (out.rational_value().is_zero() && expected.rational_value().is_zero()) return true;
  return out.tag() == expected.tag() && out.rational_value() == expected.rational_value();
}

std::vector<double> curvilinear_point(SplitMix64& rng, System sys, unsigned n) {
  std::vector<double> pt;
  const std::size_t radial = sys == System::Parabolic ? 2 : 1;
  for (std::size_t i = 0; i < radial; ++i) pt.push_back(rng.uniform(0.25, 2.0));
  while (pt.size() < n) pt.push_back(rng.uniform(0.125, std::numbers::pi / 2 - 0.125));
  return pt;
}

std::vector<double> cartesian_point(SplitMix64& rng, unsigned n) {
  std::vector<double> pt;
  for (unsigned i = 0; i < n; ++i) pt.push_back(rng.uniform(0.25, 2.0));
  return pt;
}

std::vector<Rational> Q(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("spectrum examples") {
  auto r = spectrum(params(3, Rational(1), Q({0, 0})), ParabolicQN{0, 0, {0}});
  CHECK(r.E == Rational(-1, 2));
  CHECK(r.lambda == Rational(0));
  CHECK(r.k[1] == Rational(0));
  CHECK(r.m[1] == Rational(0));

  // sign verified against the operator X itself; see the (1,0,[0]) eigen check below
  r = spectrum(params(3, Rational(1), Q({0, 0})), ParabolicQN{1, 0, {0}});
  CHECK(r.E == Rational(-1, 8));
  CHECK(r.lambda == Rational(1, 2));

  r = spectrum(params(3, Rational(2), Q({2, 3})), ParabolicQN{0, 0, {0}});
  CHECK(r.D == Rational(6));
  CHECK(r.E == Rational(-1, 18));
  CHECK(r.m[1] == Rational(5));
  CHECK(r.k[1] == Rational(-25));

  r = spectrum(params(4, Rational(1), Q({0, 0, 0})), ParabolicQN{0, 0, {0, 0}});
  CHECK(r.D == Rational(3, 2));
  CHECK(r.E == Rational(-2, 9));

  r = spectrum(params(3, Rational(1), Q({0, 0})), SphericalQN{0, {0, 0}});
  CHECK(r.m[0] == Rational(1, 2));
  CHECK(r.E == Rational(-1, 2));
}

TEST_CASE("spectrum errors") {
  CHECK_THROWS_AS(spectrum(params(3, Rational(1), {Rational(-3), Rational(-3)}), ParabolicQN{0, 0, {0}}), ModelError);
  CHECK_THROWS_AS(spectrum(params(3, Rational(1), Q({0, 0})), ParabolicQN{0, 0, {0, 0}}), ModelError);
  CHECK_THROWS_AS(spectrum(params(3, Rational(1), Q({0})), SphericalQN{0, {0, 0}}), ModelError);
  try {
    spectrum(params(3, Rational(1), {Rational(-3), Rational(-3)}), ParabolicQN{0, 0, {0}});
  } catch (const ModelError& e) {
    CHECK(std::string(e.what()).find("unbound state parameters") != std::string::npos);
  }
}

TEST_CASE("eigenfunction examples") {
  auto ground = eigenfunction(params(3, Rational(1), Q({0, 0})), ParabolicQN{0, 0, {0}});
  CHECK(ground.polypart == MultiPoly::constant(gauged_vars(3), Rational(1)));
  auto excited = eigenfunction(params(3, Rational(1), Q({0, 0})), ParabolicQN{1, 0, {0}});
  CHECK(excited.record.sqrt_minus_2E == Rational(1, 2));
  CHECK(excited.polypart == MultiPoly::constant(gauged_vars(3), Rational(1)) - MultiPoly::variable(gauged_vars(3), "s"));
  auto sph = eigenfunction(params(3, Rational(1), Q({0, 0})), SphericalQN{0, {0, 0}});
  CHECK(sph.polypart.is_zero() == false);
  CHECK(sph.gauge.front().kind == GaugeFactor::Kind::Power);
  CHECK(sph.gauge.front().exponent == Rational(0));
}

TEST_CASE("polypart degrees follow the quantum numbers") {
  auto psi = eigenfunction(params(4, Rational(1), {Rational(1, 2), Rational(2), Rational(3, 2)}), ParabolicQN{2, 1, {1, 2}});
  CHECK(psi.polypart.degree_in(0) == 2);
  CHECK(psi.polypart.degree_in(1) == 1);
  // z_j is indexed by the angle it comes from: J_1 lives on z_{n-2}, J_2 on z_{n-3}
  CHECK(psi.polypart.degree_in(3) == 1);
  CHECK(psi.polypart.degree_in(2) == 2);
}

TEST_CASE("degeneracy examples") {
  auto p3 = params(3, Rational(1), Q({0, 0}));
  CHECK(degeneracy(p3, System::Parabolic, 0).size() == 1);
  CHECK(degeneracy(p3, System::Spherical, 0).size() == 1);
  CHECK(degeneracy(p3, System::Parabolic, 2).size() == 4);
  CHECK(degeneracy(p3, System::Spherical, 2).size() == 3);
  // brute-force oracle for n = 5
  auto p5 = params(5, Rational(1), Q({0, 0, 0, 0}));
  for (unsigned q = 0; q <= 5; ++q) {
    // parabolic: N1, N2, J1..J3; spherical: Nr, J1..J4
    std::size_t para = 0, sph = 0;
    for (unsigned a = 0; a <= q; ++a)
      for (unsigned b = 0; b <= q; ++b)
        for (unsigned c = 0; c <= q; ++c)
          for (unsigned d = 0; d <= q; ++d)
            for (unsigned e = 0; e <= q; ++e) {
              if (a + b + 2 * (c + d + e) == q) ++para;
              if (a + 2 * (b + c + d + e) == q) ++sph;
            }
    CHECK(degeneracy(p5, System::Parabolic, q).size() == para);
    CHECK(degeneracy(p5, System::Spherical, q).size() == sph);
  }
}

TEST_CASE("parabolic and spherical spectra agree as sets") {
  for (unsigned n : {3u, 4u, 5u}) {
    auto p = params(n, Rational(3, 2), std::vector<Rational>(n - 1, Rational(1, 3)));
    std::set<Rational> para, sph;
    for (unsigned q = 0; q <= 8; ++q) {
      for (const auto& qn : degeneracy(p, System::Parabolic, q)) para.insert(spectrum(p, qn).E);
      for (const auto& qn : degeneracy(p, System::Spherical, q)) sph.insert(spectrum(p, qn).E);
    }
    CHECK(para == sph);
  }
}

TEST_CASE("coord_map examples") {
  const double pi = std::numbers::pi;
  auto a = coord_map(System::Parabolic, 3, {1, 1, 0});
  CHECK(a[0] == doctest::Approx(1));
  CHECK(a[1] == doctest::Approx(0));
  CHECK(a[2] == doctest::Approx(0));
  auto b = coord_map(System::Parabolic, 3, {2, 1, pi / 2});
  CHECK(b[0] == doctest::Approx(0).epsilon(1e-12));
  CHECK(b[1] == doctest::Approx(2));
  CHECK(b[2] == doctest::Approx(1.5));
  auto c = coord_map(System::Spherical, 3, {2, pi / 2, 0});
  CHECK(c[0] == doctest::Approx(0).epsilon(1e-12));
  CHECK(c[1] == doctest::Approx(2));
  CHECK(c[2] == doctest::Approx(0));
}

TEST_CASE("coord_map preserves the radius") {
  SplitMix64 rng(41);
  for (unsigned n = 3; n <= 6; ++n)
    for (System sys : {System::Parabolic, System::Spherical}) {
      auto pt = curvilinear_point(rng, sys, n);
      auto x = coord_map(sys, n, pt);
      double r2 = 0;
      for (double v : x) r2 += v * v;
      const double r = sys == System::Parabolic ? (pt[0] * pt[0] + pt[1] * pt[1]) / 2 : pt[0];
      CHECK(std::sqrt(r2) == doctest::Approx(r));
    }
}

TEST_CASE("builder structure") {
  auto h2 = build_cartesian(params(2, Rational(0), Q({0})));
  auto lap = ops::PolyDiffOp::partial({"x1", "x2"}, 0, 2) + ops::PolyDiffOp::partial({"x1", "x2"}, 1, 2);
  CHECK(h2.H.to_string() == FieldDiffOp::from_poly(lap * Rational(-1, 2)).to_string());

  auto h = build_cartesian(params(3, Rational(1), Q({2, 3})));
  CHECK(h.A.empty());
  CHECK(h.H.coefficient(MultiIndex(3)).to_string().find("1/x2^2") == std::string::npos);
  CHECK_THROWS_WITH_AS(runge_lenz(params(3, Rational(1), Q({2, 3})), 1),
                       doctest::Contains("Runge-Lenz defined only for pure Coulomb"), ModelError);

  // beta_1 = 1, beta_2 = 3: check through the value of the multiplicative coefficient
  std::vector<double> pt{1.0, 2.0, 2.0};
  auto c0 = taylor::lift(h.H.coefficient(MultiIndex(3)), pt, 0).value();
  CHECK(c0 == doctest::Approx(-1.0 / 3 + 1.0 + 3.0 / 4));

  auto pz = build_parabolic_ops(params(4, Rational(1), Q({0, 0, 0})));
  auto tan_coef = pz.Z[1].coefficient(MultiIndex::unit(4, 2));
  CHECK(taylor::lift(tan_coef, {1, 1, 0.3, 0.4}, 0).value() == doctest::Approx(-std::tan(0.3)));

  auto sp = build_spherical_ops(params(5, Rational(1), Q({0, 0, 0, 0})));
  auto cot_coef = sp.Y[0].coefficient(MultiIndex::unit(5, 1));
  CHECK(taylor::lift(cot_coef, {1, 0.3, 0.4, 0.5, 0.6}, 0).value() == doctest::Approx(3 / std::tan(0.3)));

  CHECK_THROWS_AS(build_parabolic_ops(params(2, Rational(1), Q({0}))), ModelError);
}

TEST_CASE("n=3 angular operators have the closed form") {
  // Z_1 = d_phi^2 - 2 beta_1/cos^2 - 2 beta_2/sin^2 ; Y_2 = d_alpha^2 - 2 beta_2/cos^2
  auto p = params(3, Rational(1), {Rational(5, 2), Rational(2, 3)});
  const double b1 = 2.5 * 1.5 / 2, b2 = (2.0 / 3) * (-1.0 / 3) / 2, phi = 0.7;
  auto z = build_parabolic_ops(p).Z[0];
  CHECK(taylor::lift(z.coefficient(MultiIndex(3)), {1, 1, phi}, 0).value() ==
        doctest::Approx(-2 * b1 / std::pow(std::cos(phi), 2) - 2 * b2 / std::pow(std::sin(phi), 2)));
  CHECK(z.order() == 2);
  auto y = build_spherical_ops(p).Y[1];
  CHECK(taylor::lift(y.coefficient(MultiIndex(3)), {1, 0.2, phi}, 0).value() ==
        doctest::Approx(-2 * b2 / std::pow(std::cos(phi), 2)));
}

TEST_CASE("ground state energy through the Cartesian H at (1,2,2)") {
  auto p = params(3, Rational(1), Q({0, 0}));
  auto psi = eigenfunction(p, ParabolicQN{0, 0, {0}});
  auto H = build_cartesian(p).H;
  CHECK(exact_eigen(H, psi.cartesian(), Q({1, 2, 2}), Rational(-1, 2)));
  CHECK(rel_residual(H, psi.cartesian(), {1, 2, 2}, -0.5) < 1e-12);
  CHECK_FALSE(exact_eigen(H, psi.cartesian(), Q({1, 2, 2}), Rational(-1, 3)));
}

TEST_CASE("Q0 and Q1 eigenvalues") {
  const double pi = std::numbers::pi;
  auto p = params(3, Rational(1), Q({0, 0}));
  for (auto qn : {ParabolicQN{0, 0, {0}}, ParabolicQN{1, 0, {0}}, ParabolicQN{0, 2, {1}}}) {
    auto psi = eigenfunction(p, qn);
    auto [Q0, Q1] = build_Q0_Q1(p, psi.record.E);
    const std::vector<double> pt{1, 0.5, pi / 5};
    CHECK(rel_residual(Q0, psi.curvilinear(), pt, 2.0) < 1e-10);
    CHECK(rel_residual(Q1, psi.curvilinear(), pt, 2 * psi.record.lambda.to_double()) < 1e-10);
  }
  auto psi = eigenfunction(p, ParabolicQN{1, 0, {0}});
  CHECK(2 * psi.record.lambda == Rational(1));
}

TEST_CASE("curvilinear and Cartesian renderings of psi agree") {
  SplitMix64 rng(42);
  for (unsigned n = 3; n <= 5; ++n) {
    std::vector<Rational> p;
    for (unsigned i = 0; i + 1 < n; ++i) p.push_back(Rational(static_cast<long>(i % 3), 2));
    auto mp = params(n, Rational(1), p);
    std::vector<QuantumNumbers> states{ParabolicQN{1, 2, std::vector<unsigned>(n - 2, 1)},
                                       SphericalQN{2, std::vector<unsigned>(n - 1, 1)}};
    for (const auto& qn : states) {
      auto psi = eigenfunction(mp, qn);
      for (int k = 0; k < 5; ++k) {
        auto pt = curvilinear_point(rng, psi.system, n);
        auto x = coord_map(psi.system, n, pt);
        const double a = psi.curvilinear().evaluate(pt), b = psi.cartesian().evaluate(x);
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("numeric eigen equations in curvilinear coordinates") {
  SplitMix64 rng(43);
  const std::vector<std::vector<Rational>> ps{{Rational(0)}, {Rational(1, 2)}, {Rational(2), Rational(3)}};
  for (unsigned n = 3; n <= 5; ++n) {
    for (const auto& seed_p : ps) {
      std::vector<Rational> p;
      for (unsigned i = 0; i + 1 < n; ++i) p.push_back(seed_p[i % seed_p.size()]);
      auto mp = params(n, Rational(1), p);
      for (unsigned q : {0u, 3u}) {
        for (const auto& qn : degeneracy(mp, System::Parabolic, q)) {
          auto psi = eigenfunction(mp, qn);
          auto f = psi.curvilinear();
          auto ops = build_parabolic_ops(mp);
          auto resolved = build_parabolic_ops(mp, psi.record.k);
          auto pt = curvilinear_point(rng, System::Parabolic, n);
          CHECK(rel_residual(ops.H, f, pt, psi.record.E.to_double()) < 1e-8);
          CHECK(rel_residual(ops.X, f, pt, psi.record.lambda.to_double()) < 1e-8);
          CHECK(rel_residual(resolved.H, f, pt, psi.record.E.to_double()) < 1e-8);
          for (unsigned l = 1; l <= n - 2; ++l) {
            CHECK(rel_residual(ops.Z[l - 1], f, pt, psi.record.k[l].to_double()) < 1e-8);
            CHECK(rel_residual(resolved.Z[l - 1], f, pt, psi.record.k[l].to_double()) < 1e-8);
          }
        }
        for (const auto& qn : degeneracy(mp, System::Spherical, q)) {
          auto psi = eigenfunction(mp, qn);
          auto f = psi.curvilinear();
          auto ops = build_spherical_ops(mp);
          auto pt = curvilinear_point(rng, System::Spherical, n);
          CHECK(rel_residual(ops.H, f, pt, psi.record.E.to_double()) < 1e-8);
          for (unsigned l = 1; l <= n - 1; ++l)
            CHECK(rel_residual(ops.Y[l - 1], f, pt, psi.record.k[l - 1].to_double()) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("Cartesian eigen equations, numeric and exact") {
  SplitMix64 rng(44);
  struct Case {
    unsigned n;
    std::vector<Rational> p;
    std::vector<std::vector<Rational>> points;
  };
  const std::vector<Case> cases{
      {3, {Rational(0), Rational(0)}, {Q({1, 2, 2}), Q({2, 3, 6})}},
      {3, {Rational(2), Rational(1, 2)}, {Q({1, 2, 2})}},
      {4, {Rational(1, 2), Rational(0), Rational(3)}, {Q({1, 1, 1, 1}), Q({1, 2, 2, 4})}},
      {5, {Rational(1), Rational(1, 2), Rational(0), Rational(2)}, {Q({1, 1, 1, 2, 3})}},
  };
  for (const auto& c : cases) {
    auto mp = params(c.n, Rational(1), c.p);
    auto H = build_cartesian(mp).H;
    auto X = cartesian_X(mp);
    for (const auto& qn : degeneracy(mp, System::Parabolic, 2)) {
      auto psi = eigenfunction(mp, qn);
      auto f = psi.cartesian();
      auto x = cartesian_point(rng, c.n);
      CHECK(rel_residual(H, f, x, psi.record.E.to_double()) < 1e-8);
      CHECK(rel_residual(X, f, x, psi.record.lambda.to_double()) < 1e-8);
      for (const auto& pt : c.points) {
        CHECK(exact_eigen(H, f, pt, psi.record.E));
        CHECK(exact_eigen(X, f, pt, psi.record.lambda));
        for (unsigned l = 1; l <= c.n - 2; ++l) CHECK(exact_eigen(cartesian_Z(mp, l), f, pt, psi.record.k[l]));
      }
    }
    for (const auto& qn : degeneracy(mp, System::Spherical, 2)) {
      auto psi = eigenfunction(mp, qn);
      auto f = psi.cartesian();
      auto x = cartesian_point(rng, c.n);
      CHECK(rel_residual(H, f, x, psi.record.E.to_double()) < 1e-8);
      for (const auto& pt : c.points) {
        CHECK(exact_eigen(H, f, pt, psi.record.E));
        for (unsigned l = 1; l <= c.n - 1; ++l) CHECK(exact_eigen(cartesian_Y(mp, l), f, pt, psi.record.k[l - 1]));
      }
    }
  }
}

TEST_CASE("mutations break the eigen equations") {
  auto mp = params(3, Rational(1), Q({0, 0}));
  auto psi = eigenfunction(mp, ParabolicQN{1, 0, {0}});
  auto flipped = build_cartesian(mp, Mutation::FlipCoulombSign).H;
  CHECK_FALSE(exact_eigen(flipped, psi.cartesian(), Q({1, 2, 2}), psi.record.E));
  CHECK(rel_residual(build_parabolic_ops(mp, Mutation::FlipCoulombSign).H, psi.curvilinear(), {1, 0.5, 0.6},
                     psi.record.E.to_double()) > 1e-3);
  auto g = build_gauged_ops(mp, psi.record.m, Rational(-2) * psi.record.sqrt_minus_2E, Mutation::PerturbY1);
  auto good = build_gauged_ops(mp, psi.record.m, Rational(-2) * psi.record.sqrt_minus_2E);
  CHECK(g.Y1.op.apply(psi.polypart) - good.Y1.op.apply(psi.polypart) == psi.polypart);
}

TEST_CASE("Cartesian commutators") {
  SplitMix64 rng(45);
  for (unsigned n = 3; n <= 5; ++n) {
    auto vars = cartesian_vars(n);
    std::vector<Rational> p(n - 1, Rational(0));
    p[0] = Rational(2);
    auto mp = params(n, Rational(1), p);
    auto coulomb = params(n, Rational(1), std::vector<Rational>(n - 1, Rational(0)));
    auto H = build_cartesian(mp).H;
    std::vector<FieldDiffOp> set{H, cartesian_X(mp)};
    for (unsigned l = 1; l <= n - 2; ++l) set.push_back(cartesian_Z(mp, l));
    auto Hc = build_cartesian(coulomb);
    auto x = cartesian_point(rng, n);
    auto f = taylor::lift_polynomial(testing_support::random_poly(rng, vars, 4, 6), x, 4);
    for (std::size_t a = 0; a < set.size(); ++a)
      for (std::size_t b = a + 1; b < set.size(); ++b)
        CHECK(std::abs(ops::commutator_apply(set[a], set[b], f).value()) < 1e-6);
    for (std::size_t i = 1; i <= n; ++i) {
      CHECK(std::abs(ops::commutator_apply(Hc.H, Hc.A[i - 1], f).value()) < 1e-6);
      for (std::size_t k = i + 1; k <= n; ++k)
        CHECK(std::abs(ops::commutator_apply(Hc.H, FieldDiffOp::from_poly(Hc.Lik(i, k)), f.truncated(3)).value()) <
              1e-6);
    }
  }
}

TEST_CASE("the four n=3 hydrogen sets commute") {
  SplitMix64 rng(46);
  auto vars = cartesian_vars(3);
  for (const auto& set : hydrogen_n3_sets(Rational(1), Rational(2, 3), Rational(1))) {
    for (int k = 0; k < 3; ++k) {
      auto x = cartesian_point(rng, 3);
      auto f = taylor::lift_polynomial(testing_support::random_poly(rng, vars, 4, 6), x, 4);
      CHECK(std::abs(ops::commutator_apply(set.first, set.second, f).value()) < 1e-6);
    }
  }
}

TEST_CASE("gauged operators act exactly on polynomial parts") {
  for (unsigned n = 3; n <= 5; ++n) {
    for (const auto& seed_p : std::vector<std::vector<Rational>>{{Rational(0)}, {Rational(1, 2)}, {Rational(2), Rational(3)}}) {
      std::vector<Rational> p;
      for (unsigned i = 0; i + 1 < n; ++i) p.push_back(seed_p[i % seed_p.size()]);
      auto mp = params(n, Rational(1), p);
      for (unsigned q = 0; q <= 4; ++q) {
        for (const auto& qn : degeneracy(mp, System::Parabolic, q)) {
          auto psi = eigenfunction(mp, qn);
          const auto& pq = std::get<ParabolicQN>(qn);
          const auto& r = psi.record;
          auto g = build_gauged_ops(mp, r.m, Rational(-2) * r.sqrt_minus_2E);
          const Rational mt = r.m.back();
          CHECK(g.Qp.op.apply(psi.polypart) == psi.polypart * (Rational(-2L * pq.N1) - mt - Rational(1)));
          CHECK(g.Qm.op.apply(psi.polypart) == psi.polypart * (Rational(-2L * pq.N2) - mt - Rational(1)));
          // Q0 = (Qp + Qm)/2 carries the prefactor; its eigenvalue is 2 gamma
          auto q0 = (g.Qp.op.apply(psi.polypart) + g.Qm.op.apply(psi.polypart)) * (g.prefactor / Rational(2));
          CHECK(q0 == psi.polypart * (Rational(2) * mp.gamma));
          for (unsigned l = 1; l <= n - 2; ++l) CHECK(g.Z[l - 1].op.apply(psi.polypart) == psi.polypart * r.k[l]);
          for (const auto* op : {&g.Qp, &g.Qm, &g.Y1}) CHECK(recompose(g.vars, op->witness) == op->op);
          for (const auto& z : g.Z) CHECK(recompose(g.vars, z.witness) == z.op);
        }
      }
    }
  }
}

TEST_CASE("n-dimensional Z1 reduces to the n=3 angular operator") {
  SplitMix64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const Rational p1 = rng.rational(0, 4, 3), p2 = rng.rational(0, 4, 3);
    auto mp = params(3, Rational(1), {p1, p2});
    std::vector<Rational> m{p1 - Rational(1, 2), Rational(7)};
    auto z = build_gauged_ops(mp, m, Rational(1)).Z[0].op;
    auto v = gauged_vars(3);
    auto dz = ops::PolyDiffOp::partial(v, 2);
    auto zz = ops::PolyDiffOp::multiplication(MultiPoly::variable(v, "z1"));
    auto id = ops::PolyDiffOp::identity(v);
    auto closed = (id * Rational(4) - zz * zz * Rational(4)) * dz * dz +
                   (id * (Rational(4) * (p1 - p2)) - zz * (Rational(4) * (p1 + p2 + Rational(1)))) * dz -
                   id * ((p1 + p2) * (p1 + p2));
    CHECK(z == closed);
  }
}

TEST_CASE("Y1 tridiagonal action") {
  auto t = y1_tridiagonal(1, 1, Rational(0));
  CHECK(t.c_zero == Rational(-4));
  CHECK(t.c_minus == Rational(2));
  CHECK(t.c_plus == Rational(2));
  CHECK(y1_tridiagonal(0, 0, Rational(5, 3)).c_zero == Rational(-5, 3) * Rational(8, 3));

  SplitMix64 rng(48);
  const auto v = gauged_vars(3);
  auto basis = [&](long a, long b, const Rational& m) {
    if (a < 0 || b < 0) return MultiPoly(v);
    return laguerre(static_cast<int>(a), m, "s").embed(v) * laguerre(static_cast<int>(b), m, "t").embed(v);
  };
  for (int trial = 0; trial < 10; ++trial) {
    const Rational m = rng.rational(-1, 5, 4);
    auto mp = params(3, Rational(1), Q({0, 0}));
    std::vector<Rational> chain{Rational(-1, 2), m};
    auto Y1 = build_gauged_ops(mp, chain, Rational(1)).Y1.op;
    for (long N1 = 0; N1 <= 6; ++N1)
      for (long N2 = 0; N2 <= 6; ++N2) {
        auto c = y1_tridiagonal(static_cast<unsigned>(N1), static_cast<unsigned>(N2), m);
        auto expect = basis(N1, N2, m) * c.c_zero + basis(N1 - 1, N2 + 1, m) * c.c_minus +
                      basis(N1 + 1, N2 - 1, m) * c.c_plus;
        CHECK(Y1.apply(basis(N1, N2, m)) == expect);
      }
  }
}

TEST_CASE("generator decomposition") {
  const auto v = gauged_vars(4);
  CHECK(generator_names(4).size() == 10);
  CHECK(generator(v, "t*ds") == ops::PolyDiffOp::multiplication(MultiPoly::variable(v, "t")) *
                                    ops::PolyDiffOp::partial(v, "s"));
  CHECK_THROWS_AS(generator(v, "q*ds"), ModelError);
  auto s = ops::PolyDiffOp::multiplication(MultiPoly::variable(v, "s"));
  CHECK_THROWS_AS(decompose(s), ModelError);
  auto w = decompose(s * s * ops::PolyDiffOp::partial(v, "t", 2));
  CHECK(to_string(w) == "(1)·[s*dt]·[s*dt]");
}
