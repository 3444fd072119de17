#include <doctest.h>

#include "support.hpp"
#include "superint/operators.hpp"

using namespace superint;
using namespace superint::ops;
using testing_support::random_poly;

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};

PolyDiffOp random_op(SplitMix64& rng, const std::vector<std::string>& vars, unsigned max_order) {
  PolyDiffOp op(vars);
  for (int t = 0; t < 4; ++t) {
    std::vector<unsigned> d(vars.size(), 0);
    long k = rng.integer(0, max_order);
    for (long i = 0; i < k; ++i) ++d[static_cast<std::size_t>(rng.integer(0, static_cast<long>(vars.size()) - 1))];
    op.add_term(MultiIndex(d), random_poly(rng, vars, 2, 3));
  }
  return op;
}

PolyDiffOp mul(const std::vector<std::string>& vars, std::string_view text) {
  return PolyDiffOp::multiplication(MultiPoly::parse(vars, text));
}

}  // namespace

TEST_CASE("commutator examples") {
  const std::vector<std::string> x{"x"};
  auto dx = PolyDiffOp::partial(x, 0);
  CHECK(commutator(dx, mul(x, "x")) == PolyDiffOp::identity(x));
  CHECK(commutator(mul(x, "x") * dx, dx) == -dx);

  const std::vector<std::string> st{"s", "t"};
  Rational m(2, 3);
  auto ds = PolyDiffOp::partial(st, "s"), dt = PolyDiffOp::partial(st, "t");
  auto ps = mul(st, "s") * ds * ds + (PolyDiffOp::identity(st) * (m + Rational(1)) - mul(st, "s")) * ds;
  auto pt = mul(st, "t") * dt * dt + (PolyDiffOp::identity(st) * (m + Rational(1)) - mul(st, "t")) * dt;
  CHECK(commutator(ps, pt).is_zero());
}

TEST_CASE("apply to polynomials") {
  const std::vector<std::string> s{"x"};
  for (int n = 0; n <= 6; ++n) {
    Rational a(n - 2, 3);
    auto dx = PolyDiffOp::partial(s, 0);
    auto op = mul(s, "x") * dx * dx + (PolyDiffOp::identity(s) * (a + Rational(1)) - mul(s, "x")) * dx;
    MultiPoly L = laguerre(n, a);
    CHECK(op.apply(L) == L * Rational(-n));
  }
  const std::vector<std::string> z{"z"};
  auto dz = PolyDiffOp::partial(z, 0);
  CHECK(dz.apply(MultiPoly::constant(z, Rational(7))).is_zero());
  CHECK((mul(z, "z") * dz).apply(MultiPoly::parse(z, "z^3")) == MultiPoly::parse(z, "3 * z^3"));
  CHECK_THROWS_AS(dz.apply(MultiPoly::parse({"x"}, "x")), ArityMismatch);
}

TEST_CASE("normal form and printer") {
  const std::vector<std::string> x{"x"};
  auto dx = PolyDiffOp::partial(x, 0);
  auto op = dx * mul(x, "x");  // x D + 1
  CHECK(op.order() == 1);
  CHECK(op.to_string() == "(1) · D[] + (x) · D[x]");
  CHECK((op - op).is_zero());
  CHECK((op - op).to_string() == "0");
}

TEST_CASE("composition agrees with successive application") {
  SplitMix64 rng(31);
  for (int i = 0; i < 30; ++i) {
    auto a = random_op(rng, kXYZ, 2), b = random_op(rng, kXYZ, 2);
    MultiPoly p = random_poly(rng, kXYZ, 5, 6);
    CHECK((a * b).apply(p) == a.apply(b.apply(p)));
  }
}

TEST_CASE("commutator algebra laws hold exactly") {
  SplitMix64 rng(32);
  for (int i = 0; i < 15; ++i) {
    auto a = random_op(rng, kXYZ, 2), b = random_op(rng, kXYZ, 2), c = random_op(rng, kXYZ, 2);
    Rational k = rng.rational(-5, 5, 4);
    auto jacobi_sum = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b));
    CHECK(jacobi_sum.is_zero());
    CHECK(commutator(a, b) == -commutator(b, a));
    CHECK(commutator(a * k + b, c) == commutator(a, c) * k + commutator(b, c));
  }
}

TEST_CASE("field operator application examples") {
  const std::vector<std::string> x{"x"};
  auto d2 = FieldDiffOp::from_poly(PolyDiffOp::partial(x, 0, 2));
  auto cube = taylor::lift_polynomial(MultiPoly::parse(x, "x^3"), std::vector<Rational>{Rational(1)}, 3);
  auto out = d2.apply(TaggedJet(cube));
  CHECK(out.order() == 1);
  CHECK(out.jet().coefficients() == std::vector<Rational>{6, 6});

  FieldDiffOp inv(x);
  inv.add_term(MultiIndex{1u}, FieldCoef(1) / FieldCoef::var(0, "x"));
  auto sq = taylor::lift_polynomial(MultiPoly::parse(x, "x^2"), std::vector<double>{2.0}, 2);
  CHECK(inv.apply(sq).value() == doctest::Approx(2.0));
  CHECK_THROWS_AS(d2.apply(sq.truncated(1)), taylor::ShapeMismatch);
}

TEST_CASE("numeric commutator of d/dx and x is the identity") {
  const std::vector<std::string> x{"x"};
  auto dx = FieldDiffOp::from_poly(PolyDiffOp::partial(x, 0));
  auto mx = FieldDiffOp::scalar(x, FieldCoef::var(0, "x"));
  auto f = taylor::lift(exp(FieldCoef::var(0, "x")) + FieldCoef(3), {0.5}, 2);
  auto c = commutator_apply(dx, mx, f);
  CHECK(c.value() == doctest::Approx(f.value()));
}

TEST_CASE("jet application agrees with exact polynomial application") {
  SplitMix64 rng(33);
  std::vector<Rational> base{Rational(1, 2), Rational(-1), Rational(3, 4)};
  for (int i = 0; i < 20; ++i) {
    auto op = random_op(rng, kXYZ, 2);
    MultiPoly p = random_poly(rng, kXYZ, 4, 5);
    auto via_jet = FieldDiffOp::from_poly(op).apply(TaggedJet(taylor::lift_polynomial(p, base, 5)));
    auto direct = taylor::lift_polynomial(op.apply(p), base, 5 - static_cast<unsigned>(std::max(op.order(), 0)));
    CHECK(via_jet.jet().coefficients() == direct.coefficients());
  }
}

TEST_CASE("left multiplication by a field") {
  const std::vector<std::string> x{"x"};
  auto dx = FieldDiffOp::from_poly(PolyDiffOp::partial(x, 0));
  auto op = (FieldCoef(2) * FieldCoef::var(0, "x")) * dx;
  auto f = taylor::lift_polynomial(MultiPoly::parse(x, "x^2"), std::vector<double>{3.0}, 1);
  CHECK(op.apply(f).value() == doctest::Approx(36.0));
}
