#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>

#include "golden.hpp"
#include "superint/verify.hpp"

using namespace superint;
using namespace superint::verify;

namespace {

model::ModelParams params(unsigned n, std::vector<Rational> p, Rational gamma = Rational(1)) {
  return {n, std::move(gamma), std::move(p)};
}

CheckSpec spec(Kind kind, model::ModelParams p, std::string subject, unsigned qmax, unsigned samples, double tol,
               std::uint64_t seed = 7) {
  CheckSpec s;
  s.name = to_string(kind) + "/" + subject;
  s.kind = kind;
  s.params = std::move(p);
  s.subject = std::move(subject);
  s.qmax = qmax;
  s.samples = samples;
  s.tolerance = tol;
  s.seed = seed;
  return s;
}

Json without_wall(Json j) {
  if (j.contains("reports"))
    for (auto& r : j["reports"]) r.erase("wall_ms");
  else
    j.erase("wall_ms");
  return j;
}

}  // namespace

TEST_CASE("exact eigen spec passes with zero residual") {
  auto r = run_check(spec(Kind::ExactEigen, params(3, {Rational(0), Rational(0)}), "gauged", 4, 0, 0));
  CHECK(r.status == Status::Pass);
  CHECK(r.worst_residual == 0.0);
  CHECK(r.witness.is_null());
}

TEST_CASE("commutator identity and nonzero detection") {
  auto id = run_check(spec(Kind::CommutatorIdentity, params(3, {Rational(0), Rational(0)}), "A1,A2", 0, 10, 1e-8));
  CHECK(id.status == Status::Pass);
  CHECK(id.worst_residual <= 1e-8);

  auto nz = run_check(spec(Kind::CommutatorNonzero, params(3, {Rational(1, 2), Rational(3)}), "Y2,Z1", 0, 10,
                           kNonzeroThreshold));
  CHECK(nz.status == Status::Pass);
  CHECK(nz.worst_residual >= 1e-3);
  CHECK(nz.witness.contains("test_function"));

  // a commuting pair cannot be reported as nonzero
  auto wrong = run_check(spec(Kind::CommutatorNonzero, params(3, {Rational(1, 2), Rational(3)}), "H,X", 0, 10,
                              kNonzeroThreshold));
  CHECK(wrong.status == Status::Fail);
}

TEST_CASE("empty suite passes") {
  auto res = run_suite({});
  CHECK(res.reports.empty());
  CHECK(res.ok());
  CHECK(summary_line(res) == "0 checks, 0 pass");
}

TEST_CASE("mutations are caught") {
  auto base = params(3, {Rational(0), Rational(0)});
  auto s = spec(Kind::NumericEigen, base, "cartesian-parabolic", 2, 5, kEigenTolerance);
  s.mutation = model::Mutation::FlipCoulombSign;
  auto r = run_check(s);
  CHECK(r.status == Status::Fail);
  CHECK(r.witness.at("operator") == "H");
  CHECK(r.worst_residual > 1e-3);

  auto t = spec(Kind::Tridiagonal, base, "y1", 3, 2, 0);
  t.mutation = model::Mutation::PerturbY1;
  CHECK(run_check(t).status == Status::Fail);
  t.mutation = model::Mutation::None;
  CHECK(run_check(t).status == Status::Pass);

  auto e = spec(Kind::ExactEigen, base, "cartesian-spherical", 1, 1, 0);
  e.mutation = model::Mutation::FlipCoulombSign;
  CHECK(run_check(e).status == Status::Fail);
}

TEST_CASE("construction errors become error status") {
  auto r = run_check(spec(Kind::CommutatorZero, params(3, {Rational(2), Rational(0)}), "H,A1", 0, 2, 1e-6));
  CHECK(r.status == Status::Error);
  CHECK(r.witness.at("error").get<std::string>().find("Runge-Lenz defined only for pure Coulomb") !=
        std::string::npos);
  CHECK(run_check(spec(Kind::NumericEigen, params(3, {Rational(0), Rational(0)}), "elliptic", 1, 1, 1e-8)).status ==
        Status::Error);
  CHECK(run_check(spec(Kind::ExactEigen, params(3, {Rational(0)}), "gauged", 1, 0, 0)).status == Status::Error);
  // exact kinds refuse tolerances
  CHECK(run_check(spec(Kind::Tridiagonal, params(3, {Rational(0), Rational(0)}), "y1", 1, 1, 1e-3)).status ==
        Status::Error);
}

TEST_CASE("reports are deterministic and round-trip through JSON") {
  auto suite = default_suite(params(3, {Rational(1, 2), Rational(3)}), Selector::All, 42);
  auto a = run_suite(suite, 4), b = run_suite(suite, 1);
  CHECK(without_wall(to_json(a)) == without_wall(to_json(b)));
  for (const auto& r : a.reports) {
    auto j = to_json(r);
    CHECK(to_json(report_from_json(j)) == j);
  }
  std::vector<std::string> keys;
  const Json first = to_json(a.reports.front());
  for (const auto& [k, v] : first.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"name", "kind", "params", "seed", "tolerance", "status", "worst_residual",
                                         "witness", "wall_ms"});
  CHECK(std::is_sorted(a.reports.begin(), a.reports.end(),
                       [](const CheckReport& x, const CheckReport& y) { return x.spec.name < y.spec.name; }));
}

TEST_CASE("seeds change sampled inputs, not verdicts") {
  auto s = spec(Kind::CommutatorZero, params(4, {Rational(0), Rational(1, 2), Rational(2)}), "H,X", 0, 3, 1e-6, 1);
  auto t = s;
  t.seed = 2;
  auto a = run_check(s), b = run_check(t);
  CHECK(a.status == Status::Pass);
  CHECK(b.status == Status::Pass);
  CHECK(a.worst_residual != b.worst_residual);
}

TEST_CASE("rational radius points") {
  for (unsigned n = 3; n <= 6; ++n) {
    auto pts = rational_radius_points(n, 5, 3);
    CHECK(pts.size() == 5);
    for (const auto& pt : pts) {
      Rational s(0);
      for (const auto& x : pt) {
        CHECK(x > Rational(0));
        s += x * x;
      }
      const long r = std::lround(std::sqrt(s.to_double()));
      CHECK(Rational(r * r) == s);
    }
    CHECK(rational_radius_points(n, 5, 3) == pts);
  }
}

TEST_CASE("default suites contain the advertised rows") {
  auto names = [](const std::vector<CheckSpec>& s) {
    std::set<std::string> out;
    for (const auto& c : s) out.insert(c.name);
    return out;
  };
  auto comm = names(default_suite(params(5, std::vector<Rational>(4, Rational(0))), Selector::Commutators, 1));
  CHECK(comm.count("commutator-zero/H,X") == 1);
  CHECK(comm.count("commutator-nonzero/Y2,Z1") == 1);
  CHECK(comm.count("commutator-nonzero/Y1,X") == 1);
  CHECK(comm.count("commutator-zero/Y1,Z3") == 1);
  auto exact = default_suite(params(3, {Rational(0), Rational(0)}), Selector::Exact, 1);
  for (const auto& c : exact) CHECK(c.tolerance == 0.0);
  CHECK(default_suite(params(2, {Rational(0)}), Selector::Tridiagonal, 1).empty());
}

TEST_CASE("golden report for n = 3") {
  auto res = run_suite(default_suite(params(3, {Rational(1, 2), Rational(3)}), Selector::All, 42));
  CHECK(golden::matches(to_json(res), "verify_n3_all.json"));
}

TEST_CASE("golden report for n = 4 exact and tridiagonal suites") {
  auto p = params(4, {Rational(0), Rational(1, 3), Rational(2)}, Rational(3, 2));
  auto suite = default_suite(p, Selector::Exact, 7);
  auto tri = default_suite(p, Selector::Tridiagonal, 7);
  suite.insert(suite.end(), tri.begin(), tri.end());
  CHECK(golden::matches(to_json(run_suite(suite)), "verify_n4_exact.json"));
}
