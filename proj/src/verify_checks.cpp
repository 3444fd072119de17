#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>

#include "superint/verify.hpp"

namespace superint::verify {

using model::FieldDiffOp;
using model::ModelParams;
using model::QuantumNumbers;
using model::System;
using taylor::TaggedJet;

namespace {

constexpr double kPsiFloor = 1e-30;

// Collects the worst residual and the first failing input.
struct Tally {
  double worst = 0;
  bool failed = false;
  Json witness;

  void observe(double residual, bool ok, const std::function<Json()>& describe) {
    worst = std::max(worst, residual);
    if (!ok && !failed) {
      failed = true;
      witness = describe();
    }
  }
};

std::vector<QuantumNumbers> states(const ModelParams& p, System sys, unsigned qmax) {
  std::vector<QuantumNumbers> out;
  for (unsigned q = 0; q <= qmax; ++q) {
    auto level = model::degeneracy(p, sys, q);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

Json point_json(const std::vector<double>& pt) { return Json(pt); }

Json point_json(const std::vector<Rational>& pt) {
  Json a = Json::array();
  for (const auto& v : pt) a.push_back(v.to_string());
  return a;
}

std::vector<double> curvilinear_point(SplitMix64& rng, System sys, unsigned n) {
  std::vector<double> pt;
  const std::size_t radial = sys == System::Parabolic ? 2 : 1;
  for (std::size_t i = 0; i < radial; ++i) pt.push_back(rng.uniform(0.25, 2.0));
  while (pt.size() < n) pt.push_back(rng.uniform(0.125, std::numbers::pi / 2 - 0.125));
  return pt;
}

std::vector<double> positive_point(SplitMix64& rng, unsigned n) {
  std::vector<double> pt(n);
  for (auto& v : pt) v = rng.uniform(0.25, 2.0);
  return pt;
}

std::vector<double> signed_point(SplitMix64& rng, unsigned n) {
  std::vector<double> pt = positive_point(rng, n);
  for (auto& v : pt)
    if (rng.next() & 1) v = -v;
  return pt;
}

unsigned op_order(const FieldDiffOp& op) { return static_cast<unsigned>(std::max(op.order(), 0)); }

struct Target {
  std::string label;
  FieldDiffOp op;
  Rational eigen;
};

std::vector<Target> eigen_targets(const CheckSpec& spec, const model::Eigenfunction& psi) {
  const auto& p = spec.params;
  const auto& r = psi.record;
  std::vector<Target> out;
  if (spec.subject == "parabolic") {
    auto ops = model::build_parabolic_ops(p, spec.mutation);
    out.push_back({"H", ops.H, r.E});
    out.push_back({"X", ops.X, r.lambda});
    for (unsigned l = 1; l <= p.n - 2; ++l) out.push_back({"Z" + std::to_string(l), ops.Z[l - 1], r.k[l]});
  } else if (spec.subject == "spherical") {
    auto ops = model::build_spherical_ops(p, spec.mutation);
    out.push_back({"H", ops.H, r.E});
    for (unsigned l = 1; l <= p.n - 1; ++l) out.push_back({"Y" + std::to_string(l), ops.Y[l - 1], r.k[l - 1]});
  } else if (spec.subject == "cartesian-parabolic") {
    out.push_back({"H", model::build_cartesian(p, spec.mutation).H, r.E});
    out.push_back({"X", model::cartesian_X(p), r.lambda});
    for (unsigned l = 1; l <= p.n - 2; ++l) out.push_back({"Z" + std::to_string(l), model::cartesian_Z(p, l), r.k[l]});
  } else if (spec.subject == "cartesian-spherical") {
    out.push_back({"H", model::build_cartesian(p, spec.mutation).H, r.E});
    for (unsigned l = 1; l <= p.n - 1; ++l)
      out.push_back({"Y" + std::to_string(l), model::cartesian_Y(p, l), r.k[l - 1]});
  } else {
    throw model::ModelError("unknown eigen subject '" + spec.subject + "'");
  }
  return out;
}

System subject_system(const std::string& subject) {
  return subject.find("spherical") != std::string::npos ? System::Spherical : System::Parabolic;
}

bool cartesian_subject(const std::string& subject) { return subject.starts_with("cartesian"); }

void numeric_eigen(const CheckSpec& spec, Tally& tally) {
  const unsigned n = spec.params.n;
  const System sys = subject_system(spec.subject);
  const bool cart = cartesian_subject(spec.subject);
  SplitMix64 root(spec.seed);
  std::uint64_t state_id = 0;
  for (const auto& qn : states(spec.params, sys, spec.qmax)) {
    auto psi = model::eigenfunction(spec.params, qn);
    const auto targets = eigen_targets(spec, psi);
    const auto field = cart ? psi.cartesian() : psi.curvilinear();
    unsigned order = 0;
    for (const auto& t : targets) order = std::max(order, op_order(t.op));
    SplitMix64 rng = root.split(state_id++);
    for (unsigned k = 0; k < spec.samples; ++k) {
      const auto pt = cart ? positive_point(rng, n) : curvilinear_point(rng, sys, n);
      const auto jet = taylor::lift(field, pt, order);
      const double value = jet.value();
      for (const auto& t : targets) {
        const double out = t.op.apply(jet.truncated(op_order(t.op))).value();
        const double residual = std::abs(out - t.eigen.to_double() * value) / std::max(std::abs(value), kPsiFloor);
        tally.observe(residual, residual <= spec.tolerance, [&] {
          return Json{{"state", model::to_string(qn)}, {"operator", t.label}, {"point", point_json(pt)},
                      {"residual", residual}};
        });
      }
    }
  }
}

// Relative size of an exact mismatch, for reporting only.
double exact_gap(const TaggedJet& out, const TaggedJet& expected) {
  const double a = out.value_double(), b = expected.value_double();
  const double gap = std::abs(a - b) / std::max(std::abs(b), kPsiFloor);
  return std::max(gap, std::numeric_limits<double>::min());
}

bool same_value(const TaggedJet& a, const TaggedJet& b) {
  if (a.rational_value().is_zero() || b.rational_value().is_zero())
    return a.rational_value().is_zero() && b.rational_value().is_zero();
  return a.tag() == b.tag() && a.rational_value() == b.rational_value();
}

void exact_cartesian(const CheckSpec& spec, Tally& tally) {
  const System sys = subject_system(spec.subject);
  const auto points = rational_radius_points(spec.params.n, spec.samples, spec.seed);
  for (const auto& qn : states(spec.params, sys, spec.qmax)) {
    auto psi = model::eigenfunction(spec.params, qn);
    const auto targets = eigen_targets(spec, psi);
    const auto field = psi.cartesian();
    unsigned order = 0;
    for (const auto& t : targets) order = std::max(order, op_order(t.op));
    for (const auto& pt : points) {
      const auto jet = taylor::lift_exact(field, pt, order);
      const auto value = jet.truncated(0);
      for (const auto& t : targets) {
        const auto out = t.op.apply(jet.truncated(op_order(t.op)));
        const auto expected = value * t.eigen;
        const bool ok = same_value(out, expected);
        const double residual = ok ? 0.0 : exact_gap(out, expected);
        tally.observe(residual, ok, [&] {
          return Json{{"state", model::to_string(qn)}, {"operator", t.label}, {"point", point_json(pt)},
                      {"got", out.rational_value().to_string() + " * " + out.tag().to_string()},
                      {"expected", expected.rational_value().to_string() + " * " + expected.tag().to_string()}};
        });
      }
    }
  }
}

double poly_gap(const MultiPoly& d) {
  double worst = 0;
  for (const auto& [idx, c] : d.terms()) worst = std::max(worst, std::abs(c.to_double()));
  return d.is_zero() ? 0.0 : std::max(worst, std::numeric_limits<double>::min());
}

void exact_gauged(const CheckSpec& spec, Tally& tally) {
  const auto& p = spec.params;
  for (const auto& qn : states(p, System::Parabolic, spec.qmax)) {
    auto psi = model::eigenfunction(p, qn);
    const auto& r = psi.record;
    const auto& pq = std::get<model::ParabolicQN>(qn);
    const auto g = model::build_gauged_ops(p, r.m, Rational(-2) * r.sqrt_minus_2E, spec.mutation);
    const MultiPoly& P = psi.polypart;
    const Rational one(1), mt = r.m.back();
    auto check = [&](const std::string& label, const MultiPoly& got, const MultiPoly& expected) {
      const double gap = poly_gap(got - expected);
      tally.observe(gap, gap == 0.0, [&] {
        return Json{{"state", model::to_string(qn)}, {"operator", label}, {"got", got.to_string()},
                    {"expected", expected.to_string()}};
      });
    };
    const MultiPoly qp = g.Qp.op.apply(P), qm = g.Qm.op.apply(P);
    check("Qp", qp, P * (Rational(-2L * static_cast<long>(pq.N1)) - mt - one));
    check("Qm", qm, P * (Rational(-2L * static_cast<long>(pq.N2)) - mt - one));
    for (unsigned l = 1; l <= p.n - 2; ++l)
      check("Z" + std::to_string(l), g.Z[l - 1].op.apply(P), P * r.k[l]);
    // Q0 = prefactor (Qp + Qm) / 2, with sqrt(-2E) = gamma / D
    check("Q0", (qp + qm) * (g.prefactor / Rational(2)), P * (Rational(2) * p.gamma));
  }
}

// --------------------------------------------------------------- commutators

FieldDiffOp named_op(const CheckSpec& spec, const std::string& name) {
  const auto& p = spec.params;
  auto index = [&](std::size_t from) { return static_cast<unsigned>(std::stoul(name.substr(from))); };
  if (name == "H") return model::build_cartesian(p, spec.mutation).H;
  if (name == "X") return model::cartesian_X(p);
  if (name.size() >= 2 && name[0] == 'Z') return model::cartesian_Z(p, index(1));
  if (name.size() >= 2 && name[0] == 'Y') return model::cartesian_Y(p, index(1));
  if (name.size() >= 2 && name[0] == 'A') return model::runge_lenz(p, index(1));
  if (name.size() == 3 && name[0] == 'L') {
    const std::size_t i = static_cast<std::size_t>(name[1] - '0'), k = static_cast<std::size_t>(name[2] - '0');
    if (i < 1 || k > p.n || i >= k) throw model::ModelError("bad angular momentum '" + name + "'");
    const auto vars = model::cartesian_vars(p.n);
    return FieldDiffOp::from_poly(ops::PolyDiffOp::multiplication(MultiPoly::variable(vars, vars[i - 1])) *
                                      ops::PolyDiffOp::partial(vars, k - 1) -
                                  ops::PolyDiffOp::multiplication(MultiPoly::variable(vars, vars[k - 1])) *
                                      ops::PolyDiffOp::partial(vars, i - 1));
  }
  throw model::ModelError("unknown operator '" + name + "'");
}

std::pair<std::string, std::string> split_pair(const std::string& subject) {
  const auto comma = subject.find(',');
  if (comma == std::string::npos) throw model::ModelError("commutator subject must be 'A,B'");
  return {subject.substr(0, comma), subject.substr(comma + 1)};
}

std::pair<FieldDiffOp, FieldDiffOp> commutator_pair(const CheckSpec& spec) {
  if (spec.subject.starts_with("set")) {
    if (spec.params.n != 3) throw model::ModelError("hydrogen pairs are defined for n = 3");
    if (spec.constants.size() != 2) throw model::ModelError("hydrogen pairs need the constants a and f");
    const auto sets = model::hydrogen_n3_sets(spec.params.gamma, spec.constants[0], spec.constants[1]);
    const std::size_t k = std::stoul(spec.subject.substr(3));
    if (k < 1 || k > sets.size()) throw model::ModelError("hydrogen pairs are numbered 1..4");
    return {sets[k - 1].first, sets[k - 1].second};
  }
  auto [a, b] = split_pair(spec.subject);
  return {named_op(spec, a), named_op(spec, b)};
}

void commutators(const CheckSpec& spec, Tally& tally, bool want_zero) {
  const auto [a, b] = commutator_pair(spec);
  const auto vars = model::cartesian_vars(spec.params.n);
  const unsigned order = op_order(a) + op_order(b);
  SplitMix64 root(spec.seed);
  double best = 0;
  Json best_witness;
  for (unsigned k = 0; k < spec.samples; ++k) {
    SplitMix64 rng = root.split(k);
    const auto pt = signed_point(rng, spec.params.n);
    const MultiPoly poly = random_test_poly(rng, vars);
    const auto f = taylor::lift_polynomial(poly, pt, order);
    const double ab = a.apply(b.apply(f.truncated(order))).value();
    const double ba = b.apply(a.apply(f.truncated(order))).value();
    const double residual = std::abs(ab - ba) / std::max({1.0, std::abs(ab), std::abs(ba)});
    auto describe = [&] {
      return Json{{"point", point_json(pt)}, {"test_function", poly.to_string()}, {"residual", residual}};
    };
    if (want_zero) {
      tally.observe(residual, residual <= spec.tolerance, describe);
    } else if (residual > best || best_witness.is_null()) {
      best = residual;
      best_witness = describe();
    }
  }
  if (!want_zero) {
    // the evidence for a nonzero commutator is its largest observed value
    tally.worst = best;
    tally.failed = !(best >= spec.tolerance);
    tally.witness = best_witness;
  }
}

void commutator_identity(const CheckSpec& spec, Tally& tally) {
  // [Ai, Aj] + 2 H Lij = 0
  auto [ai, aj] = split_pair(spec.subject);
  if (ai.size() < 2 || aj.size() < 2 || ai[0] != 'A' || aj[0] != 'A')
    throw model::ModelError("commutator identity subject must be 'Ai,Aj'");
  const std::string lij = "L" + ai.substr(1) + aj.substr(1);
  const auto A = named_op(spec, ai), B = named_op(spec, aj), H = named_op(spec, "H"), L = named_op(spec, lij);
  const auto vars = model::cartesian_vars(spec.params.n);
  const unsigned order = op_order(A) + op_order(B);
  SplitMix64 root(spec.seed);
  for (unsigned k = 0; k < spec.samples; ++k) {
    SplitMix64 rng = root.split(k);
    const auto pt = signed_point(rng, spec.params.n);
    const MultiPoly poly = random_test_poly(rng, vars);
    const auto f = taylor::lift_polynomial(poly, pt, order);
    const double ab = A.apply(B.apply(f)).value();
    const double ba = B.apply(A.apply(f)).value();
    const double hl = 2 * H.apply(L.apply(f.truncated(op_order(H) + op_order(L)))).value();
    const double residual = std::abs(ab - ba + hl) / std::max({1.0, std::abs(ab), std::abs(ba), std::abs(hl)});
    tally.observe(residual, residual <= spec.tolerance, [&] {
      return Json{{"point", point_json(pt)}, {"test_function", poly.to_string()}, {"residual", residual}};
    });
  }
}

// ------------------------------------------------------------ polynomial side

void tridiagonal(const CheckSpec& spec, Tally& tally) {
  const auto& p = spec.params;
  if (p.n < 3) throw model::ModelError("the gauged Y1 needs n >= 3");
  const auto vars = model::gauged_vars(p.n);
  SplitMix64 rng(spec.seed);
  for (unsigned sample = 0; sample < spec.samples; ++sample) {
    const Rational m = rng.rational(-1, 5, 6);
    const std::vector<Rational> chain(p.n - 1, m);
    const auto Y1 = model::build_gauged_ops(p, chain, Rational(1), spec.mutation).Y1.op;
    auto basis = [&](long a, long b) {
      if (a < 0 || b < 0) return MultiPoly(vars);  // L_{-1} := 0
      return laguerre(static_cast<int>(a), m, "s").embed(vars) * laguerre(static_cast<int>(b), m, "t").embed(vars);
    };
    const long top = static_cast<long>(spec.qmax);
    for (long N1 = 0; N1 <= top; ++N1)
      for (long N2 = 0; N2 <= top; ++N2) {
        const auto c = model::y1_tridiagonal(static_cast<unsigned>(N1), static_cast<unsigned>(N2), m, p.n);
        const MultiPoly got = Y1.apply(basis(N1, N2));
        const MultiPoly expected =
            basis(N1, N2) * c.c_zero + basis(N1 - 1, N2 + 1) * c.c_minus + basis(N1 + 1, N2 - 1) * c.c_plus;
        const double gap = poly_gap(got - expected);
        // flag preservation: the image stays inside polynomials of degree N1 + N2
        const bool in_level = got.degree() <= N1 + N2;
        tally.observe(gap, gap == 0.0 && in_level, [&] {
          return Json{{"N1", N1}, {"N2", N2}, {"m", m.to_string()}, {"got", got.to_string()},
                      {"expected", expected.to_string()}};
        });
      }
  }
}

void spectrum_set(const CheckSpec& spec, Tally& tally) {
  const auto& p = spec.params;
  std::set<Rational> para, sph;
  Json levels = Json::array();
  for (unsigned q = 0; q <= spec.qmax; ++q) {
    const auto a = model::degeneracy(p, System::Parabolic, q);
    const auto b = model::degeneracy(p, System::Spherical, q);
    for (const auto& qn : a) para.insert(model::spectrum(p, qn).E);
    for (const auto& qn : b) sph.insert(model::spectrum(p, qn).E);
    levels.push_back(Json{{"q", q}, {"parabolic", a.size()}, {"spherical", b.size()}});
  }
  std::vector<Rational> diff;
  std::set_symmetric_difference(para.begin(), para.end(), sph.begin(), sph.end(), std::back_inserter(diff));
  tally.worst = static_cast<double>(diff.size());
  tally.failed = !diff.empty();
  tally.witness = Json{{"levels", levels}};
  if (!diff.empty()) tally.witness["unmatched_energy"] = diff.front().to_string();
}

// Counts tuples of linear slots (weight 1) and doubled slots (weight 2) whose weighted sum
// is at most q; one more slot absorbs the remainder.
std::size_t brute_count(unsigned q, std::size_t free_linear, std::size_t doubled) {
  std::size_t count = 0;
  std::vector<unsigned> v(free_linear + doubled, 0);
  auto rec = [&](auto&& self, std::size_t pos, unsigned used) -> void {
    if (pos == v.size()) {
      // the absorbing slot takes whatever is left
      if (used <= q) ++count;
      return;
    }
    const unsigned weight = pos < free_linear ? 1 : 2;
    for (unsigned x = 0; used + weight * x <= q; ++x) self(self, pos + 1, used + weight * x);
  };
  rec(rec, 0, 0);
  return count;
}

void degeneracy_counts(const CheckSpec& spec, Tally& tally) {
  const auto& p = spec.params;
  const std::size_t n = p.n;
  Json levels = Json::array();
  for (unsigned q = 0; q <= spec.qmax; ++q) {
    const auto para = model::degeneracy(p, System::Parabolic, q);
    const auto sph = model::degeneracy(p, System::Spherical, q);
    // parabolic: N1 free, N2 absorbs the rest; spherical: Nr absorbs the rest
    const std::size_t para_brute = brute_count(q, 1, n - 2), sph_brute = brute_count(q, 0, n - 1);
    const std::size_t ordered =
        static_cast<std::size_t>(std::count_if(para.begin(), para.end(), [](const QuantumNumbers& qn) {
          const auto& s = std::get<model::ParabolicQN>(qn);
          return s.N1 <= s.N2;
        }));
    const bool ok = para.size() == para_brute && sph.size() == sph_brute && sph.size() == ordered;
    levels.push_back(Json{{"q", q}, {"parabolic", para.size()}, {"spherical", sph.size()},
                          {"parabolic_N1_le_N2", ordered}});
    tally.observe(ok ? 0.0 : 1.0, ok, [&] { return Json{{"q", q}}; });
  }
  if (!tally.failed) tally.witness = Json{{"levels", levels}};
  else tally.witness["levels"] = levels;
}

void generator_check(const CheckSpec& spec, Tally& tally) {
  const auto& p = spec.params;
  const auto names = model::generator_names(p.n);
  std::set<std::vector<Rational>> seen;
  for (const auto& qn : states(p, System::Parabolic, spec.qmax)) {
    const auto r = model::spectrum(p, qn);
    if (!seen.insert(r.m).second) continue;
    const auto g = model::build_gauged_ops(p, r.m, Rational(-2) * r.sqrt_minus_2E, spec.mutation);
    std::vector<const model::GaugedOp*> all{&g.Qp, &g.Qm, &g.Y1};
    for (const auto& z : g.Z) all.push_back(&z);
    for (const auto* op : all) {
      bool known = true;
      for (const auto& term : op->witness)
        for (const auto& w : term.word) known = known && std::find(names.begin(), names.end(), w) != names.end();
      const auto back = model::recompose(g.vars, op->witness);
      const bool ok = known && back == op->op;
      tally.observe(ok ? 0.0 : 1.0, ok, [&] {
        return Json{{"state", model::to_string(qn)}, {"operator", op->name},
                    {"witness", model::to_string(op->witness)}};
      });
    }
  }
}

}  // namespace

bool is_exact(Kind k) {
  switch (k) {
    case Kind::ExactEigen:
    case Kind::Tridiagonal:
    case Kind::SpectrumSet:
    case Kind::Degeneracy:
    case Kind::GeneratorDecomposition:
      return true;
    default:
      return false;
  }
}

MultiPoly random_test_poly(SplitMix64& rng, const std::vector<std::string>& vars) {
  MultiPoly p(vars);
  for (int t = 0; t < 6; ++t) {
    std::vector<unsigned> e(vars.size(), 0);
    const long degree = rng.integer(0, 4);
    for (long k = 0; k < degree; ++k) ++e[static_cast<std::size_t>(rng.integer(0, static_cast<long>(vars.size()) - 1))];
    p.add_term(MultiIndex(e), rng.rational(-5, 5, 4));
  }
  if (p.is_zero()) p = MultiPoly::constant(vars, Rational(1));
  return p;
}

std::vector<std::vector<Rational>> rational_radius_points(unsigned n, std::size_t count, std::uint64_t seed) {
  // all integer points in [1, bound]^n with a square norm, then a seeded shuffle
  const long bound = n <= 3 ? 9 : n == 4 ? 6 : 4;
  std::vector<std::vector<long>> found;
  std::vector<long> v(n, 1);
  for (;;) {
    long s = 0;
    for (long x : v) s += x * x;
    const long root = std::lround(std::sqrt(static_cast<double>(s)));
    if (root * root == s) found.push_back(v);
    std::size_t i = 0;
    while (i < n && ++v[i] > bound) v[i++] = 1;
    if (i == n) break;
  }
  SplitMix64 rng(seed);
  for (std::size_t i = found.size(); i > 1; --i)
    std::swap(found[i - 1], found[static_cast<std::size_t>(rng.integer(0, static_cast<long>(i) - 1))]);
  if (found.size() > count) found.resize(count);
  std::vector<std::vector<Rational>> out;
  for (const auto& f : found) {
    std::vector<Rational> pt;
    for (long x : f) pt.emplace_back(x);
    out.push_back(std::move(pt));
  }
  return out;
}

CheckReport run_check(const CheckSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  report.spec = spec;
  Tally tally;
  try {
    spec.params.validate();
    if (is_exact(spec.kind) && spec.tolerance != 0) throw model::ModelError("exact checks take tolerance 0");
    switch (spec.kind) {
      case Kind::ExactEigen:
        if (spec.subject == "gauged") exact_gauged(spec, tally);
        else if (cartesian_subject(spec.subject)) exact_cartesian(spec, tally);
        else throw model::ModelError("unknown exact-eigen subject '" + spec.subject + "'");
        break;
      case Kind::NumericEigen: numeric_eigen(spec, tally); break;
      case Kind::CommutatorZero: commutators(spec, tally, true); break;
      case Kind::CommutatorNonzero: commutators(spec, tally, false); break;
      case Kind::CommutatorIdentity: commutator_identity(spec, tally); break;
      case Kind::Tridiagonal: tridiagonal(spec, tally); break;
      case Kind::SpectrumSet: spectrum_set(spec, tally); break;
      case Kind::Degeneracy: degeneracy_counts(spec, tally); break;
      case Kind::GeneratorDecomposition: generator_check(spec, tally); break;
    }
    report.status = tally.failed ? Status::Fail : Status::Pass;
    report.worst_residual = tally.worst;
    report.witness = tally.witness;
  } catch (const std::exception& e) {
    report.status = Status::Error;
    report.worst_residual = 0;
    report.witness = Json{{"error", e.what()}};
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace superint::verify
