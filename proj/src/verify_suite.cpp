#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "superint/verify.hpp"

namespace superint::verify {

namespace {

const std::vector<std::pair<Kind, std::string>> kKindNames{
    {Kind::ExactEigen, "exact-eigen"},
    {Kind::NumericEigen, "numeric-eigen"},
    {Kind::CommutatorZero, "commutator-zero"},
    {Kind::CommutatorNonzero, "commutator-nonzero"},
    {Kind::CommutatorIdentity, "commutator-identity"},
    {Kind::Tridiagonal, "tridiagonal"},
    {Kind::SpectrumSet, "spectrum-set"},
    {Kind::Degeneracy, "degeneracy"},
    {Kind::GeneratorDecomposition, "generator-decomposition"},
};

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Json params_json(const CheckSpec& s) {
  Json p = Json::array();
  for (const auto& v : s.params.p) p.push_back(v.to_string());
  Json out{{"n", s.params.n}, {"gamma", s.params.gamma.to_string()}, {"p", p}, {"subject", s.subject},
           {"qmax", s.qmax}, {"samples", s.samples}};
  if (!s.constants.empty()) {
    Json c = Json::array();
    for (const auto& v : s.constants) c.push_back(v.to_string());
    out["constants"] = c;
  }
  out["mutation"] = to_string(s.mutation);
  return out;
}

}  // namespace

std::string to_string(Kind k) {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "?";
}

Kind parse_kind(std::string_view text) {
  for (const auto& [kind, name] : kKindNames)
    if (name == text) return kind;
  throw model::ModelError("unknown check kind '" + std::string(text) + "'");
}

std::string to_string(model::Mutation m) {
  switch (m) {
    case model::Mutation::None: return "none";
    case model::Mutation::FlipCoulombSign: return "flip-coulomb-sign";
    case model::Mutation::PerturbY1: return "perturb-y1";
  }
  return "?";
}

model::Mutation parse_mutation(std::string_view text) {
  for (auto m : {model::Mutation::None, model::Mutation::FlipCoulombSign, model::Mutation::PerturbY1})
    if (to_string(m) == text) return m;
  throw model::ModelError("unknown mutation '" + std::string(text) + "'");
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
  }
  return "?";
}

Selector parse_selector(std::string_view text) {
  if (text == "exact") return Selector::Exact;
  if (text == "numeric") return Selector::Numeric;
  if (text == "commutators") return Selector::Commutators;
  if (text == "tridiagonal") return Selector::Tridiagonal;
  if (text == "all") return Selector::All;
  throw model::ModelError("unknown suite '" + std::string(text) + "'");
}

SuiteResult run_suite(const std::vector<CheckSpec>& suite, unsigned threads) {
  SuiteResult result;
  result.reports.resize(suite.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(suite.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < suite.size(); i = next++) result.reports[i] = run_check(suite[i]);
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  std::stable_sort(result.reports.begin(), result.reports.end(),
                   [](const CheckReport& a, const CheckReport& b) { return a.spec.name < b.spec.name; });
  for (const auto& r : result.reports) {
    if (r.status == Status::Pass) ++result.passed;
    else if (r.status == Status::Fail) ++result.failed;
    else ++result.errors;
  }
  return result;
}

std::vector<CheckSpec> default_suite(const model::ModelParams& params, Selector selector, std::uint64_t seed,
                                     unsigned qmax) {
  params.validate();
  const unsigned n = params.n;
  const bool all = selector == Selector::All;
  std::vector<CheckSpec> out;
  auto add = [&](Kind kind, std::string subject, unsigned q, unsigned samples, double tol,
                 model::ModelParams p = {}) {
    CheckSpec s;
    s.kind = kind;
    s.params = p.p.empty() ? params : std::move(p);
    s.subject = std::move(subject);
    s.qmax = q;
    s.samples = samples;
    s.tolerance = tol;
    const bool coulomb_variant = s.params.p != params.p;
    s.name = to_string(kind) + "/" + (coulomb_variant ? "coulomb/" : "") + s.subject;
    s.seed = SplitMix64(seed).split(fnv1a(s.name)).next();
    out.push_back(std::move(s));
    return &out.back();
  };

  if (all || selector == Selector::Exact) {
    if (n >= 3) {
      add(Kind::ExactEigen, "gauged", qmax, 0, 0);
      add(Kind::ExactEigen, "cartesian-parabolic", std::min(qmax, 2u), 2, 0);
      add(Kind::GeneratorDecomposition, "gauged", qmax, 0, 0);
      add(Kind::SpectrumSet, "energies", 8, 0, 0);
      add(Kind::Degeneracy, "counts", 8, 0, 0);
    }
    add(Kind::ExactEigen, "cartesian-spherical", std::min(qmax, 2u), 2, 0);
  }
  if (all || selector == Selector::Numeric) {
    if (n >= 3) {
      add(Kind::NumericEigen, "parabolic", qmax, 20, kEigenTolerance);
      add(Kind::NumericEigen, "cartesian-parabolic", qmax, 20, kEigenTolerance);
    }
    add(Kind::NumericEigen, "spherical", qmax, 20, kEigenTolerance);
    add(Kind::NumericEigen, "cartesian-spherical", qmax, 20, kEigenTolerance);
  }
  if (all || selector == Selector::Tridiagonal) {
    if (n >= 3) add(Kind::Tridiagonal, "y1", 6, 10, 0);
  }
  if (all || selector == Selector::Commutators) {
    const unsigned jets = 10;
    auto zero = [&](const std::string& a, const std::string& b) {
      add(Kind::CommutatorZero, a + "," + b, 0, jets, kCommutatorTolerance);
    };
    std::vector<std::string> xset{"H"}, yset{"H"};
    if (n >= 3) xset.push_back("X");
    for (unsigned l = 1; l + 2 <= n; ++l) xset.push_back("Z" + std::to_string(l));
    for (unsigned p = 1; p < n; ++p) yset.push_back("Y" + std::to_string(p));
    for (const auto* set : {&xset, &yset})
      for (std::size_t a = 0; a < set->size(); ++a)
        for (std::size_t b = a + 1; b < set->size(); ++b) zero((*set)[a], (*set)[b]);
    for (unsigned l = 1; l + 2 <= n; ++l) zero("Y1", "Z" + std::to_string(l));
    if (n >= 3) {
      add(Kind::CommutatorNonzero, "Y2,Z1", 0, jets, kNonzeroThreshold);
      add(Kind::CommutatorNonzero, "Y1,X", 0, jets, kNonzeroThreshold);
    }
    // Angular momentum and Runge-Lenz relations hold for the pure Coulomb problem.
    model::ModelParams coulomb{n, params.gamma, std::vector<Rational>(n - 1, Rational(0))};
    for (unsigned i = 1; i <= n; ++i) {
      add(Kind::CommutatorZero, "H,A" + std::to_string(i), 0, jets, kCommutatorTolerance, coulomb);
      for (unsigned k = i + 1; k <= n; ++k) {
        const std::string L = "L" + std::to_string(i) + std::to_string(k);
        add(Kind::CommutatorZero, "H," + L, 0, jets, kCommutatorTolerance, coulomb);
        add(Kind::CommutatorIdentity, "A" + std::to_string(i) + ",A" + std::to_string(k), 0, jets,
            kCommutatorTolerance, coulomb);
      }
    }
    if (n == 3) {
      for (unsigned k = 1; k <= 4; ++k) {
        CheckSpec* s = add(Kind::CommutatorZero, "set" + std::to_string(k), 0, 5, kCommutatorTolerance, coulomb);
        s->constants = {Rational(2, 3), Rational(5, 7)};
      }
    }
  }
  return out;
}

Json to_json(const CheckSpec& spec) {
  return Json{{"name", spec.name},
              {"kind", to_string(spec.kind)},
              {"params", params_json(spec)},
              {"seed", spec.seed},
              {"tolerance", spec.tolerance}};
}

Json to_json(const CheckReport& report) {
  Json j = to_json(report.spec);
  j["status"] = to_string(report.status);
  j["worst_residual"] = report.worst_residual;
  j["witness"] = report.witness;
  j["wall_ms"] = report.wall_ms;
  return j;
}

Json to_json(const SuiteResult& result) {
  Json reports = Json::array();
  for (const auto& r : result.reports) reports.push_back(to_json(r));
  return Json{{"summary",
               {{"checks", result.reports.size()},
                {"pass", result.passed},
                {"fail", result.failed},
                {"error", result.errors}}},
              {"reports", reports}};
}

CheckReport report_from_json(const Json& j) {
  CheckReport r;
  auto& s = r.spec;
  s.name = j.at("name").get<std::string>();
  s.kind = parse_kind(j.at("kind").get<std::string>());
  const Json& p = j.at("params");
  s.params.n = p.at("n").get<unsigned>();
  s.params.gamma = Rational::parse(p.at("gamma").get<std::string>());
  for (const auto& v : p.at("p")) s.params.p.push_back(Rational::parse(v.get<std::string>()));
  s.subject = p.at("subject").get<std::string>();
  s.qmax = p.at("qmax").get<unsigned>();
  s.samples = p.at("samples").get<unsigned>();
  if (p.contains("constants"))
    for (const auto& v : p.at("constants")) s.constants.push_back(Rational::parse(v.get<std::string>()));
  s.mutation = parse_mutation(p.at("mutation").get<std::string>());
  s.seed = j.at("seed").get<std::uint64_t>();
  s.tolerance = j.at("tolerance").get<double>();
  const std::string status = j.at("status").get<std::string>();
  if (status == "pass") r.status = Status::Pass;
  else if (status == "fail") r.status = Status::Fail;
  else if (status == "error") r.status = Status::Error;
  else throw model::ModelError("unknown status '" + status + "'");
  r.worst_residual = j.at("worst_residual").get<double>();
  r.witness = j.at("witness");
  r.wall_ms = j.at("wall_ms").get<double>();
  return r;
}

std::string summary_line(const SuiteResult& result) {
  std::ostringstream os;
  os << result.reports.size() << " checks, " << result.passed << " pass";
  if (result.failed) os << ", " << result.failed << " fail";
  if (result.errors) os << ", " << result.errors << " error";
  return os.str();
}

}  // namespace superint::verify
