#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "superint/verify.hpp"

namespace superint::cli {

using model::ModelParams;
using model::QuantumNumbers;
using model::System;
using verify::Json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  unsigned n = 3;
  Rational gamma{1};
  std::optional<std::vector<Rational>> p;
  System system = System::Parabolic;
  unsigned qmax = 4;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  bool json = false;

  ModelParams params() const {
    ModelParams mp{n, gamma, p.value_or(std::vector<Rational>(n >= 1 ? n - 1 : 0, Rational(0)))};
    if (n < 2) throw UsageError("n must be at least 2");
    if (mp.p.size() != n - 1)
      throw UsageError("p length must be n-1 (got " + std::to_string(mp.p.size()) + " values for n = " +
                       std::to_string(n) + ")");
    if (system == System::Parabolic && n < 3) throw UsageError("parabolic coordinates need n >= 3");
    return mp;
  }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Rational parse_rational(const std::string& text, const std::string& what) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + text + "' is not a rational num/den");
  }
}

std::vector<Rational> parse_rational_list(const std::string& text, const std::string& what) {
  std::vector<Rational> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_rational(item, what));
  return out;
}

System parse_system_arg(const std::string& text) {
  try {
    return model::parse_system(text);
  } catch (const std::exception&) {
    throw UsageError("system must be 'parabolic' or 'spherical'");
  }
}

void apply_config_file(Config& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw UsageError("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  auto text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [key, v] : j.items()) {
    if (key == "n") c.n = v.get<unsigned>();
    else if (key == "gamma") c.gamma = parse_rational(text(v), "gamma");
    else if (key == "p") {
      std::vector<Rational> p;
      if (v.is_array())
        for (const auto& e : v) p.push_back(parse_rational(text(e), "p"));
      else
        p = parse_rational_list(text(v), "p");
      c.p = p;
    } else if (key == "system") c.system = parse_system_arg(v.get<std::string>());
    else if (key == "qmax") c.qmax = v.get<unsigned>();
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "tol") c.tol = v.get<double>();
    else if (key == "format") {
      const auto f = v.get<std::string>();
      if (f != "text" && f != "json") throw UsageError("format must be 'text' or 'json'");
      c.json = f == "json";
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
}

QuantumNumbers parse_qn(const std::string& text, const ModelParams& p, System sys) {
  std::string cleaned;
  for (char ch : text)
    if (ch != '(' && ch != ')' && ch != '[' && ch != ']') cleaned += ch;
  std::vector<unsigned> v;
  for (const auto& item : split(cleaned, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit))
      throw UsageError("quantum numbers must be non-negative integers");
    v.push_back(static_cast<unsigned>(std::stoul(item)));
  }
  if (sys == System::Parabolic) {
    if (v.size() != p.n) throw UsageError("parabolic quantum numbers are N1,N2,J1..J" + std::to_string(p.n - 2));
    return model::ParabolicQN{v[0], v[1], std::vector<unsigned>(v.begin() + 2, v.end())};
  }
  if (v.size() != p.n) throw UsageError("spherical quantum numbers are Nr,J1..J" + std::to_string(p.n - 1));
  return model::SphericalQN{v[0], std::vector<unsigned>(v.begin() + 1, v.end())};
}

std::string join(const std::vector<Rational>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].to_string();
  return out + "]";
}

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

Json params_json(const ModelParams& p) {
  return Json{{"n", p.n}, {"gamma", p.gamma.to_string()}, {"p", rationals(p.p)}};
}

// ------------------------------------------------------------------ commands

int cmd_spectrum(const Config& c, std::ostream& out) {
  const ModelParams p = c.params();
  struct Row {
    QuantumNumbers qn;
    model::EigenvalueRecord r;
  };
  std::vector<Row> rows;
  std::vector<std::pair<unsigned, std::size_t>> levels;
  for (unsigned q = 0; q <= c.qmax; ++q) {
    const auto states = model::degeneracy(p, c.system, q);
    levels.emplace_back(q, states.size());
    for (const auto& qn : states) rows.push_back({qn, model::spectrum(p, qn)});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.r.E != b.r.E) return a.r.E < b.r.E;
    return a.qn < b.qn;
  });

  if (c.json) {
    Json j{{"params", params_json(p)}, {"system", model::to_string(c.system)}, {"rows", Json::array()},
           {"levels", Json::array()}};
    for (const auto& row : rows)
      j["rows"].push_back(Json{{"qn", model::to_string(row.qn)},
                               {"D", row.r.D.to_string()},
                               {"E", row.r.E.to_string()},
                               {"lambda", row.r.lambda.to_string()},
                               {"k", rationals(row.r.k)},
                               {"m", rationals(row.r.m)}});
    for (const auto& [q, count] : levels) j["levels"].push_back(Json{{"q", q}, {"states", count}});
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "# " << p.to_string() << ", " << model::to_string(c.system) << " quantum numbers\n";
  out << std::left << std::setw(22) << "qn" << std::setw(10) << "D" << std::setw(12) << "E" << std::setw(10)
      << "lambda" << std::setw(30) << "k" << "m\n";
  for (const auto& row : rows)
    out << std::setw(22) << model::to_string(row.qn) << std::setw(10) << row.r.D.to_string() << std::setw(12)
        << row.r.E.to_string() << std::setw(10) << row.r.lambda.to_string() << std::setw(30) << join(row.r.k)
        << join(row.r.m) << "\n";
  out << "\n# level  states\n";
  for (const auto& [q, count] : levels) out << std::setw(8) << q << count << "\n";
  return 0;
}

int cmd_eigenfunction(const Config& c, const std::string& qn_text, const std::string& point_text,
                      std::ostream& out) {
  const ModelParams p = c.params();
  if (qn_text.empty()) throw UsageError("eigenfunction needs --qn");
  const auto qn = parse_qn(qn_text, p, c.system);
  model::Eigenfunction psi;
  try {
    psi = model::eigenfunction(p, qn);
  } catch (const model::ModelError& e) {
    throw UsageError(e.what());
  }
  const auto coords = psi.coordinates();
  std::optional<std::vector<double>> point;
  if (!point_text.empty()) {
    std::vector<double> pt;
    for (const auto& item : split(point_text, ',')) pt.push_back(parse_coordinate(item));
    if (pt.size() != p.n) throw UsageError("point needs " + std::to_string(p.n) + " coordinates");
    point = pt;
  }
  const auto gauged = psi.polypart.vars();
  auto scaled = [](const Rational& k, const std::string& v) { return k == Rational(1) ? v : k.to_string() + "*" + v; };
  std::string substitution;
  if (c.system == System::Parabolic) {
    substitution = "s = " + scaled(psi.record.sqrt_minus_2E, "mu^2") + ", t = " + scaled(psi.record.sqrt_minus_2E, "nu^2");
    for (unsigned j = 1; j + 2 <= p.n; ++j)
      substitution += ", z" + std::to_string(j) + " = cos(2*th" + std::to_string(j) + ")";
  } else {
    substitution = "rho = " + scaled(Rational(2) * psi.record.sqrt_minus_2E, "r");
    for (unsigned l = 1; l + 1 <= p.n; ++l)
      substitution += ", z" + std::to_string(l) + " = cos(2*th" + std::to_string(l) + ")";
  }

  double value = 0, jet_value = 0;
  if (point) {
    const auto field = psi.curvilinear();
    value = field.evaluate(*point);
    jet_value = taylor::lift(field, *point, 0).value();
  }
  if (c.json) {
    Json j{{"params", params_json(p)},
           {"system", model::to_string(c.system)},
           {"qn", model::to_string(qn)},
           {"E", psi.record.E.to_string()},
           {"lambda", psi.record.lambda.to_string()},
           {"sqrt_minus_2E", psi.record.sqrt_minus_2E.to_string()},
           {"coordinates", coords},
           {"gauge", psi.gauge_string()},
           {"polypart", psi.polypart.pretty()},
           {"substitution", substitution}};
    if (point) {
      j["point"] = *point;
      j["value"] = value;
      j["value_jet"] = jet_value;
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "state        " << model::to_string(qn) << " (" << model::to_string(c.system) << ")\n";
  out << "E            " << psi.record.E.to_string() << "\n";
  if (c.system == System::Parabolic) out << "lambda       " << psi.record.lambda.to_string() << "\n";
  out << "sqrt(-2E)    " << psi.record.sqrt_minus_2E.to_string() << "\n";
  out << "k            " << join(psi.record.k) << "\n";
  out << "m            " << join(psi.record.m) << "\n";
  out << "gauge        " << psi.gauge_string() << "\n";
  out << "polypart     " << psi.polypart.pretty() << "\n";
  out << "where        " << substitution << "\n";
  if (point) {
    out << std::setprecision(15);
    out << "psi(point)   " << value << "\n";
    out << "psi(jet)     " << jet_value << "\n";
  }
  return 0;
}

int cmd_verify(const Config& c, const std::vector<verify::Selector>& selectors, unsigned threads,
               const std::string& output, std::ostream& out) {
  const ModelParams p = c.params();
  std::vector<verify::CheckSpec> suite;
  std::set<std::string> seen;
  for (auto sel : selectors)
    for (auto& spec : verify::default_suite(p, sel, c.seed, c.qmax))
      if (seen.insert(spec.name).second) suite.push_back(std::move(spec));
  if (c.tol)
    for (auto& spec : suite)
      if (!verify::is_exact(spec.kind) && spec.kind != verify::Kind::CommutatorNonzero) spec.tolerance = *c.tol;
  const auto result = verify::run_suite(suite, threads);

  std::ostringstream text;
  if (c.json) {
    text << verify::to_json(result).dump(2) << "\n";
  } else {
    for (const auto& r : result.reports) {
      text << std::left << std::setw(6) << verify::to_string(r.status) << std::setw(48) << r.spec.name
           << "residual " << std::scientific << std::setprecision(3) << r.worst_residual;
      if (r.spec.kind == verify::Kind::CommutatorNonzero) text << "  (needs >= " << r.spec.tolerance << ")";
      else text << "  (tol " << r.spec.tolerance << ")";
      if (r.status != verify::Status::Pass) text << "  " << r.witness.dump();
      text << std::defaultfloat << "\n";
    }
    text << verify::summary_line(result) << "\n";
  }
  if (output.empty()) {
    out << text.str();
  } else {
    std::ofstream f(output);
    if (!f) throw UsageError("cannot write '" + output + "'");
    f << text.str();
    out << verify::summary_line(result) << "\n";
  }
  return result.ok() ? 0 : 1;
}

}  // namespace

double parse_coordinate(const std::string& text) {
  const auto at = text.find("pi");
  if (at == std::string::npos) return parse_rational(text, "point").to_double();
  std::string coef = text.substr(0, at), rest = text.substr(at + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  Rational factor = coef.empty() ? Rational(1) : coef == "-" ? Rational(-1) : parse_rational(coef, "point");
  if (!rest.empty()) {
    if (rest[0] != '/') throw UsageError("point: cannot read '" + text + "'");
    const Rational den = parse_rational(rest.substr(1), "point");
    if (den.is_zero()) throw UsageError("point: division by zero in '" + text + "'");
    factor /= den;
  }
  return factor.to_double() * std::numbers::pi;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numeric checks for the n-dimensional generalized Coulomb system"};
  app.name("superint");
  app.require_subcommand(1);

  std::string n_text, gamma_text, p_text, system_text, seed_text, tol_text, config_path, qmax_text;
  bool json = false;
  app.add_option("--n", n_text, "dimension n >= 2");
  app.add_option("--gamma", gamma_text, "Coulomb strength as num/den");
  app.add_option("--p", p_text, "comma-separated p_1..p_{n-1}, each num/den");
  app.add_option("--system", system_text, "parabolic | spherical");
  app.add_option("--seed", seed_text, "64-bit seed for sampled checks");
  app.add_option("--tol", tol_text, "override for double-precision tolerances");
  app.add_option("--qmax", qmax_text, "highest quantum level");
  app.add_flag("--json", json, "machine-readable output");
  app.add_option("--config", config_path, "JSON file with the same fields; flags override it");

  auto* spectrum = app.add_subcommand("spectrum", "energies, separation constants and degeneracies");
  auto* eigen = app.add_subcommand("eigenfunction", "gauge factors and polynomial part of one state");
  std::string qn_text, point_text;
  eigen->add_option("--qn", qn_text, "N1,N2,J1.. (parabolic) or Nr,J1.. (spherical)");
  eigen->add_option("--point", point_text, "curvilinear point, angles like pi/5");
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  bool exact = false, numeric = false, comms = false, tri = false, all = false;
  unsigned threads = 0;
  std::string output;
  verify_cmd->add_flag("--exact", exact, "exact rational checks");
  verify_cmd->add_flag("--numeric", numeric, "double-precision eigen checks");
  verify_cmd->add_flag("--commutators", comms, "commutator checks");
  verify_cmd->add_flag("--tridiagonal", tri, "tridiagonal Y1 action");
  verify_cmd->add_flag("--all", all, "every suite (the default)");
  verify_cmd->add_option("--threads", threads, "worker threads, 0 = hardware");
  verify_cmd->add_option("--output", output, "write the report to a file");
  auto* commutators = app.add_subcommand("commutators", "same as verify --commutators");
  commutators->add_option("--threads", threads, "worker threads, 0 = hardware");
  commutators->add_option("--output", output, "write the report to a file");
  for (auto* sub : {spectrum, eigen, verify_cmd, commutators}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    Config c;
    if (!config_path.empty()) apply_config_file(c, config_path);
    if (!n_text.empty()) {
      if (!std::all_of(n_text.begin(), n_text.end(), ::isdigit)) throw UsageError("n must be a natural number");
      c.n = static_cast<unsigned>(std::stoul(n_text));
    }
    if (!gamma_text.empty()) c.gamma = parse_rational(gamma_text, "gamma");
    if (!p_text.empty()) c.p = parse_rational_list(p_text, "p");
    if (!system_text.empty()) c.system = parse_system_arg(system_text);
    if (!seed_text.empty()) {
      try {
        c.seed = std::stoull(seed_text);
      } catch (const std::exception&) {
        throw UsageError("seed must be a 64-bit natural number");
      }
    }
    if (!tol_text.empty()) {
      try {
        c.tol = std::stod(tol_text);
      } catch (const std::exception&) {
        throw UsageError("tol must be a number");
      }
    }
    if (!qmax_text.empty()) c.qmax = static_cast<unsigned>(std::stoul(qmax_text));
    if (json) c.json = true;

    if (spectrum->parsed()) return cmd_spectrum(c, out);
    if (eigen->parsed()) return cmd_eigenfunction(c, qn_text, point_text, out);
    std::vector<verify::Selector> selectors;
    if (commutators->parsed()) {
      selectors.push_back(verify::Selector::Commutators);
    } else {
      if (all || !(exact || numeric || comms || tri)) selectors.push_back(verify::Selector::All);
      if (exact) selectors.push_back(verify::Selector::Exact);
      if (numeric) selectors.push_back(verify::Selector::Numeric);
      if (comms) selectors.push_back(verify::Selector::Commutators);
      if (tri) selectors.push_back(verify::Selector::Tridiagonal);
    }
    return cmd_verify(c, selectors, threads, output, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for more information.\n";
    return 2;
  } catch (const model::ModelError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace superint::cli
