#include <numeric>
#include <sstream>

#include "superint/model.hpp"

namespace superint::model {

namespace {

const Rational kHalf(1, 2);

Rational R(long v) { return Rational(v); }
Rational R(unsigned v) { return Rational(static_cast<long>(v)); }

unsigned sum(const std::vector<unsigned>& v) { return std::accumulate(v.begin(), v.end(), 0U); }

Rational sum(const std::vector<Rational>& v) {
  Rational s(0);
  for (const auto& x : v) s += x;
  return s;
}

std::string th(std::size_t j) { return "th" + std::to_string(j); }

FieldCoef var_named(const std::vector<std::string>& vars, const std::string& name) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return FieldCoef::var(i, name);
  throw ModelError("unknown coordinate " + name);
}

// Sum of squares of 1-based Cartesian coordinates lo..hi.
FieldCoef sq(unsigned n, std::size_t lo, std::size_t hi) {
  return taylor::square_sum(n, lo - 1, hi, cartesian_vars(n));
}

FieldCoef x(unsigned n, std::size_t i) { return FieldCoef::var(i - 1, cartesian_vars(n)[i - 1]); }

}  // namespace

std::string to_string(System s) { return s == System::Parabolic ? "parabolic" : "spherical"; }

System parse_system(std::string_view text) {
  if (text == "parabolic") return System::Parabolic;
  if (text == "spherical") return System::Spherical;
  throw ModelError("unknown coordinate system '" + std::string(text) + "'");
}

void ModelParams::validate() const {
  if (n < 2) throw ModelError("dimension n must be at least 2");
  if (p.size() != n - 1)
    throw ModelError("p length must be n-1 = " + std::to_string(n - 1) + ", got " + std::to_string(p.size()));
}

bool ModelParams::pure_coulomb() const {
  for (std::size_t i = 1; i <= p.size(); ++i)
    if (!beta(i).is_zero()) return false;
  return true;
}

std::string ModelParams::to_string() const {
  std::ostringstream os;
  os << "n=" << n << " gamma=" << gamma << " p=(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

std::string to_string(const QuantumNumbers& qn) {
  std::ostringstream os;
  auto list = [&](const std::vector<unsigned>& J) {
    os << "[";
    for (std::size_t i = 0; i < J.size(); ++i) os << (i ? "," : "") << J[i];
    os << "]";
  };
  if (const auto* pq = std::get_if<ParabolicQN>(&qn)) {
    os << "(" << pq->N1 << "," << pq->N2 << ",";
    list(pq->J);
  } else {
    const auto& sq = std::get<SphericalQN>(qn);
    os << "(" << sq.Nr << ",";
    list(sq.J);
  }
  os << ")";
  return os.str();
}

System system_of(const QuantumNumbers& qn) {
  return std::holds_alternative<ParabolicQN>(qn) ? System::Parabolic : System::Spherical;
}

unsigned level(const QuantumNumbers& qn) {
  if (const auto* pq = std::get_if<ParabolicQN>(&qn)) return pq->N1 + pq->N2 + 2 * sum(pq->J);
  const auto& s = std::get<SphericalQN>(qn);
  return s.Nr + 2 * sum(s.J);
}

EigenvalueRecord spectrum(const ModelParams& params, const QuantumNumbers& qn) {
  params.validate();
  const unsigned n = params.n;
  EigenvalueRecord rec;
  Rational D;
  if (const auto* pq = std::get_if<ParabolicQN>(&qn)) {
    if (n < 3) throw ModelError("parabolic coordinates need n >= 3");
    if (pq->J.size() != n - 2) throw ModelError("parabolic J must have n-2 = " + std::to_string(n - 2) + " entries");
    rec.m.push_back(params.p[0] - kHalf);
    for (unsigned l = 1; l <= n - 2; ++l)
      rec.m.push_back(rec.m.back() + R(2 * pq->J[l - 1]) + params.p[l] + kHalf);
    for (unsigned l = 0; l <= n - 2; ++l) {
      Rational a = (R(static_cast<long>(l)) - R(1L)) / R(2L);
      rec.k.push_back(a * a - rec.m[l] * rec.m[l]);
    }
    D = R(pq->N1 + pq->N2 + 2 * sum(pq->J)) + sum(params.p) + R(static_cast<long>(n) - 1) / R(2L);
  } else {
    const auto& sq = std::get<SphericalQN>(qn);
    if (sq.J.size() != n - 1) throw ModelError("spherical J must have n-1 = " + std::to_string(n - 1) + " entries");
    for (unsigned l = 1; l <= n; ++l) {
      Rational m = R(static_cast<long>(n) - static_cast<long>(l) - 1) / R(2L);
      for (unsigned i = l; i <= n - 1; ++i) m += R(2 * sq.J[i - 1]) + params.p[i - 1];
      rec.m.push_back(m);
    }
    for (unsigned l = 1; l <= n - 1; ++l) {
      Rational a = R(static_cast<long>(n) - static_cast<long>(l) - 1) / R(2L);
      rec.k.push_back(a * a - rec.m[l - 1] * rec.m[l - 1]);
    }
    D = R(sq.Nr + 2 * sum(sq.J)) + sum(params.p) + R(static_cast<long>(n) - 1) / R(2L);
  }
  if (D.sign() <= 0) throw ModelError("unbound state parameters: principal denominator D = " + D.to_string());
  if (params.gamma.sign() <= 0) throw ModelError("unbound state parameters: gamma must be positive");
  rec.D = D;
  rec.sqrt_minus_2E = params.gamma / D;
  rec.E = -params.gamma * params.gamma / (R(2L) * D * D);
  if (const auto* pq = std::get_if<ParabolicQN>(&qn))
    rec.lambda = params.gamma * (R(pq->N1) - R(pq->N2)) / D;
  return rec;
}

std::string GaugeFactor::to_string() const {
  std::ostringstream os;
  auto exp_text = [&]() { return "(" + exponent.to_string() + ")"; };
  switch (kind) {
    case Kind::Power:
      os << "(" << variable << ")^" << exp_text();
      break;
    case Kind::SinPower:
      os << "sin(" << variable << ")^" << exp_text();
      break;
    case Kind::CosPower:
      os << "cos(" << variable << ")^" << exp_text();
      break;
    case Kind::Exponential:
      os << "exp(" << exp_text() << "*(" << variable << "))";
      break;
  }
  return os.str();
}

std::vector<std::string> Eigenfunction::coordinates() const {
  return system == System::Parabolic ? parabolic_vars(params.n) : spherical_vars(params.n);
}

std::string Eigenfunction::gauge_string() const {
  std::string out;
  for (const auto& g : gauge) {
    if (g.kind != GaugeFactor::Kind::Exponential && g.exponent.is_zero()) continue;
    if (!out.empty()) out += " * ";
    out += g.to_string();
  }
  return out.empty() ? "1" : out;
}

Eigenfunction eigenfunction(const ModelParams& params, const QuantumNumbers& qn) {
  Eigenfunction ef{system_of(qn), params, qn, spectrum(params, qn), {}, MultiPoly()};
  const unsigned n = params.n;
  const auto& rec = ef.record;
  const Rational kappa = rec.sqrt_minus_2E;
  const auto gv = ef.system == System::Parabolic ? gauged_vars(n) : [&] {
    std::vector<std::string> v{"rho"};
    for (unsigned l = 1; l <= n - 1; ++l) v.push_back("z" + std::to_string(l));
    return v;
  }();
  using K = GaugeFactor::Kind;

  if (const auto* pq = std::get_if<ParabolicQN>(&qn)) {
    const Rational mtop = rec.m[n - 2];
    Rational sigma = sum(params.p);
    for (unsigned j : pq->J) sigma += R(2 * j);
    ef.gauge.push_back({K::Power, "mu*nu", sigma});
    ef.gauge.push_back({K::Exponential, "mu^2+nu^2", -kappa / R(2L)});
    MultiPoly poly = laguerre(static_cast<int>(pq->N1), mtop, "s").embed(gv) *
                     laguerre(static_cast<int>(pq->N2), mtop, "t").embed(gv);
    for (unsigned l = 1; l <= n - 2; ++l) {
      const std::size_t j = n - l - 1;
      const Rational& pl1 = params.p[l];
      ef.gauge.push_back({K::SinPower, th(j), pl1});
      ef.gauge.push_back({K::CosPower, th(j), rec.m[l - 1] + R(1L) - Rational(static_cast<long>(l), 2)});
      poly = poly * jacobi(static_cast<int>(pq->J[l - 1]), pl1 - kHalf, rec.m[l - 1], "z" + std::to_string(j)).embed(gv);
    }
    ef.polypart = poly;
  } else {
    const auto& sq = std::get<SphericalQN>(qn);
    const Rational m1 = rec.m[0];
    ef.gauge.push_back({K::Power, "r", m1 - Rational(static_cast<long>(n) - 2, 2)});
    ef.gauge.push_back({K::Exponential, "r", -kappa});
    MultiPoly poly = laguerre(static_cast<int>(sq.Nr), R(2L) * m1, "rho").embed(gv);
    for (unsigned l = 1; l <= n - 1; ++l) {
      const Rational& ml1 = rec.m[l];  // m_{l+1}
      const Rational& pl = params.p[l - 1];
      ef.gauge.push_back({K::SinPower, th(l), ml1 + R(1L) - Rational(static_cast<long>(n - l), 2)});
      ef.gauge.push_back({K::CosPower, th(l), pl});
      poly = poly * jacobi(static_cast<int>(sq.J[l - 1]), ml1, pl - kHalf, "z" + std::to_string(l)).embed(gv);
    }
    ef.polypart = poly;
  }
  return ef;
}

Eigenfunction Eigenfunction::with_polypart(MultiPoly p) const {
  if (p.vars() != polypart.vars()) throw ModelError("polynomial part must use the gauged variables");
  Eigenfunction out = *this;
  out.polypart = std::move(p);
  return out;
}

FieldCoef Eigenfunction::curvilinear() const {
  const auto vars = coordinates();
  const unsigned n = params.n;
  const Rational kappa = record.sqrt_minus_2E;
  FieldCoef psi(1);
  for (const auto& g : gauge) {
    switch (g.kind) {
      case GaugeFactor::Kind::Power:
        if (g.variable == "mu*nu")
          psi *= pow(var_named(vars, "mu"), g.exponent) * pow(var_named(vars, "nu"), g.exponent);
        else
          psi *= pow(var_named(vars, g.variable), g.exponent);
        break;
      case GaugeFactor::Kind::SinPower:
        psi *= pow(sin(var_named(vars, g.variable)), g.exponent);
        break;
      case GaugeFactor::Kind::CosPower:
        psi *= pow(cos(var_named(vars, g.variable)), g.exponent);
        break;
      case GaugeFactor::Kind::Exponential: {
        FieldCoef arg = g.variable == "r" ? var_named(vars, "r")
                                          : var_named(vars, "mu") * var_named(vars, "mu") +
                                                var_named(vars, "nu") * var_named(vars, "nu");
        psi *= exp(FieldCoef(g.exponent) * arg);
        break;
      }
    }
  }
  std::vector<FieldCoef> args;
  if (system == System::Parabolic) {
    FieldCoef mu = var_named(vars, "mu"), nu = var_named(vars, "nu");
    args.push_back(FieldCoef(kappa) * mu * mu);
    args.push_back(FieldCoef(kappa) * nu * nu);
    for (unsigned j = 1; j <= n - 2; ++j) args.push_back(cos(FieldCoef(2) * var_named(vars, th(j))));
  } else {
    args.push_back(FieldCoef(R(2L) * kappa) * var_named(vars, "r"));
    for (unsigned l = 1; l <= n - 1; ++l) args.push_back(cos(FieldCoef(2) * var_named(vars, th(l))));
  }
  return psi * FieldCoef::compose(polypart, std::move(args));
}

FieldCoef Eigenfunction::cartesian() const {
  const unsigned n = params.n;
  const Rational kappa = record.sqrt_minus_2E;
  const FieldCoef r = cartesian_radius(n);
  FieldCoef psi = exp(FieldCoef(-kappa) * r);
  std::vector<FieldCoef> args;
  if (system == System::Parabolic) {
    // rho_j^2 = x_1^2 + ... + x_{n-j}^2; mu nu = rho_1
    auto rho2 = [&](std::size_t j) { return j == n - 1 ? x(n, 1) * x(n, 1) : sq(n, 1, n - j); };
    for (const auto& g : gauge) {
      const Rational& e = g.exponent;
      if (g.kind == GaugeFactor::Kind::Power) {
        psi *= pow(rho2(1), e / R(2L));
      } else if (g.kind == GaugeFactor::Kind::SinPower || g.kind == GaugeFactor::Kind::CosPower) {
        const std::size_t j = std::stoul(g.variable.substr(2));
        FieldCoef num = g.kind == GaugeFactor::Kind::SinPower ? pow(x(n, n - j), e)
                        : j == n - 2                            ? pow(x(n, 1), e)
                                                                : pow(rho2(j + 1), e / R(2L));
        psi *= num * pow(rho2(j), -e / R(2L));
      }
    }
    args.push_back(FieldCoef(kappa) * (r + x(n, n)));
    args.push_back(FieldCoef(kappa) * (r - x(n, n)));
    for (std::size_t j = 1; j <= n - 2; ++j)
      args.push_back((rho2(j + 1) - x(n, n - j) * x(n, n - j)) / rho2(j));
  } else {
    // R_l^2 = x_l^2 + ... + x_n^2
    auto big2 = [&](std::size_t l) { return sq(n, l, n); };
    for (const auto& g : gauge) {
      const Rational& e = g.exponent;
      if (g.kind == GaugeFactor::Kind::Power) {
        psi *= pow(big2(1), e / R(2L));
      } else if (g.kind == GaugeFactor::Kind::SinPower) {
        const std::size_t l = std::stoul(g.variable.substr(2));
        FieldCoef num = l == n - 1 ? pow(x(n, n), e) : pow(big2(l + 1), e / R(2L));
        psi *= num * pow(big2(l), -e / R(2L));
      } else if (g.kind == GaugeFactor::Kind::CosPower) {
        const std::size_t l = std::stoul(g.variable.substr(2));
        psi *= pow(x(n, l), e) * pow(big2(l), -e / R(2L));
      }
    }
    args.push_back(FieldCoef(R(2L) * kappa) * r);
    for (std::size_t l = 1; l <= n - 1; ++l)
      args.push_back((x(n, l) * x(n, l) - big2(l + 1)) / big2(l));
  }
  return psi * FieldCoef::compose(polypart, std::move(args));
}

std::vector<QuantumNumbers> degeneracy(const ModelParams& params, System system, unsigned q) {
  params.validate();
  if (system == System::Parabolic && params.n < 3) throw ModelError("parabolic coordinates need n >= 3");
  const std::size_t nj = system == System::Parabolic ? params.n - 2 : params.n - 1;
  std::vector<QuantumNumbers> out;
  std::vector<unsigned> J(nj, 0);
  // J vectors with 2 sum J <= q, in lexicographic order
  auto visit = [&](auto&& self, std::size_t pos, unsigned budget) -> void {
    if (pos == nj) {
      const unsigned rest = q - 2 * sum(J);
      if (system == System::Parabolic) {
        for (unsigned N1 = 0; N1 <= rest; ++N1) out.push_back(ParabolicQN{N1, rest - N1, J});
      } else {
        out.push_back(SphericalQN{rest, J});
      }
      return;
    }
    for (unsigned j = 0; 2 * j <= budget; ++j) {
      J[pos] = j;
      self(self, pos + 1, budget - 2 * j);
    }
    J[pos] = 0;
  };
  visit(visit, 0, q);
  return out;
}

}  // namespace superint::model
