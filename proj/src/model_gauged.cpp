#include <algorithm>
#include <sstream>

#include "superint/model.hpp"

namespace superint::model {

namespace {

PolyDiffOp var_mul(const std::vector<std::string>& vars, std::size_t i) {
  return PolyDiffOp::multiplication(MultiPoly::variable(vars, vars[i]));
}

PolyDiffOp constant(const std::vector<std::string>& vars, const Rational& c) { return PolyDiffOp::identity(vars) * c; }

std::size_t index_of(const std::vector<std::string>& vars, std::string_view name) {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) throw ModelError("unknown variable '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - vars.begin());
}

GaugedOp finish(std::string name, PolyDiffOp op) {
  GaugedOp g{std::move(name), std::move(op), {}};
  g.witness = decompose(g.op);
  return g;
}

}  // namespace

std::vector<std::string> gauged_vars(unsigned n) {
  std::vector<std::string> v{"s", "t"};
  for (unsigned j = 1; j + 2 <= n; ++j) v.push_back("z" + std::to_string(j));
  return v;
}

GaugedOps build_gauged_ops(const ModelParams& params, const std::vector<Rational>& m, const Rational& prefactor,
                           Mutation mutation) {
  params.validate();
  const unsigned n = params.n;
  if (n < 3) throw ModelError("gauged operators need n >= 3");
  if (m.size() != n - 1) throw ModelError("gauged operators need the chain m_0..m_{n-2}");
  GaugedOps out;
  out.vars = gauged_vars(n);
  out.prefactor = prefactor;
  const auto& v = out.vars;
  const Rational one(1), two(2), half(1, 2);
  const Rational& mt = m.back();

  auto laguerre_core = [&](std::size_t i) {
    PolyDiffOp d = PolyDiffOp::partial(v, i);
    PolyDiffOp x = var_mul(v, i);
    return x * d * d * two + (constant(v, two * (one + mt)) - x * two) * d - constant(v, mt + one);
  };
  out.Qp = finish("Qp", laguerre_core(0));
  out.Qm = finish("Qm", laguerre_core(1));

  for (unsigned l = 1; l <= n - 2; ++l) {
    const std::size_t j = n - l - 1;
    const std::size_t zi = j + 1;
    const Rational& mp = m[l - 1];
    const Rational& p = params.p[l];
    PolyDiffOp d = PolyDiffOp::partial(v, zi);
    PolyDiffOp z = var_mul(v, zi);
    PolyDiffOp op = (constant(v, Rational(4)) - z * z * Rational(4)) * d * d;
    op += (constant(v, Rational(4) * (mp - p + half)) - z * (Rational(4) * (p + mp + Rational(3, 2)))) * d;
    const Rational a = mp + p;
    op += constant(v, Rational(static_cast<long>(l) * (static_cast<long>(l) - 2), 4) - a * (a + one));
    out.Z.push_back(finish("Z" + std::to_string(l), op));
  }

  PolyDiffOp diff = PolyDiffOp::partial(v, 0) - PolyDiffOp::partial(v, 1);
  PolyDiffOp s = var_mul(v, 0), t = var_mul(v, 1);
  PolyDiffOp y = s * t * diff * diff - (s - t) * diff * (mt + one);
  Rational c = -mt * (mt + one) + Rational((static_cast<long>(n) - 3) * (static_cast<long>(n) - 1), 4);
  if (mutation == Mutation::PerturbY1) c += one;
  y += constant(v, c);
  out.Y1 = finish("Y1", y);
  return out;
}

std::vector<std::string> generator_names(unsigned n) {
  std::vector<std::string> g{"ds", "s*ds", "dt", "t*dt", "s*dt", "t*ds"};
  for (unsigned j = 1; j + 2 <= n; ++j) {
    const std::string z = "z" + std::to_string(j);
    g.push_back("d" + z);
    g.push_back(z + "*d" + z);
  }
  return g;
}

PolyDiffOp generator(const std::vector<std::string>& vars, const std::string& name) {
  const auto star = name.find('*');
  const std::string dpart = star == std::string::npos ? name : name.substr(star + 1);
  if (dpart.size() < 2 || dpart[0] != 'd') throw ModelError("malformed generator '" + name + "'");
  PolyDiffOp d = PolyDiffOp::partial(vars, index_of(vars, dpart.substr(1)));
  if (star == std::string::npos) return d;
  return var_mul(vars, index_of(vars, name.substr(0, star))) * d;
}

Witness decompose(const PolyDiffOp& op) {
  const auto& vars = op.vars();
  const std::size_t s = vars.size() >= 2 && vars[0] == "s" && vars[1] == "t" ? 0 : vars.size();
  const std::size_t t = s == 0 ? 1 : vars.size();
  Witness w;
  PolyDiffOp rest = op;
  for (int guard = 0; !rest.is_zero(); ++guard) {
    if (guard > 10000) throw ModelError("generator expansion did not terminate");
    // leading term: highest derivative order, then highest monomial degree
    const MultiIndex* dbest = nullptr;
    const MultiIndex* xbest = nullptr;
    Rational cbest;
    for (const auto& [d, coef] : rest.terms()) {
      for (const auto& [x, c] : coef.terms()) {
        const unsigned dd = d.total_degree(), xd = x.total_degree();
        if (!dbest || dd > dbest->total_degree() || (dd == dbest->total_degree() && xd > xbest->total_degree())) {
          dbest = &d;
          xbest = &x;
          cbest = c;
        }
      }
    }
    std::vector<unsigned> a(vars.size()), b(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
      a[i] = (*xbest)[i];
      b[i] = (*dbest)[i];
    }
    std::vector<std::string> word;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const unsigned k = std::min(a[i], b[i]);
      for (unsigned r = 0; r < k; ++r) word.push_back(vars[i] + "*d" + vars[i]);
      a[i] -= k;
      b[i] -= k;
    }
    if (t < vars.size()) {
      for (; a[s] > 0 && b[t] > 0; --a[s], --b[t]) word.push_back("s*dt");
      for (; a[t] > 0 && b[s] > 0; --a[t], --b[s]) word.push_back("t*ds");
    }
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (a[i] > 0) throw ModelError("term " + rest.to_string() + " is outside the generator algebra");
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (unsigned r = 0; r < b[i]; ++r) word.push_back("d" + vars[i]);
    PolyDiffOp product = PolyDiffOp::identity(vars);
    for (const auto& g : word) product = product * generator(vars, g);
    rest -= product * cbest;
    w.push_back({cbest, std::move(word)});
  }
  return w;
}

PolyDiffOp recompose(const std::vector<std::string>& vars, const Witness& w) {
  PolyDiffOp out(vars);
  for (const auto& term : w) {
    PolyDiffOp product = PolyDiffOp::identity(vars);
    for (const auto& g : term.word) product = product * generator(vars, g);
    out += product * term.coef;
  }
  return out;
}

std::string to_string(const Witness& w) {
  if (w.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << " + ";
    os << "(" << w[i].coef.to_string() << ")";
    if (w[i].word.empty()) os << "·1";
    for (const auto& g : w[i].word) os << "·[" << g << "]";
  }
  return os.str();
}

Tridiagonal y1_tridiagonal(unsigned N1, unsigned N2, const Rational& m, unsigned n) {
  const Rational a(static_cast<long>(N1)), b(static_cast<long>(N2)), one(1);
  Tridiagonal out;
  out.c_zero = -(Rational(2) * a * b + (a + b + m) * (m + one)) +
               Rational((static_cast<long>(n) - 3) * (static_cast<long>(n) - 1), 4);
  out.c_minus = (a + m) * (b + one);
  out.c_plus = (a + one) * (b + m);
  return out;
}

}  // namespace superint::model
