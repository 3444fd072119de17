#include "superint/operators.hpp"

#include <sstream>

namespace superint::ops {

namespace {

Rational multi_binomial(const MultiIndex& a, const MultiIndex& g) {
  Rational r(1);
  for (std::size_t i = 0; i < a.arity(); ++i) r *= binomial(Rational(static_cast<long>(a[i])), g[i]);
  return r;
}

// Calls fn(g) for every multi-index g <= a componentwise.
template <class Fn>
void for_each_below(const MultiIndex& a, Fn&& fn) {
  std::vector<unsigned> g(a.arity(), 0);
  while (true) {
    fn(MultiIndex(g));
    std::size_t i = 0;
    while (i < g.size() && g[i] == a[i]) g[i++] = 0;
    if (i == g.size()) return;
    ++g[i];
  }
}

}  // namespace

std::string derivative_label(const MultiIndex& idx, const std::vector<std::string>& vars) {
  std::string out = "D[";
  bool first = true;
  for (std::size_t v = 0; v < idx.arity(); ++v)
    for (unsigned k = 0; k < idx[v]; ++k) {
      if (!first) out += ",";
      out += vars[v];
      first = false;
    }
  return out + "]";
}

// ---------------------------------------------------------------- PolyDiffOp

PolyDiffOp PolyDiffOp::identity(std::vector<std::string> vars) {
  PolyDiffOp op(vars);
  op.add_term(MultiIndex(vars.size()), MultiPoly::constant(vars, Rational(1)));
  return op;
}

PolyDiffOp PolyDiffOp::multiplication(const MultiPoly& p) {
  PolyDiffOp op(p.vars());
  op.add_term(MultiIndex(p.arity()), p);
  return op;
}

PolyDiffOp PolyDiffOp::partial(std::vector<std::string> vars, std::size_t var, unsigned times) {
  if (var >= vars.size()) throw ArityMismatch("partial: variable index out of range");
  PolyDiffOp op(vars);
  op.add_term(MultiIndex::unit(vars.size(), var, times), MultiPoly::constant(vars, Rational(1)));
  return op;
}

PolyDiffOp PolyDiffOp::partial(std::vector<std::string> vars, std::string_view name, unsigned times) {
  MultiPoly probe(vars);
  return partial(std::move(vars), probe.var_index(name), times);
}

int PolyDiffOp::order() const {
  int o = -1;
  for (const auto& [d, c] : terms_) o = std::max(o, static_cast<int>(d.total_degree()));
  return o;
}

MultiPoly PolyDiffOp::coefficient(const MultiIndex& d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? MultiPoly(vars_) : it->second;
}

void PolyDiffOp::add_term(const MultiIndex& d, const MultiPoly& coef) {
  if (d.arity() != arity() || coef.vars() != vars_)
    throw ArityMismatch("operator term does not match the operator variables");
  if (coef.is_zero()) return;
  auto [it, inserted] = terms_.emplace(d, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void PolyDiffOp::require_same_vars(const PolyDiffOp& o, const char* op) const {
  if (vars_ != o.vars_) throw ArityMismatch(std::string("operator ") + op + ": variable lists differ");
}

PolyDiffOp& PolyDiffOp::operator+=(const PolyDiffOp& o) {
  require_same_vars(o, "+");
  for (const auto& [d, c] : o.terms_) add_term(d, c);
  return *this;
}

PolyDiffOp& PolyDiffOp::operator-=(const PolyDiffOp& o) {
  require_same_vars(o, "-");
  for (const auto& [d, c] : o.terms_) add_term(d, -c);
  return *this;
}

PolyDiffOp& PolyDiffOp::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [d, p] : terms_) p *= c;
  return *this;
}

// (a D^alpha)(b D^beta) = a sum_{g <= alpha} C(alpha, g) (D^g b) D^{alpha - g + beta}
PolyDiffOp operator*(const PolyDiffOp& a, const PolyDiffOp& b) {
  a.require_same_vars(b, "compose");
  PolyDiffOp out(a.vars_);
  for (const auto& [alpha, ca] : a.terms_) {
    for (const auto& [beta, cb] : b.terms_) {
      for_each_below(alpha, [&](const MultiIndex& g) {
        MultiPoly db = cb.derivative(g);
        if (db.is_zero()) return;
        out.add_term(alpha - g + beta, ca * db * multi_binomial(alpha, g));
      });
    }
  }
  return out;
}

PolyDiffOp compose(const PolyDiffOp& a, const PolyDiffOp& b) { return a * b; }
PolyDiffOp commutator(const PolyDiffOp& a, const PolyDiffOp& b) { return a * b - b * a; }

MultiPoly PolyDiffOp::apply(const MultiPoly& p) const {
  if (p.vars() != vars_) throw ArityMismatch("operator applied to a polynomial in different variables");
  MultiPoly out(vars_);
  for (const auto& [d, c] : terms_) {
    MultiPoly dp = p.derivative(d);
    if (!dp.is_zero()) out += c * dp;
  }
  return out;
}

std::string PolyDiffOp::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : terms_) {
    if (!first) os << " + ";
    os << "(" << c.pretty() << ") · " << derivative_label(d, vars_);
    first = false;
  }
  return os.str();
}

// --------------------------------------------------------------- FieldDiffOp

FieldDiffOp FieldDiffOp::from_poly(const PolyDiffOp& op) {
  FieldDiffOp out(op.vars());
  for (const auto& [d, c] : op.terms()) out.add_term(d, FieldCoef::poly(c));
  return out;
}

FieldDiffOp FieldDiffOp::scalar(std::vector<std::string> vars, const FieldCoef& f) {
  FieldDiffOp out(vars);
  out.add_term(MultiIndex(vars.size()), f);
  return out;
}

int FieldDiffOp::order() const {
  int o = -1;
  for (const auto& [d, c] : terms_) o = std::max(o, static_cast<int>(d.total_degree()));
  return o;
}

FieldCoef FieldDiffOp::coefficient(const MultiIndex& d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? FieldCoef() : it->second;
}

void FieldDiffOp::add_term(const MultiIndex& d, const FieldCoef& coef) {
  if (d.arity() != arity()) throw ArityMismatch("operator term does not match the operator arity");
  if (coef.is_zero()) return;
  auto [it, inserted] = terms_.emplace(d, coef);
  if (!inserted) {
    it->second = it->second + coef;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void FieldDiffOp::require_same_vars(const FieldDiffOp& o) const {
  if (vars_ != o.vars_) throw ArityMismatch("field operators over different variables");
}

FieldDiffOp& FieldDiffOp::operator+=(const FieldDiffOp& o) {
  require_same_vars(o);
  for (const auto& [d, c] : o.terms_) add_term(d, c);
  return *this;
}

FieldDiffOp& FieldDiffOp::operator-=(const FieldDiffOp& o) {
  require_same_vars(o);
  for (const auto& [d, c] : o.terms_) add_term(d, -c);
  return *this;
}

FieldDiffOp operator*(const FieldCoef& f, const FieldDiffOp& op) {
  FieldDiffOp out(op.vars_);
  for (const auto& [d, c] : op.terms_) out.add_term(d, f * c);
  return out;
}

namespace {

template <class J, class Base, class LiftAll>
J apply_generic(const FieldDiffOp& op, const J& f, const Base& base, LiftAll&& lift_all) {
  if (f.nvars() != op.arity()) throw taylor::ShapeMismatch("operator and jet arity differ");
  const int ord = std::max(op.order(), 0);
  if (static_cast<int>(f.order()) < ord)
    throw taylor::ShapeMismatch("insufficient input order: jet order " + std::to_string(f.order()) +
                                " for an operator of order " + std::to_string(ord));
  const unsigned out_order = f.order() - static_cast<unsigned>(ord);
  std::vector<FieldCoef> coefs;
  for (const auto& [d, c] : op.terms()) coefs.push_back(c);
  auto lifted = lift_all(std::span<const FieldCoef>(coefs), base, out_order);
  J acc;
  bool first = true;
  std::size_t i = 0;
  for (const auto& [d, c] : op.terms()) {
    J term = lifted[i++] * f.derivative(d, out_order);
    acc = first ? term : acc + term;
    first = false;
  }
  if (first) return f.truncated(out_order) - f.truncated(out_order);
  return acc;
}

}  // namespace

Jet<double> FieldDiffOp::apply(const Jet<double>& f) const {
  return apply_generic(*this, f, f.base(),
                       [](std::span<const FieldCoef> cs, const std::vector<double>& b, unsigned o) {
                         return taylor::lift_all(cs, b, o);
                       });
}

TaggedJet FieldDiffOp::apply(const TaggedJet& f) const {
  return apply_generic(*this, f, f.base(),
                       [](std::span<const FieldCoef> cs, const std::vector<Rational>& b, unsigned o) {
                         return taylor::lift_all_exact(cs, b, o);
                       });
}

std::string FieldDiffOp::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : terms_) {
    if (!first) os << " + ";
    os << "(" << c.to_string() << ") · " << derivative_label(d, vars_);
    first = false;
  }
  return os.str();
}

Jet<double> commutator_apply(const FieldDiffOp& a, const FieldDiffOp& b, const Jet<double>& f) {
  return a.apply(b.apply(f)) - b.apply(a.apply(f));
}

TaggedJet commutator_apply(const FieldDiffOp& a, const FieldDiffOp& b, const TaggedJet& f) {
  return a.apply(b.apply(f)) - b.apply(a.apply(f));
}

}  // namespace superint::ops
