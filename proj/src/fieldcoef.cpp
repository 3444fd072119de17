#include "superint/fieldcoef.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>

namespace superint::taylor {

struct FieldCoefAccess {
  static FieldCoef make(FieldCoef::Node n) { return FieldCoef(std::make_shared<const FieldCoef::Node>(std::move(n))); }
};

namespace {

using Kind = FieldCoef::Kind;
using Node = FieldCoef::Node;

FieldCoef make_node(Kind k, std::vector<FieldCoef> args, Rational value = Rational(0)) {
  Node n;
  n.kind = k;
  n.args = std::move(args);
  n.value = std::move(value);
  return FieldCoefAccess::make(std::move(n));
}

bool is_identity_args(const Node& n) {
  for (std::size_t i = 0; i < n.args.size(); ++i) {
    const auto& a = n.args[i].node();
    if (a.kind != Kind::Var || a.index != i) return false;
  }
  return true;
}

bool is_atomic(const FieldCoef& f) {
  switch (f.kind()) {
    case Kind::Const:
      return f.constant_value().sign() >= 0 && f.constant_value().is_integer();
    case Kind::Var:
    case Kind::Exp:
    case Kind::Log:
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Poly:
      return true;
    default:
      return false;
  }
}

std::string wrapped(const FieldCoef& f) {
  return is_atomic(f) ? f.to_string() : "(" + f.to_string() + ")";
}

}  // namespace

FieldCoef::FieldCoef() : FieldCoef(Rational(0)) {}

FieldCoef::FieldCoef(const Rational& c) {
  Node n;
  n.kind = Kind::Const;
  n.value = c;
  node_ = std::make_shared<const Node>(std::move(n));
}

FieldCoef FieldCoef::var(std::size_t index, const std::string& name) {
  Node n;
  n.kind = Kind::Var;
  n.index = index;
  n.name = name;
  return FieldCoef(std::make_shared<const Node>(std::move(n)));
}

FieldCoef FieldCoef::poly(const MultiPoly& p) {
  std::vector<FieldCoef> args;
  for (std::size_t i = 0; i < p.arity(); ++i) args.push_back(var(i, p.vars()[i]));
  return compose(p, std::move(args));
}

FieldCoef FieldCoef::compose(const MultiPoly& p, std::vector<FieldCoef> args) {
  if (args.size() != p.arity()) throw ArityMismatch("compose: argument count does not match polynomial arity");
  if (p.degree() <= 0) return FieldCoef(p.constant_term());
  bool all_const = true;
  for (const auto& a : args) all_const = all_const && a.is_constant();
  if (all_const) {
    std::vector<Rational> vals;
    for (const auto& a : args) vals.push_back(a.constant_value());
    return FieldCoef(p.evaluate(std::span<const Rational>(vals)));
  }
  Node n;
  n.kind = Kind::Poly;
  n.args = std::move(args);
  n.poly = std::make_shared<const MultiPoly>(p);
  return FieldCoef(std::make_shared<const Node>(std::move(n)));
}

FieldCoef::Kind FieldCoef::kind() const { return node_->kind; }

const Rational& FieldCoef::constant_value() const {
  if (node_->kind != Kind::Const) throw std::logic_error("field is not constant: " + to_string());
  return node_->value;
}

FieldCoef operator+(const FieldCoef& a, const FieldCoef& b) {
  std::vector<FieldCoef> ops;
  Rational c(0);
  for (const FieldCoef* f : {&a, &b}) {
    if (f->kind() == Kind::Add) {
      for (const auto& x : f->node().args) {
        if (x.is_constant()) c += x.constant_value();
        else ops.push_back(x);
      }
    } else if (f->is_constant()) {
      c += f->constant_value();
    } else {
      ops.push_back(*f);
    }
  }
  if (ops.empty()) return FieldCoef(c);
  if (!c.is_zero()) ops.insert(ops.begin(), FieldCoef(c));
  if (ops.size() == 1) return ops.front();
  return make_node(Kind::Add, std::move(ops));
}

FieldCoef operator-(const FieldCoef& a) { return FieldCoef(Rational(-1)) * a; }
FieldCoef operator-(const FieldCoef& a, const FieldCoef& b) { return a + (-b); }

FieldCoef operator*(const FieldCoef& a, const FieldCoef& b) {
  std::vector<FieldCoef> ops;
  Rational c(1);
  for (const FieldCoef* f : {&a, &b}) {
    if (f->kind() == Kind::Mul) {
      for (const auto& x : f->node().args) {
        if (x.is_constant()) c *= x.constant_value();
        else ops.push_back(x);
      }
    } else if (f->is_constant()) {
      c *= f->constant_value();
    } else {
      ops.push_back(*f);
    }
  }
  if (c.is_zero() || ops.empty()) return FieldCoef(c);
  if (c != Rational(1)) ops.insert(ops.begin(), FieldCoef(c));
  if (ops.size() == 1) return ops.front();
  return make_node(Kind::Mul, std::move(ops));
}

FieldCoef operator/(const FieldCoef& a, const FieldCoef& b) {
  if (b.is_constant()) {
    if (b.constant_value().is_zero()) throw DivisionByZero("field divided by the constant 0");
    return a * FieldCoef(Rational(1) / b.constant_value());
  }
  return a * pow(b, Rational(-1));
}

FieldCoef pow(const FieldCoef& a, const Rational& e) {
  if (e.is_zero()) return FieldCoef(Rational(1));
  if (e == Rational(1)) return a;
  if (a.is_constant()) {
    if (auto r = exact_pow(a.constant_value(), e); r && !(a.constant_value().is_zero() && e.sign() < 0))
      return FieldCoef(*r);
  }
  if (a.kind() == Kind::Pow && e.is_integer()) return pow(a.node().args[0], a.node().value * e);
  return make_node(Kind::Pow, {a}, e);
}

FieldCoef exp(const FieldCoef& a) {
  if (a.is_zero()) return FieldCoef(Rational(1));
  return make_node(Kind::Exp, {a});
}

FieldCoef log(const FieldCoef& a) {
  if (a.is_constant() && a.constant_value() == Rational(1)) return FieldCoef(Rational(0));
  return make_node(Kind::Log, {a});
}

FieldCoef sin(const FieldCoef& a) {
  if (a.is_zero()) return FieldCoef(Rational(0));
  return make_node(Kind::Sin, {a});
}

FieldCoef cos(const FieldCoef& a) {
  if (a.is_zero()) return FieldCoef(Rational(1));
  return make_node(Kind::Cos, {a});
}

bool operator==(const FieldCoef& a, const FieldCoef& b) {
  if (a.node_ == b.node_) return true;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.kind != y.kind || x.value != y.value || x.index != y.index || x.args != y.args) return false;
  if (x.kind == Kind::Poly) return *x.poly == *y.poly;
  return true;
}

double FieldCoef::evaluate(std::span<const double> x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Const:
      return n.value.to_double();
    case Kind::Var:
      return x[n.index];
    case Kind::Add: {
      double s = 0;
      for (const auto& a : n.args) s += a.evaluate(x);
      return s;
    }
    case Kind::Mul: {
      double s = 1;
      for (const auto& a : n.args) s *= a.evaluate(x);
      return s;
    }
    case Kind::Pow:
      return ScalarTraits<double>::pow(n.args[0].evaluate(x), n.value);
    case Kind::Exp:
      return std::exp(n.args[0].evaluate(x));
    case Kind::Log:
      return ScalarTraits<double>::log(n.args[0].evaluate(x));
    case Kind::Sin:
      return std::sin(n.args[0].evaluate(x));
    case Kind::Cos:
      return std::cos(n.args[0].evaluate(x));
    case Kind::Poly: {
      std::vector<double> v;
      v.reserve(n.args.size());
      for (const auto& a : n.args) v.push_back(a.evaluate(x));
      return n.poly->evaluate(std::span<const double>(v));
    }
  }
  return 0;
}

std::string FieldCoef::to_string() const {
  const Node& n = *node_;
  std::ostringstream os;
  switch (n.kind) {
    case Kind::Const:
      return n.value.to_string();
    case Kind::Var:
      return n.name;
    case Kind::Add:
      for (std::size_t i = 0; i < n.args.size(); ++i) os << (i ? " + " : "") << n.args[i].to_string();
      return os.str();
    case Kind::Mul:
      for (std::size_t i = 0; i < n.args.size(); ++i) os << (i ? "*" : "") << wrapped(n.args[i]);
      return os.str();
    case Kind::Pow:
      os << wrapped(n.args[0]) << "^";
      if (n.value.is_integer() && n.value.sign() > 0) os << n.value;
      else os << "(" << n.value << ")";
      return os.str();
    case Kind::Exp:
      return "exp(" + n.args[0].to_string() + ")";
    case Kind::Log:
      return "log(" + n.args[0].to_string() + ")";
    case Kind::Sin:
      return "sin(" + n.args[0].to_string() + ")";
    case Kind::Cos:
      return "cos(" + n.args[0].to_string() + ")";
    case Kind::Poly:
      if (is_identity_args(n)) return "(" + n.poly->pretty() + ")";
      os << "[" << n.poly->pretty() << "](";
      for (std::size_t i = 0; i < n.args.size(); ++i)
        os << (i ? ", " : "") << n.poly->vars()[i] << "=" << n.args[i].to_string();
      os << ")";
      return os.str();
  }
  return "?";
}

FieldCoef square_sum(std::size_t n, std::size_t lo, std::size_t hi, const std::vector<std::string>& names) {
  MultiPoly p(names);
  for (std::size_t i = lo; i < hi; ++i) p.add_term(MultiIndex::unit(n, i, 2), Rational(1));
  return FieldCoef::poly(p);
}

namespace {

// Scalar-specific hooks used by the generic lifter below.
struct DoubleOps {
  using J = Jet<double>;
  using S = double;
  static J constant(const std::vector<S>& b, unsigned k, const Rational& c) { return J::constant(b, k, c.to_double()); }
  static J variable(const std::vector<S>& b, unsigned k, std::size_t i) { return J::variable(b, k, i); }
  static int sign(const J& j) { return j.value() > 0 ? 1 : (j.value() < 0 ? -1 : 0); }
};

struct ExactOps {
  using J = TaggedJet;
  using S = Rational;
  static J constant(const std::vector<S>& b, unsigned k, const Rational& c) {
    return TaggedJet(Jet<Rational>::constant(b, k, c));
  }
  static J variable(const std::vector<S>& b, unsigned k, std::size_t i) {
    return TaggedJet(Jet<Rational>::variable(b, k, i));
  }
  static int sign(const J& j) { return j.rational_value().sign(); }
};

template <class Ops>
class Lifter {
 public:
  using J = typename Ops::J;
  using S = typename Ops::S;

  Lifter(const std::vector<S>& base, unsigned order) : base_(base), order_(order) {}

  J run(const FieldCoef& f) {
    const Node* key = &f.node();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    J out = compute(f);
    memo_.emplace(key, out);
    return out;
  }

 private:
  J compute(const FieldCoef& f) {
    const Node& n = f.node();
    switch (n.kind) {
      case Kind::Const:
        return Ops::constant(base_, order_, n.value);
      case Kind::Var:
        if (n.index >= base_.size()) throw ShapeMismatch("field variable " + n.name + " outside the point");
        return Ops::variable(base_, order_, n.index);
      case Kind::Add: {
        J acc = run(n.args[0]);
        for (std::size_t i = 1; i < n.args.size(); ++i) acc = acc + run(n.args[i]);
        return acc;
      }
      case Kind::Mul: {
        J acc = run(n.args[0]);
        for (std::size_t i = 1; i < n.args.size(); ++i) acc = acc * run(n.args[i]);
        return acc;
      }
      case Kind::Pow: {
        J a = run(n.args[0]);
        int s = Ops::sign(a);
        if (s == 0 && n.value.sign() < 0)
          throw SingularPoint(n.args[0].to_string(), "vanishes under a negative power");
        if (s <= 0 && !n.value.is_integer())
          throw SingularPoint(n.args[0].to_string(), "non-positive under a fractional power");
        return pow(a, n.value);
      }
      case Kind::Exp:
        return exp(run(n.args[0]));
      case Kind::Log: {
        J a = run(n.args[0]);
        if (Ops::sign(a) <= 0) throw SingularPoint(n.args[0].to_string(), "non-positive under log");
        return log(a);
      }
      case Kind::Sin:
        return sin(run(n.args[0]));
      case Kind::Cos:
        return cos(run(n.args[0]));
      case Kind::Poly:
        return lift_poly(n);
    }
    throw std::logic_error("unknown field node");
  }

  J lift_poly(const Node& n) {
    std::vector<J> args;
    args.reserve(n.args.size());
    for (const auto& a : n.args) args.push_back(run(a));
    std::vector<std::vector<J>> powers(args.size());
    J acc = Ops::constant(base_, order_, Rational(0));
    for (const auto& [idx, c] : n.poly->terms()) {
      J term = Ops::constant(base_, order_, c);
      for (std::size_t v = 0; v < args.size(); ++v) {
        if (idx[v] == 0) continue;
        auto& pv = powers[v];
        if (pv.empty()) pv.push_back(args[v]);
        while (pv.size() < idx[v]) pv.push_back(pv.back() * args[v]);
        term = term * pv[idx[v] - 1];
      }
      acc = acc + term;
    }
    return acc;
  }

  const std::vector<S>& base_;
  unsigned order_;
  std::unordered_map<const Node*, J> memo_;
};

}  // namespace

Jet<double> lift(const FieldCoef& f, const std::vector<double>& base, unsigned order) {
  Lifter<DoubleOps> l(base, order);
  return l.run(f);
}

TaggedJet lift_exact(const FieldCoef& f, const std::vector<Rational>& base, unsigned order) {
  Lifter<ExactOps> l(base, order);
  return l.run(f);
}

std::vector<Jet<double>> lift_all(std::span<const FieldCoef> fs, const std::vector<double>& base, unsigned order) {
  Lifter<DoubleOps> l(base, order);
  std::vector<Jet<double>> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(l.run(f));
  return out;
}

std::vector<TaggedJet> lift_all_exact(std::span<const FieldCoef> fs, const std::vector<Rational>& base,
                                      unsigned order) {
  Lifter<ExactOps> l(base, order);
  std::vector<TaggedJet> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(l.run(f));
  return out;
}

}  // namespace superint::taylor
