#include "superint/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace superint {

// ---------------------------------------------------------------- MultiIndex

MultiIndex MultiIndex::unit(std::size_t arity, std::size_t var, unsigned power) {
  MultiIndex m(arity);
  m.e_.at(var) = power;
  return m;
}

unsigned MultiIndex::total_degree() const { return std::accumulate(e_.begin(), e_.end(), 0U); }

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (o.arity() != arity()) throw ArityMismatch("multi-index arity mismatch");
  MultiIndex r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  if (o.arity() != arity()) throw ArityMismatch("multi-index arity mismatch");
  if (!o.divides(*this)) throw std::invalid_argument("multi-index subtraction would go negative");
  MultiIndex r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  return r;
}

bool MultiIndex::divides(const MultiIndex& o) const {
  if (o.arity() != arity()) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

MultiIndex MultiIndex::with(std::size_t var, unsigned value) const {
  MultiIndex r(*this);
  r.e_.at(var) = value;
  return r;
}

bool GradedLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  auto da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  return a < b;
}

// ----------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const Rational& c) {
  MultiPoly p(std::move(vars));
  p.add_term(MultiIndex(p.arity()), c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::string_view name) {
  MultiPoly p(std::move(vars));
  p.add_term(MultiIndex::unit(p.arity(), p.var_index(name)), Rational(1));
  return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, const MultiIndex& idx, const Rational& c) {
  MultiPoly p(std::move(vars));
  if (idx.arity() != p.arity()) throw ArityMismatch("monomial arity does not match variable list");
  p.add_term(idx, c);
  return p;
}

std::size_t MultiPoly::var_index(std::string_view name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - vars_.begin());
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [idx, c] : terms_) d = std::max(d, static_cast<int>(idx.total_degree()));
  return d;
}

int MultiPoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [idx, c] : terms_) d = std::max(d, static_cast<int>(idx[var]));
  return d;
}

Rational MultiPoly::coefficient(const MultiIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::constant_term() const { return coefficient(MultiIndex(arity())); }

void MultiPoly::add_term(const MultiIndex& idx, const Rational& c) {
  if (idx.arity() != arity()) throw ArityMismatch("term arity does not match variable list");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::require_same_vars(const MultiPoly& o, const char* op) const {
  if (vars_ != o.vars_) {
    std::string msg = std::string("polynomial ") + op + ": variable lists differ (";
    for (const auto& v : vars_) msg += v + " ";
    msg += "vs ";
    for (const auto& v : o.vars_) msg += v + " ";
    msg += ")";
    throw ArityMismatch(msg);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  require_same_vars(o, "add");
  for (const auto& [idx, c] : o.terms_) add_term(idx, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  require_same_vars(o, "sub");
  for (const auto& [idx, c] : o.terms_) add_term(idx, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [idx, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.require_same_vars(b, "mul");
  MultiPoly r(a.vars_);
  for (const auto& [ia, ca] : a.terms_)
    for (const auto& [ib, cb] : b.terms_) r.add_term(ia + ib, ca * cb);
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly r = constant(vars_, Rational(1));
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

MultiPoly MultiPoly::derivative(std::size_t var, unsigned times) const {
  if (var >= arity()) throw ArityMismatch("derivative variable out of range");
  MultiPoly r(vars_);
  for (const auto& [idx, c] : terms_) {
    unsigned e = idx[var];
    if (e < times) continue;
    Rational f = c;
    for (unsigned j = 0; j < times; ++j) f *= Rational(static_cast<long>(e - j));
    r.add_term(idx.with(var, e - times), f);
  }
  return r;
}

MultiPoly MultiPoly::derivative(std::string_view name, unsigned times) const {
  return derivative(var_index(name), times);
}

MultiPoly MultiPoly::derivative(const MultiIndex& idx) const {
  if (idx.arity() != arity()) throw ArityMismatch("derivative multi-index arity mismatch");
  MultiPoly r = *this;
  for (std::size_t v = 0; v < arity(); ++v)
    if (idx[v] > 0) r = r.derivative(v, idx[v]);
  return r;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != arity()) throw ArityMismatch("evaluation point arity mismatch");
  Rational acc(0);
  for (const auto& [idx, c] : terms_) {
    Rational t = c;
    for (std::size_t v = 0; v < arity(); ++v)
      if (idx[v] > 0) t *= superint::pow(point[v], static_cast<long>(idx[v]));
    acc += t;
  }
  return acc;
}

double MultiPoly::evaluate(std::span<const double> point) const {
  if (point.size() != arity()) throw ArityMismatch("evaluation point arity mismatch");
  double acc = 0.0;
  for (const auto& [idx, c] : terms_) {
    double t = c.to_double();
    for (std::size_t v = 0; v < arity(); ++v)
      for (unsigned k = 0; k < idx[v]; ++k) t *= point[v];
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::embed(const std::vector<std::string>& new_vars) const {
  MultiPoly r(new_vars);
  std::vector<std::size_t> where(arity());
  for (std::size_t v = 0; v < arity(); ++v) where[v] = r.var_index(vars_[v]);
  for (const auto& [idx, c] : terms_) {
    MultiIndex ni(new_vars.size());
    for (std::size_t v = 0; v < arity(); ++v) ni = ni.with(where[v], ni[where[v]] + idx[v]);
    r.add_term(ni, c);
  }
  return r;
}

MultiPoly MultiPoly::renamed(std::vector<std::string> new_vars) const {
  if (new_vars.size() != arity()) throw ArityMismatch("rename must keep the arity");
  MultiPoly r(std::move(new_vars));
  r.terms_ = terms_;
  return r;
}

namespace {

std::string monomial_text(const std::vector<std::string>& vars, const MultiIndex& idx, const char* sep) {
  std::string out;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (idx[v] == 0) continue;
    if (!out.empty()) out += sep;
    out += vars[v];
    if (idx[v] > 1) out += "^" + std::to_string(idx[v]);
  }
  return out;
}

}  // namespace

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [idx, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.to_string();
    if (idx.total_degree() > 0) out += " * " + monomial_text(vars_, idx, "*");
  }
  return out;
}

std::string MultiPoly::pretty() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<MultiIndex, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return GradedLess{}(a.first, b.first); });
  std::string out;
  for (const auto& [idx, c] : ordered) {
    Rational mag = abs(c);
    if (out.empty()) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    bool constant = idx.total_degree() == 0;
    if (constant) {
      out += mag.to_string();
    } else {
      if (mag != Rational(1)) out += mag.to_string() + "*";
      out += monomial_text(vars_, idx, "*");
    }
  }
  return out;
}

MultiPoly MultiPoly::parse(std::vector<std::string> vars, std::string_view text) {
  MultiPoly p(std::move(vars));
  std::string s(text);
  if (s == "0") return p;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(" + ", pos);
    std::string term = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    std::size_t star = term.find(" * ");
    std::string coef_text, factors;
    if (star != std::string::npos) {
      coef_text = term.substr(0, star);
      factors = term.substr(star + 3);
    } else if (term.find_first_of("^*") == std::string::npos &&
               term.find_first_not_of("+-/0123456789") == std::string::npos) {
      coef_text = term;
    } else {
      // bare monomial, optionally negated
      bool neg = !term.empty() && term[0] == '-';
      coef_text = neg ? "-1" : "1";
      factors = neg ? term.substr(1) : term;
    }
    Rational c = Rational::parse(coef_text);
    MultiIndex idx(p.arity());
    if (!factors.empty()) {
      std::stringstream ss(factors);
      std::string f;
      while (std::getline(ss, f, '*')) {
        auto caret = f.find('^');
        std::string name = f.substr(0, caret);
        unsigned e = caret == std::string::npos ? 1U : static_cast<unsigned>(std::stoul(f.substr(caret + 1)));
        std::size_t v = p.var_index(name);
        idx = idx.with(v, idx[v] + e);
      }
    }
    p.add_term(idx, c);
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  return p;
}

// ------------------------------------------------------ orthogonal polynomials

MultiPoly laguerre(int degree, const Rational& alpha, const std::string& var) {
  std::vector<std::string> vars{var};
  if (degree < 0) return MultiPoly(vars);
  MultiPoly x = MultiPoly::variable(vars, var);
  MultiPoly prev = MultiPoly::constant(vars, Rational(1));
  if (degree == 0) return prev;
  MultiPoly cur = MultiPoly::constant(vars, Rational(1) + alpha) - x;
  // (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}
  for (int k = 1; k < degree; ++k) {
    Rational kk(k);
    MultiPoly next = (MultiPoly::constant(vars, 2 * kk + 1 + alpha) - x) * cur - prev * (kk + alpha);
    next *= Rational(1) / (kk + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

// P_J = sum_s binom(J+a, J-s) binom(J+b, s) ((z-1)/2)^s ((z+1)/2)^(J-s)
MultiPoly jacobi_explicit(int degree, const Rational& a, const Rational& b, const std::string& var) {
  std::vector<std::string> vars{var};
  MultiPoly z = MultiPoly::variable(vars, var);
  MultiPoly minus = (z - MultiPoly::constant(vars, Rational(1))) * Rational(1, 2);
  MultiPoly plus = (z + MultiPoly::constant(vars, Rational(1))) * Rational(1, 2);
  MultiPoly out(vars);
  auto J = static_cast<unsigned>(degree);
  for (unsigned s = 0; s <= J; ++s) {
    Rational c = binomial(Rational(degree) + a, J - s) * binomial(Rational(degree) + b, s);
    out += minus.pow(s) * plus.pow(J - s) * c;
  }
  return out;
}

}  // namespace

MultiPoly jacobi(int degree, const Rational& alpha, const Rational& beta, const std::string& var) {
  std::vector<std::string> vars{var};
  if (degree < 0) return MultiPoly(vars);
  MultiPoly z = MultiPoly::variable(vars, var);
  MultiPoly prev = MultiPoly::constant(vars, Rational(1));
  if (degree == 0) return prev;
  const Rational ab = alpha + beta;
  // P_1 = (a+b+2) z / 2 + (a-b)/2
  MultiPoly cur = z * ((ab + 2) / 2) + MultiPoly::constant(vars, (alpha - beta) / 2);
  for (int k = 2; k <= degree; ++k) {
    Rational kk(k);
    Rational c2k = 2 * kk + ab;
    Rational lead = 2 * kk * (kk + ab) * (c2k - 2);
    if (lead.is_zero()) return jacobi_explicit(degree, alpha, beta, var);
    // 2k(k+a+b)(2k+a+b-2) P_k = (2k+a+b-1)[(2k+a+b)(2k+a+b-2) z + a^2-b^2] P_{k-1}
    //                           - 2(k+a-1)(k+b-1)(2k+a+b) P_{k-2}
    MultiPoly lin = z * (c2k * (c2k - 2)) + MultiPoly::constant(vars, alpha * alpha - beta * beta);
    MultiPoly next = lin * cur * (c2k - 1) - prev * (2 * (kk + alpha - 1) * (kk + beta - 1) * c2k);
    next *= Rational(1) / lead;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace superint
