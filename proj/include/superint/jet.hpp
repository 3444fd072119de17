#pragma once

// Truncated multivariate Taylor expansions ("jets") over a generic scalar.
//
// A Jet<S> of order k at base point x0 stores the coefficients c_a of
// prod_i (x_i - x0_i)^{a_i} for every multi-index |a| <= k, i.e. the
// normalization c_a = (d^a f)(x0) / a!. Arithmetic never touches terms of
// degree > k.

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "superint/multipoly.hpp"
#include "superint/rational.hpp"

namespace superint::taylor {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Jets of different shape (arity, order, base point) were combined.
class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Monomial table shared by all jets of one (arity, order). Indices are in
/// graded order, so the layout of order j is a prefix of the layout of any
/// order k > j.
class JetLayout {
 public:
  static constexpr std::uint32_t npos = UINT32_MAX;

  static std::shared_ptr<const JetLayout> get(std::size_t nvars, unsigned order);

  std::size_t nvars() const { return nvars_; }
  unsigned order() const { return order_; }
  std::size_t size() const { return indices_.size(); }
  const MultiIndex& index(std::size_t i) const { return indices_[i]; }
  std::uint32_t find(const MultiIndex& idx) const;
  /// Number of monomials of total degree <= d.
  std::size_t prefix_size(unsigned d) const { return prefix_[d]; }
  /// (i, j, k): monomial i times monomial j lands on k; only degree-admissible pairs.
  const std::vector<std::array<std::uint32_t, 3>>& products() const { return products_; }
  /// Position of index(i) + e_v, or npos if that exceeds the order.
  std::uint32_t raise(std::size_t i, std::size_t v) const { return raise_[i * nvars_ + v]; }

  JetLayout(std::size_t nvars, unsigned order);

 private:
  std::size_t nvars_;
  unsigned order_;
  std::vector<MultiIndex> indices_;
  std::vector<std::size_t> prefix_;
  std::vector<std::array<std::uint32_t, 3>> products_;
  std::vector<std::uint32_t> raise_;
  std::unordered_map<std::uint64_t, std::uint32_t> lookup_;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double from_rational(const Rational& r) { return r.to_double(); }
  static bool is_zero(double v) { return v == 0.0; }
  static double to_double(double v) { return v; }
  static double exp(double v) { return std::exp(v); }
  static double log(double v) {
    if (!(v > 0)) throw DomainError("log of non-positive value");
    return std::log(v);
  }
  static double sin(double v) { return std::sin(v); }
  static double cos(double v) { return std::cos(v); }
  static double pow(double v, const Rational& e) {
    if (e.is_integer()) {
      if (v == 0.0 && e.sign() < 0) throw DomainError("zero to a negative power");
      return std::pow(v, e.to_double());
    }
    if (!(v > 0)) throw DomainError("non-integer power of a non-positive value");
    return std::pow(v, e.to_double());
  }
};

/// Rational scalars: elementary functions are available only where the
/// result is itself rational.
template <>
struct ScalarTraits<Rational> {
  static Rational from_rational(const Rational& r) { return r; }
  static bool is_zero(const Rational& v) { return v.is_zero(); }
  static double to_double(const Rational& v) { return v.to_double(); }
  static Rational exp(const Rational& v) {
    if (!v.is_zero()) throw DomainError("exp(" + v.to_string() + ") is not rational");
    return Rational(1);
  }
  static Rational log(const Rational& v) {
    if (v != Rational(1)) throw DomainError("log(" + v.to_string() + ") is not rational");
    return Rational(0);
  }
  static Rational sin(const Rational& v) {
    if (!v.is_zero()) throw DomainError("sin(" + v.to_string() + ") is not rational");
    return Rational(0);
  }
  static Rational cos(const Rational& v) {
    if (!v.is_zero()) throw DomainError("cos(" + v.to_string() + ") is not rational");
    return Rational(1);
  }
  static Rational pow(const Rational& v, const Rational& e) {
    if (v.is_zero() && e.sign() <= 0) throw DomainError("zero to a non-positive power");
    if (!e.is_integer() && v.sign() <= 0) throw DomainError("non-integer power of a non-positive value");
    auto r = exact_pow(v, e);
    if (!r) throw DomainError(v.to_string() + "^(" + e.to_string() + ") is not rational");
    return *r;
  }
};

template <class S>
class Jet {
 public:
  using Traits = ScalarTraits<S>;

  Jet() = default;
  /// Zero jet.
  Jet(std::vector<S> base, unsigned order)
      : layout_(JetLayout::get(base.size(), order)), base_(std::move(base)), c_(layout_->size(), S(0)) {}

  static Jet constant(std::vector<S> base, unsigned order, const S& value) {
    Jet j(std::move(base), order);
    j.c_[0] = value;
    return j;
  }
  /// The coordinate function x_var.
  static Jet variable(std::vector<S> base, unsigned order, std::size_t var) {
    Jet j(std::move(base), order);
    j.c_[0] = j.base_.at(var);
    if (order > 0) j.c_[j.layout_->find(MultiIndex::unit(j.nvars(), var))] = S(1);
    return j;
  }

  std::size_t nvars() const { return base_.size(); }
  unsigned order() const { return layout_->order(); }
  const std::vector<S>& base() const { return base_; }
  const JetLayout& layout() const { return *layout_; }
  const std::vector<S>& coefficients() const { return c_; }

  const S& value() const { return c_[0]; }
  /// Taylor coefficient of (x - x0)^idx; zero beyond the stored order.
  S coeff(const MultiIndex& idx) const {
    auto k = layout_->find(idx);
    return k == JetLayout::npos ? S(0) : c_[k];
  }
  void set_coeff(const MultiIndex& idx, const S& v) {
    auto k = layout_->find(idx);
    if (k == JetLayout::npos) throw ShapeMismatch("coefficient beyond jet order");
    c_[k] = v;
  }
  /// d^idx f at the base point, i.e. coeff(idx) * idx!.
  S partial(const MultiIndex& idx) const {
    S v = coeff(idx);
    for (std::size_t i = 0; i < idx.arity(); ++i)
      for (unsigned k = 2; k <= idx[i]; ++k) v *= S(static_cast<int>(k));
    return v;
  }
  bool is_zero() const {
    for (const auto& v : c_)
      if (!Traits::is_zero(v)) return false;
    return true;
  }

  Jet truncated(unsigned new_order) const {
    if (new_order > order()) throw ShapeMismatch("cannot truncate a jet to a higher order");
    Jet r(base_, new_order);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = c_[i];
    return r;
  }

  /// d/dx_var; the result has order - 1.
  Jet derivative(std::size_t var) const {
    if (order() == 0) throw ShapeMismatch("cannot differentiate an order-0 jet");
    Jet r(base_, order() - 1);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
      auto up = layout_->raise(i, var);
      r.c_[i] = c_[up] * S(static_cast<int>(r.layout_->index(i)[var] + 1));
    }
    return r;
  }
  Jet derivative(const MultiIndex& idx) const { return derivative(idx, order() - checked_degree(idx)); }
  /// d^idx f truncated to out_order (which must not exceed order - |idx|).
  Jet derivative(const MultiIndex& idx, unsigned out_order) const {
    if (checked_degree(idx) + out_order > order()) throw ShapeMismatch("derivative needs a higher-order jet");
    Jet r(base_, out_order);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
      const MultiIndex& b = r.layout_->index(i);
      S v = c_[layout_->find(b + idx)];
      for (std::size_t var = 0; var < idx.arity(); ++var)
        for (unsigned k = 1; k <= idx[var]; ++k) v *= S(static_cast<int>(b[var] + k));
      r.c_[i] = v;
    }
    return r;
  }

  Jet& operator+=(const Jet& o) {
    align(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    align(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(const S& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) {
    if (b.order() < a.order()) a = a.truncated(b.order());
    return a += b;
  }
  friend Jet operator-(Jet a, const Jet& b) {
    if (b.order() < a.order()) a = a.truncated(b.order());
    return a -= b;
  }
  friend Jet operator-(Jet a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Jet operator*(Jet a, const S& s) { return a *= s; }
  friend Jet operator*(const S& s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, const S& s) {
    a.c_[0] += s;
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    check_compatible(a, b);
    const Jet& lo = a.order() <= b.order() ? a : b;
    Jet r(lo.base_, lo.order());
    const auto& layout = *r.layout_;
    for (const auto& [i, j, k] : layout.products()) r.c_[k] += a.c_[i] * b.c_[j];
    return r;
  }

 private:
  template <class T>
  friend class Jet;

  unsigned checked_degree(const MultiIndex& idx) const {
    if (idx.arity() != nvars()) throw ShapeMismatch("derivative index arity mismatch");
    if (idx.total_degree() > order()) throw ShapeMismatch("derivative order exceeds jet order");
    return idx.total_degree();
  }
  static void check_compatible(const Jet& a, const Jet& b) {
    if (a.nvars() != b.nvars()) throw ShapeMismatch("jet arity mismatch");
    if (a.base_ != b.base_) throw ShapeMismatch("jets expanded at different base points");
  }
  void align(const Jet& o) {
    check_compatible(*this, o);
    if (o.order() < order()) *this = truncated(o.order());
    if (o.order() > order()) return;  // extra terms of o are beyond our order
  }

  std::shared_ptr<const JetLayout> layout_;
  std::vector<S> base_;
  std::vector<S> c_;
};

/// Evaluates sum_j d[j] h^j by Horner's rule, where h = f - f(x0).
template <class S>
Jet<S> compose_series(const Jet<S>& f, const std::vector<S>& d) {
  Jet<S> h = f;
  h.set_coeff(MultiIndex(f.nvars()), S(0));
  Jet<S> acc = Jet<S>::constant(f.base(), f.order(), d.back());
  for (std::size_t j = d.size() - 1; j-- > 0;) acc = acc * h + d[j];
  return acc;
}

template <class S>
Jet<S> reciprocal(const Jet<S>& f) {
  const S a = f.value();
  if (ScalarTraits<S>::is_zero(a)) throw DomainError("reciprocal of a jet with zero value");
  std::vector<S> d(f.order() + 1);
  S inv = S(1) / a;
  S term = inv;
  for (auto& v : d) {
    v = term;
    term = -term * inv;
  }
  return compose_series(f, d);
}

template <class S>
Jet<S> operator/(const Jet<S>& a, const Jet<S>& b) {
  return a * reciprocal(b);
}

/// exp(f - f(x0)): the exponential normalized to value 1; exact for any scalar.
template <class S>
Jet<S> exp_shifted(const Jet<S>& f) {
  std::vector<S> d(f.order() + 1);
  S term(1);
  for (std::size_t j = 0; j < d.size(); ++j) {
    d[j] = term;
    term = term / S(static_cast<int>(j + 1));
  }
  return compose_series(f, d);
}

template <class S>
Jet<S> exp(const Jet<S>& f) {
  return exp_shifted(f) * ScalarTraits<S>::exp(f.value());
}

/// (f / f(x0))^e: the power normalized to value 1; exact for any scalar.
template <class S>
Jet<S> pow_normalized(const Jet<S>& f, const Rational& e) {
  const S a = f.value();
  if (ScalarTraits<S>::is_zero(a)) throw DomainError("power of a jet with zero value");
  if (!e.is_integer() && !(ScalarTraits<S>::to_double(a) > 0))
    throw DomainError("non-integer power of a jet with negative value");
  std::vector<S> d(f.order() + 1);
  S inv = S(1) / a;
  S scale(1);
  for (std::size_t j = 0; j < d.size(); ++j) {
    d[j] = ScalarTraits<S>::from_rational(binomial(e, static_cast<unsigned>(j))) * scale;
    scale *= inv;
  }
  return compose_series(f, d);
}

template <class S>
Jet<S> pow(const Jet<S>& f, const Rational& e) {
  if (e.is_zero()) return Jet<S>::constant(f.base(), f.order(), S(1));
  if (e.is_integer() && e.sign() > 0) {
    unsigned long k = e.numerator().get_ui();
    Jet<S> r = Jet<S>::constant(f.base(), f.order(), S(1)), sq = f;
    for (; k > 0; k >>= 1) {
      if (k & 1) r = r * sq;
      if (k > 1) sq = sq * sq;
    }
    return r;
  }
  return pow_normalized(f, e) * ScalarTraits<S>::pow(f.value(), e);
}

template <class S>
Jet<S> sqrt(const Jet<S>& f) {
  return pow(f, Rational(1, 2));
}

template <class S>
Jet<S> log(const Jet<S>& f) {
  const S a = f.value();
  S base_log = ScalarTraits<S>::log(a);
  std::vector<S> d(f.order() + 1);
  d[0] = base_log;
  S inv = S(1) / a;
  S p = inv;
  for (std::size_t j = 1; j < d.size(); ++j) {
    d[j] = (j % 2 == 1 ? p : -p) / S(static_cast<int>(j));
    p *= inv;
  }
  return compose_series(f, d);
}

namespace detail {

// Coefficients of cos(h) and sin(h) as power series in h.
template <class S>
void trig_series(std::size_t n, std::vector<S>& c, std::vector<S>& s) {
  c.assign(n, S(0));
  s.assign(n, S(0));
  S fact(1);
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) fact *= S(static_cast<int>(j));
    S v = S(1) / fact;
    if (j % 2 == 0) c[j] = (j % 4 == 0) ? v : -v;
    else s[j] = (j % 4 == 1) ? v : -v;
  }
}

}  // namespace detail

template <class S>
Jet<S> sin(const Jet<S>& f) {
  S sa = ScalarTraits<S>::sin(f.value()), ca = ScalarTraits<S>::cos(f.value());
  std::vector<S> c, s;
  detail::trig_series(f.order() + 1, c, s);
  std::vector<S> d(c.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = sa * c[j] + ca * s[j];
  return compose_series(f, d);
}

template <class S>
Jet<S> cos(const Jet<S>& f) {
  S sa = ScalarTraits<S>::sin(f.value()), ca = ScalarTraits<S>::cos(f.value());
  std::vector<S> c, s;
  detail::trig_series(f.order() + 1, c, s);
  std::vector<S> d(c.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = ca * c[j] - sa * s[j];
  return compose_series(f, d);
}

/// Jet of a polynomial at the given base point (exact Taylor shift).
template <class S>
Jet<S> lift_polynomial(const MultiPoly& p, const std::vector<S>& base, unsigned order) {
  if (p.arity() != base.size()) throw ArityMismatch("polynomial arity does not match base point");
  std::vector<Jet<S>> vars;
  vars.reserve(base.size());
  for (std::size_t v = 0; v < base.size(); ++v) vars.push_back(Jet<S>::variable(base, order, v));
  // powers[v][e] = x_v^e, built lazily
  std::vector<std::vector<Jet<S>>> powers(base.size());
  Jet<S> acc(base, order);
  for (const auto& [idx, c] : p.terms()) {
    Jet<S> term = Jet<S>::constant(base, order, ScalarTraits<S>::from_rational(c));
    for (std::size_t v = 0; v < base.size(); ++v) {
      if (idx[v] == 0) continue;
      auto& pv = powers[v];
      if (pv.empty()) pv.push_back(Jet<S>::constant(base, order, S(1)));
      while (pv.size() <= idx[v]) pv.push_back(pv.back() * vars[v]);
      term = term * pv[idx[v]];
    }
    acc += term;
  }
  return acc;
}

}  // namespace superint::taylor
