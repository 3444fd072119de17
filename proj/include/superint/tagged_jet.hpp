#pragma once

// Exact jets for functions that are rational up to one irrational constant.
//
// Gauge factors such as e^{-k r} or (x1^2+x2^2)^{p/2} have Taylor
// coefficients of the form  C * q_a  with q_a rational and a single
// irrational constant C = prod_p p^{f_p} * e^{a}. A TaggedJet stores the
// rational jet q and the canonical tag C. Sums require equal tags, products
// multiply tags, so linear operators applied to such functions stay exact.

#include <map>
#include <string>
#include <utility>

#include "superint/jet.hpp"

namespace superint::taylor {

/// Canonical positive constant prod_p p^{f_p} * e^{a} with 0 < f_p < 1.
/// Integer parts of prime exponents are always moved into a rational
/// cofactor, so equal tags mean equal constants (up to the trial-division
/// bound used to split bases into primes).
class SurdTag {
 public:
  SurdTag() = default;

  /// base^e for base > 0, as (tag, rational cofactor).
  static std::pair<SurdTag, Rational> power_of(const Rational& base, const Rational& e);
  static SurdTag exponential(const Rational& a);

  std::pair<SurdTag, Rational> times(const SurdTag& o) const;
  std::pair<SurdTag, Rational> raised(const Rational& e) const;

  bool is_trivial() const { return primes_.empty() && exp_arg_.is_zero(); }
  double log_value() const;
  std::string to_string() const;

  friend bool operator==(const SurdTag& a, const SurdTag& b) {
    return a.primes_ == b.primes_ && a.exp_arg_ == b.exp_arg_;
  }

 private:
  /// Adds e to the exponent of prime; returns the integer power carried out.
  static mpz_class carry(std::map<mpz_class, Rational>& primes, const mpz_class& prime, const Rational& e,
                         Rational& cofactor);

  std::map<mpz_class, Rational> primes_;
  Rational exp_arg_;
};

class TaggedJet {
 public:
  TaggedJet() = default;
  explicit TaggedJet(Jet<Rational> jet, SurdTag tag = {}) : jet_(std::move(jet)), tag_(std::move(tag)) {}

  const Jet<Rational>& jet() const { return jet_; }
  const SurdTag& tag() const { return tag_; }
  std::size_t nvars() const { return jet_.nvars(); }
  unsigned order() const { return jet_.order(); }
  const std::vector<Rational>& base() const { return jet_.base(); }
  bool is_zero() const { return jet_.is_zero(); }
  /// Rational part of the value (the true value is this times the tag).
  const Rational& rational_value() const { return jet_.value(); }
  double value_double() const;

  TaggedJet truncated(unsigned order) const { return TaggedJet(jet_.truncated(order), tag_); }
  TaggedJet derivative(std::size_t var) const { return TaggedJet(jet_.derivative(var), tag_); }
  TaggedJet derivative(const MultiIndex& idx) const { return TaggedJet(jet_.derivative(idx), tag_); }
  TaggedJet derivative(const MultiIndex& idx, unsigned out_order) const {
    return TaggedJet(jet_.derivative(idx, out_order), tag_);
  }

  friend TaggedJet operator+(const TaggedJet& a, const TaggedJet& b);
  friend TaggedJet operator-(const TaggedJet& a, const TaggedJet& b);
  friend TaggedJet operator-(const TaggedJet& a) { return TaggedJet(-a.jet_, a.tag_); }
  friend TaggedJet operator*(const TaggedJet& a, const TaggedJet& b);
  friend TaggedJet operator*(const TaggedJet& a, const Rational& c) { return TaggedJet(a.jet_ * c, a.tag_); }
  friend TaggedJet operator*(const Rational& c, const TaggedJet& a) { return TaggedJet(a.jet_ * c, a.tag_); }

 private:
  Jet<Rational> jet_;
  SurdTag tag_;
};

TaggedJet reciprocal(const TaggedJet& f);
TaggedJet operator/(const TaggedJet& a, const TaggedJet& b);
TaggedJet pow(const TaggedJet& f, const Rational& e);
TaggedJet sqrt(const TaggedJet& f);
/// Requires an untagged argument.
TaggedJet exp(const TaggedJet& f);
/// Requires an untagged argument with rational log (value 1).
TaggedJet log(const TaggedJet& f);
/// Require an untagged argument with value 0.
TaggedJet sin(const TaggedJet& f);
TaggedJet cos(const TaggedJet& f);

}  // namespace superint::taylor
