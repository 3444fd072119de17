#pragma once

// Linear differential operators sum_a c_a(x) D^a with the coefficients to
// the left of the derivatives.
//
// PolyDiffOp has MultiPoly coefficients and forms an exact algebra
// (composition by the Leibniz rule). FieldDiffOp has FieldCoef
// coefficients and can only be applied pointwise to jets.

#include <map>
#include <string>
#include <vector>

#include "superint/fieldcoef.hpp"
#include "superint/jet.hpp"
#include "superint/multipoly.hpp"
#include "superint/tagged_jet.hpp"

namespace superint::ops {

using taylor::FieldCoef;
using taylor::Jet;
using taylor::TaggedJet;

class PolyDiffOp {
 public:
  using TermMap = std::map<MultiIndex, MultiPoly, GradedLess>;

  PolyDiffOp() = default;
  /// The zero operator on the given variables.
  explicit PolyDiffOp(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static PolyDiffOp identity(std::vector<std::string> vars);
  static PolyDiffOp multiplication(const MultiPoly& p);
  static PolyDiffOp partial(std::vector<std::string> vars, std::size_t var, unsigned times = 1);
  static PolyDiffOp partial(std::vector<std::string> vars, std::string_view name, unsigned times = 1);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest derivative order; -1 for the zero operator.
  int order() const;
  MultiPoly coefficient(const MultiIndex& d) const;

  void add_term(const MultiIndex& d, const MultiPoly& coef);

  PolyDiffOp& operator+=(const PolyDiffOp& o);
  PolyDiffOp& operator-=(const PolyDiffOp& o);
  PolyDiffOp& operator*=(const Rational& c);
  friend PolyDiffOp operator+(PolyDiffOp a, const PolyDiffOp& b) { return a += b; }
  friend PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp& b) { return a -= b; }
  friend PolyDiffOp operator-(PolyDiffOp a) { return a *= Rational(-1); }
  friend PolyDiffOp operator*(PolyDiffOp a, const Rational& c) { return a *= c; }
  friend PolyDiffOp operator*(const Rational& c, PolyDiffOp a) { return a *= c; }
  /// Composition: (a * b)(f) = a(b(f)).
  friend PolyDiffOp operator*(const PolyDiffOp& a, const PolyDiffOp& b);
  friend bool operator==(const PolyDiffOp& a, const PolyDiffOp& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  MultiPoly apply(const MultiPoly& p) const;
  std::string to_string() const;

 private:
  void require_same_vars(const PolyDiffOp& o, const char* op) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

PolyDiffOp compose(const PolyDiffOp& a, const PolyDiffOp& b);
PolyDiffOp commutator(const PolyDiffOp& a, const PolyDiffOp& b);

class FieldDiffOp {
 public:
  using TermMap = std::map<MultiIndex, FieldCoef, GradedLess>;

  FieldDiffOp() = default;
  explicit FieldDiffOp(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static FieldDiffOp from_poly(const PolyDiffOp& op);
  /// Multiplication by a field.
  static FieldDiffOp scalar(std::vector<std::string> vars, const FieldCoef& f);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  int order() const;
  FieldCoef coefficient(const MultiIndex& d) const;

  void add_term(const MultiIndex& d, const FieldCoef& coef);

  FieldDiffOp& operator+=(const FieldDiffOp& o);
  FieldDiffOp& operator-=(const FieldDiffOp& o);
  friend FieldDiffOp operator+(FieldDiffOp a, const FieldDiffOp& b) { return a += b; }
  friend FieldDiffOp operator-(FieldDiffOp a, const FieldDiffOp& b) { return a -= b; }
  /// Left multiplication f * op.
  friend FieldDiffOp operator*(const FieldCoef& f, const FieldDiffOp& op);

  /// Result order is f.order() - order().
  Jet<double> apply(const Jet<double>& f) const;
  TaggedJet apply(const TaggedJet& f) const;

  std::string to_string() const;

 private:
  void require_same_vars(const FieldDiffOp& o) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// a(b(f)) - b(a(f)) as a jet of order f.order() - ord(a) - ord(b).
Jet<double> commutator_apply(const FieldDiffOp& a, const FieldDiffOp& b, const Jet<double>& f);
TaggedJet commutator_apply(const FieldDiffOp& a, const FieldDiffOp& b, const TaggedJet& f);

/// Renders D^idx as D[x,x,y].
std::string derivative_label(const MultiIndex& idx, const std::vector<std::string>& vars);

}  // namespace superint::ops
