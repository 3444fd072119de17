#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "superint/rational.hpp"

namespace superint {

/// Exponent vector of fixed arity.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t arity) : e_(arity, 0) {}
  MultiIndex(std::initializer_list<unsigned> e) : e_(e) {}
  explicit MultiIndex(std::vector<unsigned> e) : e_(std::move(e)) {}

  static MultiIndex unit(std::size_t arity, std::size_t var, unsigned power = 1);

  std::size_t arity() const { return e_.size(); }
  unsigned operator[](std::size_t i) const { return e_[i]; }
  unsigned total_degree() const;
  const std::vector<unsigned>& exponents() const { return e_; }

  /// Componentwise sum; arities must agree.
  MultiIndex operator+(const MultiIndex& o) const;
  /// Componentwise difference; requires o <= *this componentwise.
  MultiIndex operator-(const MultiIndex& o) const;
  bool divides(const MultiIndex& o) const;  // *this <= o componentwise
  MultiIndex with(std::size_t var, unsigned value) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<unsigned> e_;
};

/// Graded-lex order: total degree first, then lexicographic.
struct GradedLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sparse multivariate polynomial over Rational. Terms are keyed by exponent
/// vectors in the order of the declared variable list; no stored coefficient
/// is zero, so polynomial equality is map equality.
class MultiPoly {
 public:
  using TermMap = std::map<MultiIndex, Rational>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars);

  static MultiPoly constant(std::vector<std::string> vars, const Rational& c);
  static MultiPoly variable(std::vector<std::string> vars, std::string_view name);
  static MultiPoly monomial(std::vector<std::string> vars, const MultiIndex& idx, const Rational& c);

  std::size_t arity() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t var_index(std::string_view name) const;
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;
  Rational coefficient(const MultiIndex& idx) const;
  /// Constant term.
  Rational constant_term() const;

  void add_term(const MultiIndex& idx, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned k) const;
  MultiPoly derivative(std::size_t var, unsigned times = 1) const;
  MultiPoly derivative(std::string_view name, unsigned times = 1) const;
  /// Mixed partial derivative ∂^idx.
  MultiPoly derivative(const MultiIndex& idx) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Re-expresses the polynomial over a superset variable list (matched by name).
  MultiPoly embed(const std::vector<std::string>& new_vars) const;
  /// Renames variables positionally; the arity is unchanged.
  MultiPoly renamed(std::vector<std::string> new_vars) const;

  /// Serialization: `num/den * x^a*y^b` terms joined by ` + `, constant first.
  std::string to_string() const;
  /// Human-readable form, e.g. `1 - s + 1/2*s^2`.
  std::string pretty() const;
  /// Inverse of to_string() for the given variable list.
  static MultiPoly parse(std::vector<std::string> vars, std::string_view text);

 private:
  void require_same_vars(const MultiPoly& o, const char* op) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Generalized Laguerre polynomial L_N^alpha in one variable, built by the
/// three-term recurrence. laguerre(-1, alpha) is the zero polynomial.
MultiPoly laguerre(int degree, const Rational& alpha, const std::string& var = "x");

/// Jacobi polynomial P_J^(alpha,beta) in one variable, built by the three-term
/// recurrence (falls back to the explicit sum where the recurrence divides by
/// zero). jacobi(-1, ...) is the zero polynomial.
MultiPoly jacobi(int degree, const Rational& alpha, const Rational& beta, const std::string& var = "z");

}  // namespace superint
