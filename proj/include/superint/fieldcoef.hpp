#pragma once

// Symbolic coefficient fields for differential operators.
//
// A FieldCoef is an immutable expression tree over the coordinates
// x_0..x_{n-1} built from rationals, polynomials, + * /, rational powers and
// exp/log/sin/cos. It is never differentiated symbolically; operators are
// applied by lifting the tree to a jet at a point.

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "superint/jet.hpp"
#include "superint/multipoly.hpp"
#include "superint/rational.hpp"
#include "superint/tagged_jet.hpp"

namespace superint::taylor {

/// A factor of a coefficient vanishes (or a log/power argument is invalid)
/// at the requested point.
class SingularPoint : public DomainError {
 public:
  SingularPoint(const std::string& factor, const std::string& detail)
      : DomainError("singular point: " + factor + " (" + detail + ")"), factor_(factor) {}
  const std::string& factor() const { return factor_; }

 private:
  std::string factor_;
};

class FieldCoef {
 public:
  enum class Kind { Const, Var, Add, Mul, Pow, Exp, Log, Sin, Cos, Poly };

  /// The zero field.
  FieldCoef();
  FieldCoef(const Rational& c);  // NOLINT(google-explicit-constructor)
  FieldCoef(int c) : FieldCoef(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static FieldCoef var(std::size_t index, const std::string& name);
  /// Polynomial in the coordinates; its variable i is coordinate i.
  static FieldCoef poly(const MultiPoly& p);
  /// p(args[0], args[1], ...).
  static FieldCoef compose(const MultiPoly& p, std::vector<FieldCoef> args);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::Const; }
  /// Requires is_constant().
  const Rational& constant_value() const;
  bool is_zero() const { return is_constant() && constant_value().is_zero(); }

  double evaluate(std::span<const double> x) const;
  std::string to_string() const;

  friend FieldCoef operator+(const FieldCoef& a, const FieldCoef& b);
  friend FieldCoef operator-(const FieldCoef& a, const FieldCoef& b);
  friend FieldCoef operator-(const FieldCoef& a);
  friend FieldCoef operator*(const FieldCoef& a, const FieldCoef& b);
  friend FieldCoef operator/(const FieldCoef& a, const FieldCoef& b);
  friend FieldCoef pow(const FieldCoef& a, const Rational& e);
  friend FieldCoef exp(const FieldCoef& a);
  friend FieldCoef log(const FieldCoef& a);
  friend FieldCoef sin(const FieldCoef& a);
  friend FieldCoef cos(const FieldCoef& a);
  friend FieldCoef sqrt(const FieldCoef& a) { return pow(a, Rational(1, 2)); }

  FieldCoef& operator+=(const FieldCoef& o) { return *this = *this + o; }
  FieldCoef& operator*=(const FieldCoef& o) { return *this = *this * o; }

  /// Structural equality (after the folding done at construction).
  friend bool operator==(const FieldCoef& a, const FieldCoef& b);

  struct Node;
  const Node& node() const { return *node_; }

 private:
  explicit FieldCoef(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend struct FieldCoefAccess;
};

struct FieldCoef::Node {
  Kind kind;
  Rational value;                 // Const, or exponent for Pow
  std::size_t index = 0;          // Var
  std::string name;               // Var
  std::vector<FieldCoef> args;    // Add/Mul operands, unary argument, Poly arguments
  std::shared_ptr<const MultiPoly> poly;  // Poly
};

/// Jet of the field at a point. Throws SingularPoint if a reciprocal, log or
/// fractional power is taken of a factor with inadmissible value.
Jet<double> lift(const FieldCoef& f, const std::vector<double>& base, unsigned order);
/// Exact lift; throws DomainError when the value is not rational up to a
/// single surd/exponential constant.
TaggedJet lift_exact(const FieldCoef& f, const std::vector<Rational>& base, unsigned order);

/// Batch versions sharing one cache, so common subexpressions lift once.
std::vector<Jet<double>> lift_all(std::span<const FieldCoef> fs, const std::vector<double>& base, unsigned order);
std::vector<TaggedJet> lift_all_exact(std::span<const FieldCoef> fs, const std::vector<Rational>& base,
                                      unsigned order);

/// Sum of squares of coordinates [lo, hi) of an n-variable space.
FieldCoef square_sum(std::size_t n, std::size_t lo, std::size_t hi, const std::vector<std::string>& names);

}  // namespace superint::taylor
