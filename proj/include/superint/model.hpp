#pragma once

// The n-dimensional generalized Coulomb system
//
//   H = -1/2 Laplacian - gamma/r + sum_{i<n} beta_i / x_i^2,  beta_i = p_i(p_i-1)/2
//
// with its commuting integrals in Cartesian, parabolic-rotational and
// spherical coordinates, closed-form eigenfunctions and spectra, and the
// gauge-rotated polynomial operators.
//
// Index conventions (all 1-based in names, 0-based in containers):
//   parabolic  coords (mu, nu, th1..th_{n-2}); record.m[l] = m_l, record.k[l] = k_l for l = 0..n-2
//   spherical  coords (r, th1..th_{n-1});     record.m[l-1] = m_l for l = 1..n, record.k[l-1] = k_l for l = 1..n-1
//   Z_l acts on th_{n-l-1}; Y_l acts on th_l.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "superint/fieldcoef.hpp"
#include "superint/multipoly.hpp"
#include "superint/operators.hpp"
#include "superint/rational.hpp"

namespace superint::model {

using ops::FieldDiffOp;
using ops::PolyDiffOp;
using taylor::FieldCoef;

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class System { Parabolic, Spherical };
std::string to_string(System s);
System parse_system(std::string_view text);

/// Deliberate single-coefficient corruptions, used to show the checks are not vacuous.
enum class Mutation { None, FlipCoulombSign, PerturbY1 };

struct ModelParams {
  unsigned n = 3;
  Rational gamma{1};
  std::vector<Rational> p;  // p_1..p_{n-1}

  /// Throws ModelError unless n >= 2 and p has n-1 entries.
  void validate() const;
  /// beta_i for 1-based i.
  Rational beta(std::size_t i) const { return p.at(i - 1) * (p.at(i - 1) - Rational(1)) / Rational(2); }
  bool pure_coulomb() const;
  std::string to_string() const;
};

struct ParabolicQN {
  unsigned N1 = 0, N2 = 0;
  std::vector<unsigned> J;  // J_1..J_{n-2}
  friend auto operator<=>(const ParabolicQN&, const ParabolicQN&) = default;
};

struct SphericalQN {
  unsigned Nr = 0;
  std::vector<unsigned> J;  // J_1..J_{n-1}
  friend auto operator<=>(const SphericalQN&, const SphericalQN&) = default;
};

using QuantumNumbers = std::variant<ParabolicQN, SphericalQN>;
std::string to_string(const QuantumNumbers& qn);
System system_of(const QuantumNumbers& qn);
/// N1+N2+2 sum J, or Nr+2 sum J.
unsigned level(const QuantumNumbers& qn);

struct EigenvalueRecord {
  Rational E;
  Rational lambda;  // parabolic only; zero for spherical states
  std::vector<Rational> k;
  std::vector<Rational> m;
  Rational sqrt_minus_2E;
  Rational D;
};

/// Throws ModelError for arity mismatches, and "unbound state parameters" when D <= 0.
EigenvalueRecord spectrum(const ModelParams& params, const QuantumNumbers& qn);

struct GaugeFactor {
  enum class Kind { Power, SinPower, CosPower, Exponential };
  Kind kind;
  std::string variable;  // coordinate, or the quadratic/linear form for Exponential
  Rational exponent;     // power, or the rational multiplier inside exp(...)
  std::string to_string() const;
};

struct Eigenfunction {
  System system;
  ModelParams params;
  QuantumNumbers qn;
  EigenvalueRecord record;
  std::vector<GaugeFactor> gauge;
  /// Polynomial in (s, t, z1..z_{n-2}) or (rho, z1..z_{n-1}).
  MultiPoly polypart;

  std::vector<std::string> coordinates() const;
  std::string gauge_string() const;
  /// psi as a field in the curvilinear coordinates.
  FieldCoef curvilinear() const;
  /// psi as a field in x1..xn.
  FieldCoef cartesian() const;
  /// Same gauge, different polynomial part (used to build neighbouring basis states).
  Eigenfunction with_polypart(MultiPoly p) const;
};

Eigenfunction eigenfunction(const ModelParams& params, const QuantumNumbers& qn);

/// Every state with the given level.
std::vector<QuantumNumbers> degeneracy(const ModelParams& params, System system, unsigned q);

// ---------------------------------------------------------------- Cartesian

std::vector<std::string> cartesian_vars(unsigned n);
FieldCoef cartesian_radius(unsigned n);

struct CartesianOps {
  std::vector<std::string> vars;
  FieldDiffOp H;
  /// L[i][k] for 0-based i < k.
  std::vector<std::vector<PolyDiffOp>> L;
  /// Runge-Lenz components; empty unless pure Coulomb.
  std::vector<FieldDiffOp> A;

  const PolyDiffOp& Lik(std::size_t i, std::size_t k) const;  // 1-based, i < k
};

CartesianOps build_cartesian(const ModelParams& params, Mutation mutation = Mutation::None);
/// Runge-Lenz vector component i (1-based); ModelError unless every p_i is 0 or 1.
FieldDiffOp runge_lenz(const ModelParams& params, std::size_t i);

/// The commuting integrals X, Z_l (l = 1..n-2) and Y_p (p = 1..n-1) in Cartesian form.
FieldDiffOp cartesian_X(const ModelParams& params);
FieldDiffOp cartesian_Z(const ModelParams& params, unsigned l);
FieldDiffOp cartesian_Y(const ModelParams& params, unsigned p);

struct CommutingPair {
  std::string label;
  FieldDiffOp first, second;
};
/// The four inequivalent n = 3 hydrogen sets; a and f are the free constants of sets 2 and 4.
std::vector<CommutingPair> hydrogen_n3_sets(const Rational& gamma, const Rational& a, const Rational& f);

// ------------------------------------------------------------- curvilinear

std::vector<std::string> parabolic_vars(unsigned n);
std::vector<std::string> spherical_vars(unsigned n);

struct ParabolicOps {
  std::vector<std::string> vars;
  FieldDiffOp H, X;
  std::vector<FieldDiffOp> Z;  // Z[l-1] = Z_l
};

struct SphericalOps {
  std::vector<std::string> vars;
  FieldDiffOp H;
  std::vector<FieldDiffOp> Y;  // Y[l-1] = Y_l
};

/// Operator-chain form: each angular operator contains the inner one as an operator.
ParabolicOps build_parabolic_ops(const ModelParams& params, Mutation mutation = Mutation::None);
/// Resolved form: the inner operator in Z_l and in H, X is replaced by the number
/// k[l-1] (k indexed as in EigenvalueRecord).
ParabolicOps build_parabolic_ops(const ModelParams& params, const std::vector<Rational>& k,
                                 Mutation mutation = Mutation::None);
SphericalOps build_spherical_ops(const ModelParams& params, Mutation mutation = Mutation::None);
SphericalOps build_spherical_ops(const ModelParams& params, const std::vector<Rational>& k,
                                 Mutation mutation = Mutation::None);

/// Q0 = (mu^2+nu^2)(H-E) + 2 gamma, Q1 = 2X + (mu^2-nu^2)(H-E).
std::pair<FieldDiffOp, FieldDiffOp> build_Q0_Q1(const ModelParams& params, const Rational& E,
                                                Mutation mutation = Mutation::None);

std::vector<double> coord_map(System system, unsigned n, const std::vector<double>& point);

// ------------------------------------------------------------------ gauged

std::vector<std::string> gauged_vars(unsigned n);

/// One term of a generator expansion: coefficient times an ordered product of generators.
struct WitnessTerm {
  Rational coef;
  std::vector<std::string> word;
};
using Witness = std::vector<WitnessTerm>;

struct GaugedOp {
  std::string name;
  PolyDiffOp op;
  Witness witness;
};

struct GaugedOps {
  std::vector<std::string> vars;
  /// Common multiplier -2 sqrt(-2E) of Qp and Qm, kept outside the cores.
  Rational prefactor;
  GaugedOp Qp, Qm;
  std::vector<GaugedOp> Z;  // Z[l-1] = gauged Z_l, acting on z_{n-l-1}
  GaugedOp Y1;
};

/// m is the m-chain of the target state (EigenvalueRecord::m); m.back() = m_{n-2} enters Qp, Qm, Y1.
GaugedOps build_gauged_ops(const ModelParams& params, const std::vector<Rational>& m, const Rational& prefactor,
                           Mutation mutation = Mutation::None);

/// Generator names for n: ds, s*ds, dt, t*dt, s*dt, t*ds, dz_j, z_j*dz_j.
std::vector<std::string> generator_names(unsigned n);
PolyDiffOp generator(const std::vector<std::string>& vars, const std::string& name);
/// Greedy leading-term expansion; throws ModelError if the operator is outside the algebra.
Witness decompose(const PolyDiffOp& op);
PolyDiffOp recompose(const std::vector<std::string>& vars, const Witness& w);
std::string to_string(const Witness& w);

struct Tridiagonal {
  Rational c_minus, c_zero, c_plus;
};
/// Coefficients of the gauged Y1 on L_{N1}^m(s) L_{N2}^m(t): c_minus on (N1-1, N2+1), c_plus on (N1+1, N2-1).
Tridiagonal y1_tridiagonal(unsigned N1, unsigned N2, const Rational& m, unsigned n = 3);

}  // namespace superint::model
