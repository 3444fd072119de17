#pragma once

// Verification checks over the model: each CheckSpec names one claim, runs
// it deterministically from its seed and yields a CheckReport.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "superint/model.hpp"
#include "superint/splitmix.hpp"

namespace superint::verify {

using Json = nlohmann::ordered_json;

enum class Kind {
  ExactEigen,
  NumericEigen,
  CommutatorZero,
  CommutatorNonzero,
  CommutatorIdentity,
  Tridiagonal,
  SpectrumSet,
  Degeneracy,
  GeneratorDecomposition,
};
std::string to_string(Kind k);
Kind parse_kind(std::string_view text);

std::string to_string(model::Mutation m);
model::Mutation parse_mutation(std::string_view text);

// Subjects, by kind:
//   exact-eigen             gauged | cartesian-parabolic | cartesian-spherical
//   numeric-eigen           parabolic | spherical | cartesian-parabolic | cartesian-spherical
//   commutator-zero/nonzero "A,B" with A, B among H X Zl Yp Lik Ai, or setK (n = 3 hydrogen pairs)
//   commutator-identity     "Ai,Aj": [Ai,Aj] + 2 H Lij
//   tridiagonal             y1
//   spectrum-set            energies
//   degeneracy              counts
//   generator-decomposition gauged
struct CheckSpec {
  std::string name;
  Kind kind = Kind::ExactEigen;
  model::ModelParams params;
  std::string subject;
  unsigned qmax = 4;     // quantum level bound, or N1/N2 bound for tridiagonal
  unsigned samples = 1;  // points, test jets or m values
  std::vector<Rational> constants;  // free constants of the n = 3 hydrogen pairs (a, f)
  model::Mutation mutation = model::Mutation::None;
  double tolerance = 0;
  std::uint64_t seed = 0;
};

enum class Status { Pass, Fail, Error };
std::string to_string(Status s);

struct CheckReport {
  CheckSpec spec;
  Status status = Status::Error;
  double worst_residual = 0;
  Json witness;  // null when there is nothing to show
  double wall_ms = 0;
};

/// Tolerances for double-precision checks.
inline constexpr double kEigenTolerance = 1e-8;
inline constexpr double kCommutatorTolerance = 1e-6;
inline constexpr double kNonzeroThreshold = 1e-3;

bool is_exact(Kind k);

/// Never throws: construction errors become Status::Error.
CheckReport run_check(const CheckSpec& spec);

struct SuiteResult {
  std::vector<CheckReport> reports;  // sorted by name
  std::size_t passed = 0, failed = 0, errors = 0;
  bool ok() const { return failed == 0 && errors == 0; }
};

/// Runs the checks concurrently; threads = 0 picks the hardware concurrency.
SuiteResult run_suite(const std::vector<CheckSpec>& suite, unsigned threads = 0);

enum class Selector { Exact, Numeric, Commutators, Tridiagonal, All };
Selector parse_selector(std::string_view text);

/// The checks for one parameter set, as run by the command line.
std::vector<CheckSpec> default_suite(const model::ModelParams& params, Selector selector, std::uint64_t seed,
                                     unsigned qmax = 4);

// Deterministic sampling shared by checks and tests.

/// Integer points with positive coordinates and integer radius, in a seeded order.
std::vector<std::vector<Rational>> rational_radius_points(unsigned n, std::size_t count, std::uint64_t seed);
/// Random polynomial with degree <= 4 and coefficients in [-5, 5].
MultiPoly random_test_poly(SplitMix64& rng, const std::vector<std::string>& vars);

// Reports.
Json to_json(const CheckSpec& spec);
Json to_json(const CheckReport& report);
Json to_json(const SuiteResult& result);
CheckReport report_from_json(const Json& j);
std::string summary_line(const SuiteResult& result);

}  // namespace superint::verify
