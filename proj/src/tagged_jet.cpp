#include "superint/tagged_jet.hpp"

#include <cmath>
#include <sstream>

namespace superint::taylor {

namespace {

constexpr unsigned long kTrialBound = 100000;

// Prime factorization by trial division; any cofactor left above the bound is
// kept as a single (possibly composite) key.
std::map<mpz_class, long> factor(mpz_class v) {
  std::map<mpz_class, long> out;
  for (unsigned long p = 2; p <= kTrialBound && v > 1; p += (p == 2 ? 1 : 2)) {
    if (mpz_cmp_ui(v.get_mpz_t(), p * p) < 0) break;
    while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
      mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
      ++out[mpz_class(p)];
    }
  }
  if (v > 1) ++out[v];
  return out;
}

Rational frac_floor(const Rational& e, mpz_class& whole) {
  whole = e.floor();
  return e - Rational(whole, mpz_class(1));
}

}  // namespace

mpz_class SurdTag::carry(std::map<mpz_class, Rational>& primes, const mpz_class& prime, const Rational& e,
                         Rational& cofactor) {
  Rational total = e;
  if (auto it = primes.find(prime); it != primes.end()) total += it->second;
  mpz_class whole;
  Rational frac = frac_floor(total, whole);
  if (frac.is_zero()) primes.erase(prime);
  else primes[prime] = frac;
  if (whole != 0) cofactor *= pow(Rational(prime, mpz_class(1)), whole.get_si());
  return whole;
}

std::pair<SurdTag, Rational> SurdTag::power_of(const Rational& base, const Rational& e) {
  if (base.sign() <= 0) throw DomainError("surd base must be positive, got " + base.to_string());
  SurdTag t;
  Rational cof(1);
  for (const auto& [p, k] : factor(base.numerator())) carry(t.primes_, p, e * Rational(k), cof);
  for (const auto& [p, k] : factor(base.denominator())) carry(t.primes_, p, -e * Rational(k), cof);
  return {t, cof};
}

SurdTag SurdTag::exponential(const Rational& a) {
  SurdTag t;
  t.exp_arg_ = a;
  return t;
}

std::pair<SurdTag, Rational> SurdTag::times(const SurdTag& o) const {
  SurdTag t = *this;
  Rational cof(1);
  for (const auto& [p, f] : o.primes_) carry(t.primes_, p, f, cof);
  t.exp_arg_ += o.exp_arg_;
  return {t, cof};
}

std::pair<SurdTag, Rational> SurdTag::raised(const Rational& e) const {
  SurdTag t;
  Rational cof(1);
  for (const auto& [p, f] : primes_) carry(t.primes_, p, f * e, cof);
  t.exp_arg_ = exp_arg_ * e;
  return {t, cof};
}

double SurdTag::log_value() const {
  double acc = exp_arg_.to_double();
  for (const auto& [p, f] : primes_) acc += f.to_double() * std::log(p.get_d());
  return acc;
}

std::string SurdTag::to_string() const {
  if (is_trivial()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, f] : primes_) {
    if (!first) os << "*";
    os << p.get_str() << "^(" << f << ")";
    first = false;
  }
  if (!exp_arg_.is_zero()) os << (first ? "" : "*") << "exp(" << exp_arg_ << ")";
  return os.str();
}

double TaggedJet::value_double() const { return jet_.value().to_double() * std::exp(tag_.log_value()); }

TaggedJet operator+(const TaggedJet& a, const TaggedJet& b) {
  if (a.tag_ == b.tag_) return TaggedJet(a.jet_ + b.jet_, a.tag_);
  if (b.is_zero()) return a.order() <= b.order() ? a : a.truncated(b.order());
  if (a.is_zero()) return b.order() <= a.order() ? b : b.truncated(a.order());
  throw DomainError("exact jets with incommensurable constants (" + a.tag_.to_string() + " vs " +
                    b.tag_.to_string() + ") cannot be added");
}

TaggedJet operator-(const TaggedJet& a, const TaggedJet& b) { return a + (-b); }

TaggedJet operator*(const TaggedJet& a, const TaggedJet& b) {
  auto [tag, cof] = a.tag_.times(b.tag_);
  return TaggedJet((a.jet_ * b.jet_) * cof, tag);
}

TaggedJet reciprocal(const TaggedJet& f) {
  auto [tag, cof] = f.tag().raised(Rational(-1));
  return TaggedJet(reciprocal(f.jet()) * cof, tag);
}

TaggedJet operator/(const TaggedJet& a, const TaggedJet& b) { return a * reciprocal(b); }

TaggedJet pow(const TaggedJet& f, const Rational& e) {
  auto [tag, cof] = f.tag().raised(e);
  if (e.is_integer()) return TaggedJet(pow(f.jet(), e) * cof, tag);
  const Rational& a = f.rational_value();
  if (a.sign() <= 0) throw DomainError("non-integer power of a non-positive value " + a.to_string());
  auto [base_tag, base_cof] = SurdTag::power_of(a, e);
  auto [full, cof2] = tag.times(base_tag);
  return TaggedJet(pow_normalized(f.jet(), e) * (cof * base_cof * cof2), full);
}

TaggedJet sqrt(const TaggedJet& f) { return pow(f, Rational(1, 2)); }

TaggedJet exp(const TaggedJet& f) {
  if (!f.tag().is_trivial()) throw DomainError("exp of an irrational-tagged jet is not exact");
  return TaggedJet(exp_shifted(f.jet()), SurdTag::exponential(f.rational_value()));
}

TaggedJet log(const TaggedJet& f) {
  if (!f.tag().is_trivial()) throw DomainError("log of an irrational-tagged jet is not exact");
  return TaggedJet(log(f.jet()));
}

TaggedJet sin(const TaggedJet& f) {
  if (!f.tag().is_trivial()) throw DomainError("sin of an irrational-tagged jet is not exact");
  return TaggedJet(sin(f.jet()));
}

TaggedJet cos(const TaggedJet& f) {
  if (!f.tag().is_trivial()) throw DomainError("cos of an irrational-tagged jet is not exact");
  return TaggedJet(cos(f.jet()));
}

}  // namespace superint::taylor
