#include "superint/rational.hpp"

#include <ostream>

namespace superint {

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  auto bad = [&] { return std::invalid_argument("not a rational: '" + std::string(text) + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto digits_ok = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den) || den[0] == '-') throw bad();
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw DivisionByZero("rational with zero denominator: '" + std::string(text) + "'");
  return Rational(n, d);
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

std::string Rational::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero("rational division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base.is_zero()) throw DivisionByZero("zero to a negative power");
    return Rational(1) / pow(base, -exponent);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

namespace {

std::optional<mpz_class> exact_root(const mpz_class& v, unsigned long k) {
  if (v < 0) {
    if (k % 2 == 0) return std::nullopt;
    auto r = exact_root(-v, k);
    if (!r) return std::nullopt;
    return mpz_class(-*r);
  }
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), v.get_mpz_t(), k) == 0) return std::nullopt;
  return r;
}

}  // namespace

std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent) {
  if (exponent.is_integer()) {
    if (!exponent.numerator().fits_slong_p()) return std::nullopt;
    if (base.is_zero() && exponent.sign() < 0) return std::nullopt;
    return pow(base, exponent.numerator().get_si());
  }
  if (base.is_zero()) return exponent.sign() > 0 ? std::optional<Rational>(Rational(0)) : std::nullopt;
  mpz_class q = exponent.denominator();
  if (!q.fits_ulong_p() || !exponent.numerator().fits_slong_p()) return std::nullopt;
  auto num = exact_root(base.numerator(), q.get_ui());
  auto den = exact_root(base.denominator(), q.get_ui());
  if (!num || !den) return std::nullopt;
  return pow(Rational(*num, *den), exponent.numerator().get_si());
}

Rational binomial(const Rational& top, unsigned k) {
  Rational acc(1);
  for (unsigned i = 0; i < k; ++i) acc = acc * (top - Rational(static_cast<long>(i))) / Rational(static_cast<long>(i + 1));
  return acc;
}

Rational factorial(unsigned k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Rational(f, mpz_class(1));
}

}  // namespace superint
