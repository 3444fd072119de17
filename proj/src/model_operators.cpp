#include <cmath>

#include "superint/model.hpp"

namespace superint::model {

namespace {

Rational R(long v) { return Rational(v); }

std::string th(std::size_t j) { return "th" + std::to_string(j); }

// Builds ops over a fixed variable list.
struct Builder {
  std::vector<std::string> vars;

  FieldCoef v(std::size_t i) const { return FieldCoef::var(i, vars[i]); }
  PolyDiffOp d(std::size_t i, unsigned times = 1) const { return PolyDiffOp::partial(vars, i, times); }
  PolyDiffOp mul(std::size_t i) const { return PolyDiffOp::multiplication(MultiPoly::variable(vars, vars[i])); }
  FieldDiffOp fd(std::size_t i, unsigned times = 1) const { return FieldDiffOp::from_poly(d(i, times)); }
  FieldDiffOp scalar(const FieldCoef& f) const { return FieldDiffOp::scalar(vars, f); }
  /// x_i d_k - x_k d_i (0-based)
  PolyDiffOp L(std::size_t i, std::size_t k) const { return mul(i) * d(k) - mul(k) * d(i); }
  FieldCoef square_sum(std::size_t lo, std::size_t hi) const { return taylor::square_sum(vars.size(), lo, hi, vars); }
};

FieldCoef coulomb_sign(Mutation mutation) { return FieldCoef(mutation == Mutation::FlipCoulombSign ? 1 : -1); }

}  // namespace

std::vector<std::string> cartesian_vars(unsigned n) {
  std::vector<std::string> v;
  for (unsigned i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

FieldCoef cartesian_radius(unsigned n) { return sqrt(taylor::square_sum(n, 0, n, cartesian_vars(n))); }

std::vector<std::string> parabolic_vars(unsigned n) {
  std::vector<std::string> v{"mu", "nu"};
  for (unsigned j = 1; j + 2 <= n; ++j) v.push_back(th(j));
  return v;
}

std::vector<std::string> spherical_vars(unsigned n) {
  std::vector<std::string> v{"r"};
  for (unsigned j = 1; j + 1 <= n; ++j) v.push_back(th(j));
  return v;
}

const PolyDiffOp& CartesianOps::Lik(std::size_t i, std::size_t k) const {
  if (i >= k || k > vars.size() || i == 0) throw ModelError("L_ik needs 1 <= i < k <= n");
  return L[i - 1][k - 1];
}

CartesianOps build_cartesian(const ModelParams& params, Mutation mutation) {
  params.validate();
  const unsigned n = params.n;
  Builder b{cartesian_vars(n)};
  CartesianOps out;
  out.vars = b.vars;

  PolyDiffOp lap(b.vars);
  for (std::size_t i = 0; i < n; ++i) lap += b.d(i, 2);
  out.H = FieldDiffOp::from_poly(lap * Rational(-1, 2));
  out.H += b.scalar(coulomb_sign(mutation) * FieldCoef(params.gamma) / cartesian_radius(n));
  for (std::size_t i = 1; i < n; ++i) {
    const Rational beta = params.beta(i);
    if (!beta.is_zero()) out.H += b.scalar(FieldCoef(beta) / (b.v(i - 1) * b.v(i - 1)));
  }

  out.L.assign(n, std::vector<PolyDiffOp>(n, PolyDiffOp(b.vars)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) out.L[i][k] = b.L(i, k);

  if (params.pure_coulomb())
    for (std::size_t i = 1; i <= n; ++i) out.A.push_back(runge_lenz(params, i));
  return out;
}

FieldDiffOp runge_lenz(const ModelParams& params, std::size_t i) {
  params.validate();
  if (!params.pure_coulomb()) throw ModelError("Runge-Lenz defined only for pure Coulomb (every p_i in {0, 1})");
  const unsigned n = params.n;
  if (i < 1 || i > n) throw ModelError("Runge-Lenz index out of range");
  Builder b{cartesian_vars(n)};
  PolyDiffOp sym(b.vars);
  for (std::size_t a = 0; a < n; ++a) {
    if (a == i - 1) continue;
    PolyDiffOp L = b.L(i - 1, a);
    sym += b.d(a) * L + L * b.d(a);
  }
  FieldDiffOp A = FieldDiffOp::from_poly(sym * Rational(1, 2));
  A += b.scalar(FieldCoef(params.gamma) * b.v(i - 1) / cartesian_radius(n));
  return A;
}

FieldDiffOp cartesian_X(const ModelParams& params) {
  params.validate();
  const unsigned n = params.n;
  Builder b{cartesian_vars(n)};
  PolyDiffOp sym(b.vars);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    PolyDiffOp L = b.L(n - 1, k);
    sym += L * b.d(k) + b.d(k) * L;
  }
  FieldDiffOp X = FieldDiffOp::from_poly(sym * Rational(1, 2));
  const FieldCoef xn = b.v(n - 1);
  FieldCoef field = FieldCoef(params.gamma) * xn / cartesian_radius(n);
  for (std::size_t k = 1; k < n; ++k) {
    const Rational beta = params.beta(k);
    if (!beta.is_zero()) field = field - FieldCoef(R(2) * beta) * xn / (b.v(k - 1) * b.v(k - 1));
  }
  X += b.scalar(field);
  return X;
}

namespace {

// sum_{lo<=i<k<=hi} L_ik^2 - 2 (sum_{lo..hi} x^2)(sum_{lo..min(hi,n-1)} beta_k/x_k^2), 1-based bounds
FieldDiffOp casimir_block(const ModelParams& params, std::size_t lo, std::size_t hi) {
  const unsigned n = params.n;
  Builder b{cartesian_vars(n)};
  PolyDiffOp sum(b.vars);
  for (std::size_t i = lo; i <= hi; ++i)
    for (std::size_t k = i + 1; k <= hi; ++k) {
      PolyDiffOp L = b.L(i - 1, k - 1);
      sum += L * L;
    }
  FieldDiffOp op = FieldDiffOp::from_poly(sum);
  FieldCoef betas(0);
  for (std::size_t k = lo; k <= std::min<std::size_t>(hi, n - 1); ++k) {
    const Rational beta = params.beta(k);
    if (!beta.is_zero()) betas = betas + FieldCoef(beta) / (b.v(k - 1) * b.v(k - 1));
  }
  if (!betas.is_zero()) op += b.scalar(FieldCoef(-2) * b.square_sum(lo - 1, hi) * betas);
  return op;
}

}  // namespace

FieldDiffOp cartesian_Z(const ModelParams& params, unsigned l) {
  params.validate();
  if (l < 1 || l + 2 > params.n) throw ModelError("Z_l needs 1 <= l <= n-2");
  return casimir_block(params, 1, l + 1);
}

FieldDiffOp cartesian_Y(const ModelParams& params, unsigned p) {
  params.validate();
  if (p < 1 || p + 1 > params.n) throw ModelError("Y_p needs 1 <= p <= n-1");
  return casimir_block(params, p, params.n);
}

std::vector<CommutingPair> hydrogen_n3_sets(const Rational& gamma, const Rational& a, const Rational& f) {
  ModelParams params{3, gamma, {Rational(0), Rational(0)}};
  Builder b{cartesian_vars(3)};
  auto sq = [&](std::size_t i, std::size_t k) {
    PolyDiffOp L = b.L(i - 1, k - 1);
    return L * L;
  };
  const PolyDiffOp L12sq = sq(1, 2), L23sq = sq(2, 3), L31sq = sq(1, 3);
  const PolyDiffOp total = L12sq + L23sq + L31sq;
  const FieldDiffOp A3 = runge_lenz(params, 3);
  std::vector<CommutingPair> out;
  out.push_back({"set1 (A3, L12^2)", A3, FieldDiffOp::from_poly(L12sq)});
  out.push_back({"set2 (A3 + a L^2, L12^2) a=" + a.to_string(), A3 + FieldDiffOp::from_poly(total * a),
                 FieldDiffOp::from_poly(L12sq)});
  out.push_back({"set3 (L^2, L12^2)", FieldDiffOp::from_poly(total), FieldDiffOp::from_poly(L12sq)});
  out.push_back({"set4 (L^2, L23^2 + f L31^2) f=" + f.to_string(), FieldDiffOp::from_poly(total),
                 FieldDiffOp::from_poly(L23sq + L31sq * f)});
  return out;
}

// ------------------------------------------------------------- parabolic

namespace {

ParabolicOps parabolic_impl(const ModelParams& params, const std::vector<Rational>* k, Mutation mutation) {
  params.validate();
  const unsigned n = params.n;
  if (n < 3) throw ModelError("parabolic coordinates need n >= 3");
  if (k && k->size() != n - 1) throw ModelError("resolved parabolic operators need k_0..k_{n-2}");
  Builder b{parabolic_vars(n)};
  ParabolicOps out;
  out.vars = b.vars;
  const FieldCoef mu = b.v(0), nu = b.v(1);
  const FieldCoef mu2 = mu * mu, nu2 = nu * nu, S = mu2 + nu2;
  const FieldCoef nm2(static_cast<int>(n) - 2);

  // Z_0 is the number -p1(p1-1)
  FieldDiffOp inner = b.scalar(FieldCoef(-params.p[0] * (params.p[0] - Rational(1))));
  for (unsigned l = 1; l <= n - 2; ++l) {
    const std::size_t j = n - l - 1;  // th_j is variable index j + 1
    const FieldCoef t = b.v(j + 1);
    const Rational& pl1 = params.p[l];
    FieldDiffOp Z = b.fd(j + 1, 2);
    Z += (FieldCoef(-static_cast<int>(l - 1)) * sin(t) / cos(t)) * b.fd(j + 1);
    const FieldDiffOp& prev = k ? b.scalar(FieldCoef((*k)[l - 1])) : inner;
    Z += (FieldCoef(1) / (cos(t) * cos(t))) * prev;
    Z += b.scalar(FieldCoef(-pl1 * (pl1 - Rational(1))) / (sin(t) * sin(t)));
    out.Z.push_back(Z);
    inner = Z;
  }
  const FieldDiffOp top = k ? b.scalar(FieldCoef(k->back())) : inner;

  const FieldDiffOp radial_mu = b.fd(0, 2) + (nm2 / mu) * b.fd(0);
  const FieldDiffOp radial_nu = b.fd(1, 2) + (nm2 / nu) * b.fd(1);
  out.H = (FieldCoef(Rational(-1, 2)) / S) * (radial_mu + radial_nu);
  out.H += b.scalar(coulomb_sign(mutation) * FieldCoef(R(2) * params.gamma) / S);
  out.H += (FieldCoef(Rational(-1, 2)) / (mu2 * nu2)) * top;

  out.X = (FieldCoef(Rational(1, 2)) / S) * ((-nu2) * radial_mu + mu2 * radial_nu);
  out.X += b.scalar(FieldCoef(params.gamma) * (mu2 - nu2) / S);
  out.X += ((mu2 - nu2) / (FieldCoef(2) * mu2 * nu2)) * top;
  return out;
}

SphericalOps spherical_impl(const ModelParams& params, const std::vector<Rational>* k, Mutation mutation) {
  params.validate();
  const unsigned n = params.n;
  if (k && k->size() != n - 1) throw ModelError("resolved spherical operators need k_1..k_{n-1}");
  Builder b{spherical_vars(n)};
  SphericalOps out;
  out.vars = b.vars;
  out.Y.resize(n - 1);
  // Y_n := 0
  FieldDiffOp inner(b.vars);
  for (unsigned l = n - 1; l >= 1; --l) {
    const FieldCoef t = b.v(l);
    const Rational& pl = params.p[l - 1];
    FieldDiffOp Y = b.fd(l, 2);
    const int c = static_cast<int>(n) - static_cast<int>(l) - 1;
    if (c != 0) Y += (FieldCoef(c) * cos(t) / sin(t)) * b.fd(l);
    Y += b.scalar(FieldCoef(-pl * (pl - Rational(1))) / (cos(t) * cos(t)));
    if (l < n - 1) {
      const FieldDiffOp& next = k ? b.scalar(FieldCoef((*k)[l])) : inner;
      Y += (FieldCoef(1) / (sin(t) * sin(t))) * next;
    }
    out.Y[l - 1] = Y;
    inner = Y;
  }
  const FieldDiffOp top = k ? b.scalar(FieldCoef(k->front())) : inner;
  const FieldCoef r = b.v(0);
  FieldDiffOp radial = b.fd(0, 2) + (FieldCoef(static_cast<int>(n) - 1) / r) * b.fd(0);
  out.H = FieldCoef(Rational(-1, 2)) * radial;
  out.H += b.scalar(coulomb_sign(mutation) * FieldCoef(params.gamma) / r);
  out.H += (FieldCoef(Rational(-1, 2)) / (r * r)) * top;
  return out;
}

}  // namespace

ParabolicOps build_parabolic_ops(const ModelParams& params, Mutation mutation) {
  return parabolic_impl(params, nullptr, mutation);
}

ParabolicOps build_parabolic_ops(const ModelParams& params, const std::vector<Rational>& k, Mutation mutation) {
  return parabolic_impl(params, &k, mutation);
}

SphericalOps build_spherical_ops(const ModelParams& params, Mutation mutation) {
  return spherical_impl(params, nullptr, mutation);
}

SphericalOps build_spherical_ops(const ModelParams& params, const std::vector<Rational>& k, Mutation mutation) {
  return spherical_impl(params, &k, mutation);
}

std::pair<FieldDiffOp, FieldDiffOp> build_Q0_Q1(const ModelParams& params, const Rational& E, Mutation mutation) {
  ParabolicOps ops = build_parabolic_ops(params, mutation);
  Builder b{ops.vars};
  const FieldCoef mu2 = b.v(0) * b.v(0), nu2 = b.v(1) * b.v(1);
  const FieldDiffOp shifted = ops.H - b.scalar(FieldCoef(E));
  FieldDiffOp Q0 = (mu2 + nu2) * shifted;
  Q0 += b.scalar(FieldCoef(R(2) * params.gamma));
  FieldDiffOp Q1 = FieldCoef(2) * ops.X;
  Q1 += (mu2 - nu2) * shifted;
  return {Q0, Q1};
}

std::vector<double> coord_map(System system, unsigned n, const std::vector<double>& point) {
  if (point.size() != n) throw ModelError("point must have n coordinates");
  std::vector<double> x(n, 0.0);
  if (system == System::Parabolic) {
    if (n < 3) throw ModelError("parabolic coordinates need n >= 3");
    const double mu = point[0], nu = point[1];
    x[n - 1] = (mu * mu - nu * nu) / 2;
    double prod = mu * nu;
    for (unsigned j = 1; j <= n - 2; ++j) {
      const double t = point[j + 1];
      x[n - j - 1] = prod * std::sin(t);
      prod *= std::cos(t);
    }
    x[0] = prod;
  } else {
    double prod = point[0];
    for (unsigned l = 1; l <= n - 1; ++l) {
      const double t = point[l];
      x[l - 1] = prod * std::cos(t);
      prod *= std::sin(t);
    }
    x[n - 1] = prod;
  }
  return x;
}

}  // namespace superint::model
