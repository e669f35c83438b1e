#include "phynet/asymptotics.hpp"

#include <sstream>

#include "json.hpp"

namespace phynet {

using json = nlohmann::json;

std::string_view parameter_name(Parameter p) {
  return p == Parameter::BlobCount ? "blobs" : "inner_edges";
}

namespace detail {

TriPoly TriPoly::constant(Rat c) { return monomial(0, 0, 0, std::move(c)); }

TriPoly TriPoly::monomial(int cpow, int xpow, int ypow, Rat coef) {
  TriPoly p;
  if (coef != 0) p.terms_[{cpow, xpow, ypow}] = std::move(coef);
  return p;
}

void TriPoly::add_term(const Key& k, const Rat& v) {
  if (v == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) terms_.erase(it);
  }
}

TriPoly TriPoly::operator+(const TriPoly& o) const {
  TriPoly r = *this;
  for (const auto& [k, v] : o.terms_) r.add_term(k, v);
  return r;
}

TriPoly TriPoly::operator-(const TriPoly& o) const {
  TriPoly r = *this;
  for (const auto& [k, v] : o.terms_) r.add_term(k, -v);
  return r;
}

TriPoly TriPoly::operator*(const TriPoly& o) const {
  TriPoly r;
  for (const auto& [ka, va] : terms_)
    for (const auto& [kb, vb] : o.terms_)
      r.add_term({ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}, va * vb);
  return r;
}

TriPoly TriPoly::derivative(int var) const {
  TriPoly r;
  for (const auto& [k, v] : terms_) {
    if (k[var] == 0) continue;
    Key nk = k;
    nk[var] -= 1;
    r.add_term(nk, v * Rat(k[var]));
  }
  return r;
}

Real TriPoly::eval(const Real& C, const Real& x, const Real& y) const {
  Real s = 0;
  for (const auto& [k, v] : terms_) {
    Real t = rat_to_real(v);
    for (int i = 0; i < k[0]; ++i) t *= C;
    for (int i = 0; i < k[1]; ++i) t *= x;
    for (int i = 0; i < k[2]; ++i) t *= y;
    s += t;
  }
  return s;
}

TriPoly TriPoly::pow(int k) const {
  TriPoly r = constant(Rat(1));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

TriRat TriRat::derivative(int var) const {
  return {num.derivative(var) * den - num * den.derivative(var), den * den};
}

Real TriRat::eval(const Real& C, const Real& x, const Real& y) const {
  return num.eval(C, x, y) / den.eval(C, x, y);
}

TriRat multivariate_phi(NetworkClass cls) {
  // phi = (1-yC)^D / ((1-yC)^D - sum coef x^a y^b C^c (1-yC)^(D-d))
  int D = refined_denom_power(cls);
  TriPoly one_minus = TriPoly::constant(Rat(1)) - TriPoly::monomial(1, 0, 1, Rat(1));
  TriPoly P = one_minus.pow(D);
  TriPoly N;
  for (const RefinedTerm& t : refined_terms(cls)) {
    TriPoly mono = TriPoly::monomial(t.cpow, t.xpow, t.ypow, t.coef);
    N = N + mono * one_minus.pow(D - t.denpow);
  }
  return {P, P - N};
}

}  // namespace detail

// ----------------------------------------------------------- root finding

namespace {

// Smallest positive root of an exact polynomial, isolated by a rational scan
// and bisection, then polished by Newton in high precision.
Real smallest_positive_root(const Poly& p, int bits) {
  Rat step(1, 1024);
  Rat prev_x(0);
  Rat prev_v = poly::eval(p, prev_x);
  Rat lo(0), hi(0);
  bool found = false;
  for (int i = 1; i <= 8 * 1024; ++i) {
    Rat x = step * i;
    Rat v = poly::eval(p, x);
    if (v == 0) {
      lo = hi = x;
      found = true;
      break;
    }
    if ((prev_v < 0) != (v < 0)) {
      lo = prev_x;
      hi = x;
      found = true;
      break;
    }
    prev_x = x;
    prev_v = v;
  }
  if (!found) throw AnalysisError("smallest_positive_root: no sign change in (0, 8]");
  for (int i = 0; i < 40 && lo != hi; ++i) {
    Rat mid = (lo + hi) / 2;
    Rat v = poly::eval(p, mid);
    if (v == 0) {
      lo = hi = mid;
      break;
    }
    if ((poly::eval(p, lo) < 0) != (v < 0))
      hi = mid;
    else
      lo = mid;
  }
  Real x = rat_to_real((lo + hi) / 2);
  Poly dp = poly::derivative(p);
  for (int i = 0; i < bits; ++i) {
    Real f = poly::eval(p, x);
    Real df = poly::eval(dp, x);
    Real nx = x - f / df;
    if (abs(nx - x) < ldexp(Real(1), -(bits + 8))) {
      x = nx;
      break;
    }
    x = nx;
  }
  return x;
}

// Characteristic polynomial H = P*Q - z*(P'Q - PQ'), whose root in (0,R) is tau.
Poly characteristic_poly(NetworkClass cls) {
  const RationalFunction& f = phi(cls);
  Poly dP = poly::derivative(f.num), dQ = poly::derivative(f.den);
  Poly inner = poly::add(poly::mul(dP, f.den), poly::scale(Rat(-1), poly::mul(f.num, dQ)));
  Poly zinner = poly::mul(Poly{Rat(0), Rat(1)}, inner);
  return poly::add(poly::mul(f.num, f.den), poly::scale(Rat(-1), zinner));
}

}  // namespace

Real phi_radius(NetworkClass cls, int precision_bits) {
  PrecisionGuard guard(precision_bits);
  return smallest_positive_root(phi(cls).den, precision_bits);
}

Real characteristic_root(NetworkClass cls, int precision_bits) {
  if (precision_bits < 64)
    throw std::invalid_argument("characteristic_root: need at least 64 bits");
  PrecisionGuard guard(precision_bits);
  Poly H = characteristic_poly(cls);
  Rat R_lo;  // rational lower bound on the radius R, to bracket inside (0, R)
  {
    // bracket tau by exact sign changes of H on (0, R)
    const RationalFunction& f = phi(cls);
    Rat step(1, 1024);
    Rat lo(0), hi(0);
    bool found = false;
    Rat prev_x(0), prev_v = poly::eval(H, Rat(0));
    for (int i = 1; i <= 8 * 1024; ++i) {
      Rat x = step * i;
      if (poly::eval(f.den, x) <= 0) break;  // reached or passed the pole
      Rat v = poly::eval(H, x);
      if (v == 0) {
        lo = hi = x;
        found = true;
        break;
      }
      if ((prev_v < 0) != (v < 0)) {
        lo = prev_x;
        hi = x;
        found = true;
        break;
      }
      prev_x = x;
      prev_v = v;
    }
    if (!found)
      throw AnalysisError("characteristic_root: no sign change of the characteristic polynomial in (0, R)");
    for (int i = 0; i < 40 && lo != hi; ++i) {
      Rat mid = (lo + hi) / 2;
      Rat v = poly::eval(H, mid);
      if (v == 0) {
        lo = hi = mid;
        break;
      }
      if ((poly::eval(H, lo) < 0) != (v < 0))
        hi = mid;
      else
        lo = mid;
    }
    Real x = rat_to_real((lo + hi) / 2);
    Poly dH = poly::derivative(H);
    for (int i = 0; i < precision_bits; ++i) {
      Real fv = poly::eval(H, x);
      Real dfv = poly::eval(dH, x);
      Real nx = x - fv / dfv;
      if (abs(nx - x) < ldexp(Real(1), -(precision_bits + 8))) {
        x = nx;
        break;
      }
      x = nx;
    }
    const RationalFunction& ff = phi(cls);
    Real residual = abs(ff.eval(x) - x * ff.eval_derivative(x));
    if (residual > ldexp(Real(1), -precision_bits / 2))
      throw AnalysisError("characteristic_root: residual too large");
    return x;
  }
}

AsymptoticReport asymptotic_constants(NetworkClass cls, int precision_bits) {
  PrecisionGuard guard(precision_bits);
  Real tau = characteristic_root(cls, precision_bits);
  const RationalFunction& f = phi(cls);
  Real ph = f.eval(tau);
  Real rho = tau / ph;
  Real c1 = sqrt(ph / f.eval_second_derivative(tau));
  Real e = exp(Real(1));
  Real c2 = 1 / (e * rho);
  return {cls, tau, rho, c1, c2, precision_bits};
}

Real asymptotic_estimate(NetworkClass cls, int n, int precision_bits) {
  if (n < 1) throw std::invalid_argument("asymptotic_estimate: n must be >= 1");
  PrecisionGuard guard(precision_bits);
  AsymptoticReport rep = asymptotic_constants(cls, precision_bits);
  return rep.c1 * pow(rep.c2, n) * pow(Real(n), n - 1);
}

MomentReport drmota_moments(NetworkClass cls, Parameter parameter, int precision_bits) {
  PrecisionGuard guard(precision_bits);
  int var = parameter == Parameter::BlobCount ? 1 : 2;  // x or y in the term table

  detail::TriRat ph = detail::multivariate_phi(cls);
  detail::TriRat ph_C = ph.derivative(0);
  detail::TriRat ph_u = ph.derivative(var);
  detail::TriRat ph_CC = ph_C.derivative(0);
  detail::TriRat ph_Cu = ph_C.derivative(var);
  detail::TriRat ph_uu = ph_u.derivative(var);

  // Solve {C = z phi(C), 1 = z phi_C(C)} by Newton from the univariate seed.
  Real C0 = characteristic_root(cls, precision_bits);
  Real z0 = C0 / phi(cls).eval(C0);
  for (int i = 0; i < 64; ++i) {
    Real p = ph.eval(C0, 1, 1);
    Real pC = ph_C.eval(C0, 1, 1);
    Real pCC = ph_CC.eval(C0, 1, 1);
    Real f1 = z0 * p - C0;
    Real f2 = z0 * pC - 1;
    // Jacobian [[z pC - 1, p], [z pCC, pC]]
    Real a = z0 * pC - 1, b = p, c = z0 * pCC, d = pC;
    Real det = a * d - b * c;
    if (det == 0) throw AnalysisError("drmota_moments: singular Jacobian");
    Real dC = (f1 * d - b * f2) / det;
    Real dz = (a * f2 - f1 * c) / det;
    C0 -= dC;
    z0 -= dz;
    if (abs(dC) < ldexp(Real(1), -(precision_bits - 4)) &&
        abs(dz) < ldexp(Real(1), -(precision_bits - 4)))
      break;
  }
  {
    Real r1 = abs(z0 * ph.eval(C0, 1, 1) - C0);
    Real r2 = abs(z0 * ph_C.eval(C0, 1, 1) - 1);
    if (r1 > ldexp(Real(1), -precision_bits / 2) || r2 > ldexp(Real(1), -precision_bits / 2))
      throw AnalysisError("drmota_moments: system solver did not converge");
  }

  // F(C, z, u) = z * phi(C, u); partial derivatives at (C0, z0, 1).
  Real p = ph.eval(C0, 1, 1);
  Real Fz = p;
  Real Fx = z0 * ph_u.eval(C0, 1, 1);
  Real FCC = z0 * ph_CC.eval(C0, 1, 1);
  Real FCx = z0 * ph_Cu.eval(C0, 1, 1);
  Real FCz = ph_C.eval(C0, 1, 1);
  Real Fzz = 0;
  Real Fzx = ph_u.eval(C0, 1, 1);
  Real Fxx = z0 * ph_uu.eval(C0, 1, 1);

  if (Fz == 0) throw AnalysisError("drmota_moments: F_z vanishes at the solution");
  if (FCC == 0) throw AnalysisError("drmota_moments: F_CC vanishes at the solution");

  Real mu = Fx / (z0 * Fz);
  Real sigma2 = mu + mu * mu +
                (Fz * Fz * (FCC * Fxx - FCx * FCx) - 2 * Fz * Fx * (FCC * Fzx - FCz * FCx) +
                 Fx * Fx * (FCC * Fzz - FCz * FCz)) /
                    (z0 * Fz * Fz * Fz * FCC);
  if (sigma2 <= 0) throw AnalysisError("drmota_moments: sigma^2 is not positive");
  return {cls, parameter, z0, C0, mu, sigma2, precision_bits};
}

bool phi_coefficients_nonnegative(NetworkClass cls, int order) {
  PowerSeries s = phi(cls).series(order);
  for (int n = 0; n <= order; ++n)
    if (s[n] < 0) return false;
  return true;
}

// ----------------------------------------------------------------- export

static std::string real_str(const Real& v, int digits = 40) {
  return v.str(digits);
}

std::string to_json(const AsymptoticReport& r) {
  return json{{"schema", "phynet.asym/1"},
              {"class", class_name(r.cls)},
              {"tau", real_str(r.tau)},
              {"rho", real_str(r.rho)},
              {"c1", real_str(r.c1)},
              {"c2", real_str(r.c2)},
              {"precision_bits", r.precision_bits}}
      .dump(2);
}

std::string to_json(const MomentReport& r) {
  return json{{"schema", "phynet.moments/1"},
              {"class", class_name(r.cls)},
              {"parameter", parameter_name(r.parameter)},
              {"z0", real_str(r.z0)},
              {"C0", real_str(r.C0)},
              {"mu", real_str(r.mu)},
              {"sigma2", real_str(r.sigma2)},
              {"precision_bits", r.precision_bits}}
      .dump(2);
}

}  // namespace phynet
