#include "phynet/series.hpp"

#include <algorithm>
#include <cmath>

namespace phynet {

// ---------------------------------------------------------------- numbers

BigInt factorial(long long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative integer");
  BigInt r = 1;
  for (long long i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(long long a, long long b) {
  if (b == 0) return 1;
  if (b < 0 || a < b) return 0;
  BigInt r = 1;
  for (long long i = 0; i < b; ++i) {
    r *= (a - i);
    r /= (i + 1);
  }
  return r;
}

Rat rat_pow(const Rat& base, long long k) {
  if (k < 0) {
    if (base == 0) throw std::domain_error("rat_pow: zero to negative power");
    return 1 / rat_pow(base, -k);
  }
  Rat r = 1, b = base;
  long long e = k;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

BigInt rat_to_int(const Rat& r) {
  if (denominator(r) != 1)
    throw std::invalid_argument("rat_to_int: value is not an integer");
  return numerator(r);
}

Real rat_to_real(const Rat& r) {
  return Real(numerator(r)) / Real(denominator(r));
}

// ------------------------------------------------------------------- poly

namespace poly {

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly scale(const Rat& c, const Poly& a) {
  Poly r = a;
  for (auto& v : r) v *= c;
  return r;
}

Poly derivative(const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Rat(static_cast<long>(i));
  return r;
}

Poly power(const Poly& a, int k) {
  Poly r{Rat(1)};
  for (int i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

Rat eval(const Poly& a, const Rat& z) {
  Rat r = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * z + *it;
  return r;
}

Real eval(const Poly& a, const Real& z) {
  Real r = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * z + rat_to_real(*it);
  return r;
}

bool equal(const Poly& a, const Poly& b) {
  size_t n = std::max(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    Rat x = i < a.size() ? a[i] : Rat(0);
    Rat y = i < b.size() ? b[i] : Rat(0);
    if (x != y) return false;
  }
  return true;
}

}  // namespace poly

// ------------------------------------------------------------ PowerSeries

PowerSeries::PowerSeries(int order) {
  if (order < 0) throw std::invalid_argument("PowerSeries: negative order");
  coeffs_.assign(order + 1, Rat(0));
}

PowerSeries PowerSeries::one(int order) {
  PowerSeries s(order);
  s.coeffs_[0] = 1;
  return s;
}

PowerSeries PowerSeries::z(int order) {
  PowerSeries s(order);
  if (order >= 1) s.coeffs_[1] = 1;
  return s;
}

int PowerSeries::valuation() const {
  for (int n = 0; n <= order(); ++n)
    if (coeffs_[n] != 0) return n;
  return order() + 1;
}

PowerSeries PowerSeries::truncated(int new_order) const {
  PowerSeries s(new_order);
  for (int n = 0; n <= std::min(new_order, order()); ++n) s.coeffs_[n] = coeffs_[n];
  return s;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("PowerSeries +: order mismatch");
  PowerSeries r(a.order());
  for (int n = 0; n <= a.order(); ++n) r.coeffs_[n] = a.coeffs_[n] + b.coeffs_[n];
  return r;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("PowerSeries -: order mismatch");
  PowerSeries r(a.order());
  for (int n = 0; n <= a.order(); ++n) r.coeffs_[n] = a.coeffs_[n] - b.coeffs_[n];
  return r;
}

bool operator==(const PowerSeries& a, const PowerSeries& b) {
  return a.coeffs_ == b.coeffs_;
}

PowerSeries mul(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("PowerSeries mul: order mismatch");
  int N = a.order();
  PowerSeries r(N);
  for (int i = 0; i <= N; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j + i <= N; ++j) {
      if (b[j] == 0) continue;
      r.set(i + j, r[i + j] + a[i] * b[j]);
    }
  }
  return r;
}

PowerSeries scale(const Rat& c, const PowerSeries& a) {
  PowerSeries r(a.order());
  for (int n = 0; n <= a.order(); ++n) r.set(n, c * a[n]);
  return r;
}

PowerSeries quasi_inverse(const PowerSeries& a) {
  if (a[0] != 0)
    throw std::invalid_argument("quasi_inverse: nonzero constant term");
  int N = a.order();
  PowerSeries b(N);
  b.set(0, 1);
  for (int n = 1; n <= N; ++n) {
    Rat s = 0;
    for (int k = 1; k <= n; ++k)
      if (a[k] != 0) s += a[k] * b[n - k];
    b.set(n, s);
  }
  return b;
}

PowerSeries pow(const PowerSeries& a, int k) {
  if (k < 0) throw std::invalid_argument("pow: negative exponent");
  PowerSeries r = PowerSeries::one(a.order());
  PowerSeries base = a;
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return r;
}

PowerSeries inverse(const PowerSeries& a) {
  if (a[0] == 0) throw std::invalid_argument("inverse: zero constant term");
  int N = a.order();
  PowerSeries b(N);
  Rat inv0 = 1 / a[0];
  b.set(0, inv0);
  for (int n = 1; n <= N; ++n) {
    Rat s = 0;
    for (int k = 1; k <= n; ++k)
      if (a[k] != 0) s += a[k] * b[n - k];
    b.set(n, -inv0 * s);
  }
  return b;
}

PowerSeries compose_poly(const Poly& p, const PowerSeries& a) {
  PowerSeries r(a.order());
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    r = mul(r, a);
    r.set(0, r[0] + *it);
  }
  return r;
}

// ------------------------------------------------------- RationalFunction

PowerSeries RationalFunction::series(int order) const {
  PowerSeries n(order), d(order);
  for (int i = 0; i <= order && i < static_cast<int>(num.size()); ++i)
    n.set(i, num[i]);
  for (int i = 0; i <= order && i < static_cast<int>(den.size()); ++i)
    d.set(i, den[i]);
  return mul(n, inverse(d));
}

Rat RationalFunction::eval(const Rat& z) const {
  return poly::eval(num, z) / poly::eval(den, z);
}

Real RationalFunction::eval(const Real& z) const {
  return poly::eval(num, z) / poly::eval(den, z);
}

Real RationalFunction::eval_derivative(const Real& z) const {
  Real p = poly::eval(num, z), q = poly::eval(den, z);
  Real dp = poly::eval(poly::derivative(num), z);
  Real dq = poly::eval(poly::derivative(den), z);
  return (dp * q - p * dq) / (q * q);
}

Real RationalFunction::eval_second_derivative(const Real& z) const {
  Poly d1n = poly::derivative(num), d1d = poly::derivative(den);
  Real p = poly::eval(num, z), q = poly::eval(den, z);
  Real dp = poly::eval(d1n, z), dq = poly::eval(d1d, z);
  Real ddp = poly::eval(poly::derivative(d1n), z);
  Real ddq = poly::eval(poly::derivative(d1d), z);
  return (ddp * q * q - 2 * dp * dq * q - p * ddq * q + 2 * p * dq * dq) / (q * q * q);
}

// --------------------------------------------------------------- Lagrange

std::vector<Rat> lagrange_coefficients(const RationalFunction& phi, int N) {
  if (N < 1) throw std::invalid_argument("lagrange_coefficients: N must be >= 1");
  if (phi.eval(Rat(0)) == 0)
    throw std::invalid_argument("lagrange_coefficients: phi(0) must be nonzero");
  PowerSeries phiS = phi.series(N - 1);
  PowerSeries cur = PowerSeries::one(N - 1);
  std::vector<Rat> out;
  out.reserve(N);
  for (int n = 1; n <= N; ++n) {
    cur = mul(cur, phiS);  // phi^n
    out.push_back(cur[n - 1] / Rat(n));
  }
  return out;
}

PowerSeries algebraic_series(const RationalFunction& phi, int order) {
  // C = z*P(C)/Q(C)  <=>  C*Q(C) = z*P(C); solve coefficient by coefficient.
  const Poly& P = phi.num;
  const Poly& Q = phi.den;
  if (Q.empty() || Q[0] == 0)
    throw std::invalid_argument("algebraic_series: Q(0) must be nonzero");
  int dp = static_cast<int>(P.size()) - 1;
  int dq = static_cast<int>(Q.size()) - 1;
  int maxpow = std::max(dq + 1, dp);
  int N = order;
  std::vector<std::vector<Rat>> pw(maxpow + 1, std::vector<Rat>(N + 1, Rat(0)));
  pw[0][0] = 1;
  std::vector<Rat> c(N + 1, Rat(0));
  for (int n = 1; n <= N; ++n) {
    for (int j = 2; j <= maxpow; ++j) {
      Rat s = 0;
      for (int k = 1; k < n; ++k)
        if (c[k] != 0) s += c[k] * pw[j - 1][n - k];
      pw[j][n] = s;
    }
    Rat rhs = 0;
    for (int j = 0; j <= dp; ++j)
      if (P[j] != 0) rhs += P[j] * pw[j][n - 1];
    Rat lhs_known = 0;
    for (int j = 1; j <= dq; ++j)
      if (Q[j] != 0) lhs_known += Q[j] * pw[j + 1][n];
    c[n] = (rhs - lhs_known) / Q[0];
    pw[1][n] = c[n];
  }
  PowerSeries out(N);
  for (int n = 0; n <= N; ++n) out.set(n, c[n]);
  return out;
}

PowerSeries solve_fixpoint(const std::function<PowerSeries(const PowerSeries&)>& F,
                           int N) {
  PowerSeries C(N);
  for (int i = 0; i <= N; ++i) C = F(C);
  PowerSeries res = F(C) - C;
  if (res.valuation() <= N)
    throw DivergenceError("solve_fixpoint: residual after N+1 iterations is not O(z^{N+1})");
  return C;
}

// -------------------------------------------------------------- BivarPoly

BivarPoly BivarPoly::constant(Rat c) { return monomial(0, 0, std::move(c)); }

BivarPoly BivarPoly::monomial(int k, int m, Rat c) {
  BivarPoly p;
  if (c != 0) p.terms_[{k, m}] = std::move(c);
  return p;
}

Rat BivarPoly::coeff(int k, int m) const {
  auto it = terms_.find({k, m});
  return it == terms_.end() ? Rat(0) : it->second;
}

void BivarPoly::add_term(int k, int m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace({k, m}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
  for (const auto& [key, v] : o.terms_) add_term(key.first, key.second, v);
  return *this;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly r;
  for (const auto& [ka, va] : a.terms_)
    for (const auto& [kb, vb] : b.terms_)
      r.add_term(ka.first + kb.first, ka.second + kb.second, va * vb);
  return r;
}

BivarPoly operator*(const Rat& c, const BivarPoly& a) {
  BivarPoly r;
  if (c == 0) return r;
  for (const auto& [key, v] : a.terms_) r.terms_[key] = c * v;
  return r;
}

BivarPoly BivarPoly::shifted(int k, int m) const {
  BivarPoly r;
  for (const auto& [key, v] : terms_) r.terms_[{key.first + k, key.second + m}] = v;
  return r;
}

Rat BivarPoly::eval_at_one() const {
  Rat s = 0;
  for (const auto& [key, v] : terms_) s += v;
  return s;
}

// ----------------------------------------------------------- RefinedSeries

RefinedSeries::RefinedSeries(int order) {
  if (order < 0) throw std::invalid_argument("RefinedSeries: negative order");
  coeffs_.assign(order + 1, BivarPoly{});
}

RefinedSeries RefinedSeries::one(int order) {
  RefinedSeries s(order);
  s.coeffs_[0] = BivarPoly::constant(Rat(1));
  return s;
}

RefinedSeries RefinedSeries::z(int order) {
  RefinedSeries s(order);
  if (order >= 1) s.coeffs_[1] = BivarPoly::constant(Rat(1));
  return s;
}

int RefinedSeries::valuation() const {
  for (int n = 0; n <= order(); ++n)
    if (!coeffs_[n].is_zero()) return n;
  return order() + 1;
}

RefinedSeries RefinedSeries::truncated(int new_order) const {
  RefinedSeries s(new_order);
  for (int n = 0; n <= std::min(new_order, order()); ++n) s.coeffs_[n] = coeffs_[n];
  return s;
}

RefinedSeries RefinedSeries::shifted(int k, int m) const {
  RefinedSeries s(order());
  for (int n = 0; n <= order(); ++n) s.coeffs_[n] = coeffs_[n].shifted(k, m);
  return s;
}

PowerSeries RefinedSeries::at_one() const {
  PowerSeries s(order());
  for (int n = 0; n <= order(); ++n) s.set(n, coeffs_[n].eval_at_one());
  return s;
}

RefinedSeries operator+(const RefinedSeries& a, const RefinedSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("RefinedSeries +: order mismatch");
  RefinedSeries r = a;
  for (int n = 0; n <= a.order(); ++n) r.coeffs_[n] += b.coeffs_[n];
  return r;
}

RefinedSeries operator-(const RefinedSeries& a, const RefinedSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("RefinedSeries -: order mismatch");
  RefinedSeries r = a;
  for (int n = 0; n <= a.order(); ++n) r.coeffs_[n] += Rat(-1) * b.coeffs_[n];
  return r;
}

bool operator==(const RefinedSeries& a, const RefinedSeries& b) {
  if (a.order() != b.order()) return false;
  for (int n = 0; n <= a.order(); ++n)
    if (!(a.coeffs_[n] == b.coeffs_[n])) return false;
  return true;
}

RefinedSeries mul(const RefinedSeries& a, const RefinedSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("RefinedSeries mul: order mismatch");
  int N = a.order();
  RefinedSeries r(N);
  for (int i = 0; i <= N; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j + i <= N; ++j) {
      if (b[j].is_zero()) continue;
      r.at(i + j) += a[i] * b[j];
    }
  }
  return r;
}

RefinedSeries scale(const Rat& c, const RefinedSeries& a) {
  RefinedSeries r(a.order());
  for (int n = 0; n <= a.order(); ++n) r.at(n) = c * a[n];
  return r;
}

RefinedSeries quasi_inverse(const RefinedSeries& a) {
  if (!a[0].is_zero())
    throw std::invalid_argument("quasi_inverse: nonzero constant term");
  int N = a.order();
  RefinedSeries b(N);
  b.at(0) = BivarPoly::constant(Rat(1));
  for (int n = 1; n <= N; ++n) {
    BivarPoly s;
    for (int k = 1; k <= n; ++k)
      if (!a[k].is_zero()) s += a[k] * b[n - k];
    b.at(n) = s;
  }
  return b;
}

RefinedSeries pow(const RefinedSeries& a, int k) {
  if (k < 0) throw std::invalid_argument("pow: negative exponent");
  RefinedSeries r = RefinedSeries::one(a.order());
  RefinedSeries base = a;
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return r;
}

RefinedSeries solve_fixpoint(const std::function<RefinedSeries(const RefinedSeries&)>& F,
                             int N) {
  RefinedSeries C(N);
  for (int i = 0; i <= N; ++i) C = F(C);
  RefinedSeries res = F(C) - C;
  if (res.valuation() <= N)
    throw DivergenceError("solve_fixpoint: residual after N+1 iterations is not O(z^{N+1})");
  return C;
}

}  // namespace phynet
