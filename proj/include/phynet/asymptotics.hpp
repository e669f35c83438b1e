#pragma once

#include <array>
#include <map>
#include <string>

#include "phynet/classes.hpp"

namespace phynet {

enum class Parameter { BlobCount, InnerEdgeCount };
std::string_view parameter_name(Parameter p);

struct AsymptoticReport {
  NetworkClass cls;
  Real tau;   // characteristic root
  Real rho;   // radius of convergence, tau/phi(tau)
  Real c1;    // sqrt(phi(tau)/phi''(tau))
  Real c2;    // 1/(e*rho)
  int precision_bits;
};

struct MomentReport {
  NetworkClass cls;
  Parameter parameter;
  Real z0, C0;  // solution of {C = F(C,z,1), 1 = F_C(C,z,1)}
  Real mu, sigma2;
  int precision_bits;
};

// Smallest positive root of phi's denominator (radius of convergence of phi).
Real phi_radius(NetworkClass cls, int precision_bits = 256);

// Unique root of phi(z) - z phi'(z) in (0, R). Residual below 2^{-bits/2}.
Real characteristic_root(NetworkClass cls, int precision_bits = 256);

AsymptoticReport asymptotic_constants(NetworkClass cls, int precision_bits = 256);

// c1 * c2^n * n^{n-1}
Real asymptotic_estimate(NetworkClass cls, int n, int precision_bits = 256);

MomentReport drmota_moments(NetworkClass cls, Parameter parameter,
                            int precision_bits = 256);

// Hypothesis check: phi's series coefficients are non-negative up to `order`.
bool phi_coefficients_nonnegative(NetworkClass cls, int order);

std::string to_json(const AsymptoticReport& r);
std::string to_json(const MomentReport& r);

namespace detail {

// Sparse polynomial in (C, x, y) over Q.
class TriPoly {
 public:
  using Key = std::array<int, 3>;
  TriPoly() = default;
  static TriPoly constant(Rat c);
  static TriPoly monomial(int cpow, int xpow, int ypow, Rat coef);

  void add_term(const Key& k, const Rat& v);
  TriPoly operator+(const TriPoly& o) const;
  TriPoly operator-(const TriPoly& o) const;
  TriPoly operator*(const TriPoly& o) const;
  TriPoly derivative(int var) const;  // var: 0=C, 1=x, 2=y
  Real eval(const Real& C, const Real& x, const Real& y) const;
  TriPoly pow(int k) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  std::map<Key, Rat> terms_;
};

// Rational expression num/den with exact symbolic partial derivatives.
struct TriRat {
  TriPoly num, den;
  TriRat derivative(int var) const;
  Real eval(const Real& C, const Real& x, const Real& y) const;
};

// phi(C, x, y) for a class, assembled from its refined term table.
TriRat multivariate_phi(NetworkClass cls);

}  // namespace detail

}  // namespace phynet
