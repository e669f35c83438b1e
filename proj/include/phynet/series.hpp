#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "phynet/numbers.hpp"

namespace phynet {

// Dense polynomial with exact rational coefficients, index = degree.
using Poly = std::vector<Rat>;

namespace poly {
Poly add(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Rat& c, const Poly& a);
Poly derivative(const Poly& a);
Poly power(const Poly& a, int k);
Rat eval(const Poly& a, const Rat& z);
Real eval(const Poly& a, const Real& z);
bool equal(const Poly& a, const Poly& b);  // ignores trailing zeros
}  // namespace poly

// Truncated power series over Q. All arithmetic stays within the common
// truncation order.
class PowerSeries {
 public:
  explicit PowerSeries(int order);
  static PowerSeries one(int order);
  static PowerSeries z(int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rat& operator[](int n) const { return coeffs_.at(n); }
  void set(int n, Rat v) { coeffs_.at(n) = std::move(v); }

  int valuation() const;  // order()+1 if identically zero
  PowerSeries truncated(int new_order) const;

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend bool operator==(const PowerSeries& a, const PowerSeries& b);

 private:
  std::vector<Rat> coeffs_;
};

PowerSeries mul(const PowerSeries& a, const PowerSeries& b);
PowerSeries scale(const Rat& c, const PowerSeries& a);
// 1/(1-a); requires a(0) == 0.
PowerSeries quasi_inverse(const PowerSeries& a);
PowerSeries pow(const PowerSeries& a, int k);
// 1/a; requires a(0) != 0.
PowerSeries inverse(const PowerSeries& a);
// p(a) for a polynomial p, evaluated by Horner.
PowerSeries compose_poly(const Poly& p, const PowerSeries& a);

// phi = num/den with den(0) != 0.
struct RationalFunction {
  Poly num, den;
  PowerSeries series(int order) const;
  Rat eval(const Rat& z) const;
  Real eval(const Real& z) const;
  Real eval_derivative(const Real& z) const;
  Real eval_second_derivative(const Real& z) const;
};

// Coefficients [z^n]C for n = 1..N of the solution of C = z*phi(C),
// each computed as (1/n) [z^{n-1}] phi^n.  Requires phi(0) != 0.
std::vector<Rat> lagrange_coefficients(const RationalFunction& phi, int N);

// Same solution, computed by the triangular recurrence of C*Q(C) = z*P(C).
// Fast at large orders; cross-checked against lagrange_coefficients in tests.
PowerSeries algebraic_series(const RationalFunction& phi, int order);

// Fixed point of C = F(C) for a contraction F (valuation gains one per pass):
// iterates N+1 times from the zero series, then verifies the residual.
PowerSeries solve_fixpoint(const std::function<PowerSeries(const PowerSeries&)>& F,
                           int N);

// Sparse bivariate polynomial in (x, y); no zero entries are stored.
class BivarPoly {
 public:
  using Key = std::pair<int, int>;  // (x power, y power)
  using Map = std::map<Key, Rat>;

  BivarPoly() = default;
  static BivarPoly constant(Rat c);
  static BivarPoly monomial(int k, int m, Rat c);

  bool is_zero() const { return terms_.empty(); }
  const Map& terms() const { return terms_; }
  Rat coeff(int k, int m) const;

  void add_term(int k, int m, const Rat& c);
  BivarPoly& operator+=(const BivarPoly& o);
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const Rat& c, const BivarPoly& a);
  // multiply by x^k y^m
  BivarPoly shifted(int k, int m) const;
  Rat eval_at_one() const;  // value at x = y = 1
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Map terms_;
};

// Truncated series in z whose coefficients are BivarPoly in (x, y).
class RefinedSeries {
 public:
  explicit RefinedSeries(int order);
  static RefinedSeries one(int order);
  static RefinedSeries z(int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const BivarPoly& operator[](int n) const { return coeffs_.at(n); }
  BivarPoly& at(int n) { return coeffs_.at(n); }

  int valuation() const;
  RefinedSeries truncated(int new_order) const;
  // multiply every coefficient by x^k y^m
  RefinedSeries shifted(int k, int m) const;
  PowerSeries at_one() const;  // specialize x = y = 1

  friend RefinedSeries operator+(const RefinedSeries& a, const RefinedSeries& b);
  friend RefinedSeries operator-(const RefinedSeries& a, const RefinedSeries& b);
  friend bool operator==(const RefinedSeries& a, const RefinedSeries& b);

 private:
  std::vector<BivarPoly> coeffs_;
};

RefinedSeries mul(const RefinedSeries& a, const RefinedSeries& b);
RefinedSeries scale(const Rat& c, const RefinedSeries& a);
RefinedSeries quasi_inverse(const RefinedSeries& a);  // 1/(1-a), a(0) == 0
RefinedSeries pow(const RefinedSeries& a, int k);

RefinedSeries solve_fixpoint(const std::function<RefinedSeries(const RefinedSeries&)>& F,
                             int N);

}  // namespace phynet
