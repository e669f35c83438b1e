#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace phynet {

using BigInt = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Arbitrary-precision float. Precision is set per computation via PrecisionGuard;
// a value inherits the precision that was active when it was created.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

struct AnalysisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline unsigned digits10_for_bits(int bits) {
  // ceil(bits * log10(2)) plus headroom
  return static_cast<unsigned>(bits * 0.30103) + 4;
}

class PrecisionGuard {
 public:
  explicit PrecisionGuard(int bits) : saved_(Real::default_precision()) {
    Real::default_precision(digits10_for_bits(bits));
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

BigInt factorial(long long n);

// binomial(a, 0) = 1 for every integer a (including negative ones);
// 0 whenever b < 0 or the choice is impossible.
BigInt binomial(long long a, long long b);

Rat rat_pow(const Rat& base, long long k);

// Exact conversion; throws if the value is not an integer.
BigInt rat_to_int(const Rat& r);

Real rat_to_real(const Rat& r);

}  // namespace phynet
