#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "phynet/asymptotics.hpp"

using namespace phynet;

namespace {
bool near(const Real& v, const char* expect, const char* tol) {
  return abs(v - Real(expect)) < Real(tol);
}
}  // namespace

TEST_CASE("characteristic roots match the known values") {
  PrecisionGuard guard(256);
  Real tau_r = characteristic_root(NetworkClass::RootedLevel1);
  Real exact = (Real(5) - sqrt(Real(17))) / 4;
  CHECK(abs(tau_r - exact) < Real("1e-40"));

  CHECK(near(characteristic_root(NetworkClass::UnrootedLevel1), "0.34270", "0.5e-5"));
  CHECK(near(characteristic_root(NetworkClass::UnrootedLevel2), "0.12117", "0.5e-5"));
  CHECK(near(characteristic_root(NetworkClass::RootedLevel2), "0.0445", "0.5e-4"));

  CHECK_THROWS_AS(characteristic_root(NetworkClass::RootedLevel1, 32),
                  std::invalid_argument);
}

TEST_CASE("roots live inside phi's disk of convergence") {
  for (NetworkClass cls : kAllClasses) {
    Real tau = characteristic_root(cls, 128);
    Real R = phi_radius(cls, 128);
    CHECK(tau > 0);
    CHECK(tau < R);
  }
}

TEST_CASE("asymptotic constants") {
  AsymptoticReport g = asymptotic_constants(NetworkClass::UnrootedLevel1);
  CHECK(near(g.rho, "0.19464", "0.5e-5"));
  CHECK(near(g.c1, "0.20748", "0.5e-5"));
  CHECK(near(g.c2, "1.89004", "0.5e-5"));

  AsymptoticReport r = asymptotic_constants(NetworkClass::RootedLevel1);
  CHECK(abs(r.rho - Real(1) / 8) < Real("1e-40"));
  CHECK(near(r.c1, "0.1339", "0.5e-4"));
  {
    PrecisionGuard guard(256);
    Real c1_exact = sqrt(Real(34)) * (sqrt(Real(17)) - 1) / 136;
    CHECK(abs(r.c1 - c1_exact) < Real("1e-40"));
    CHECK(abs(r.c2 - 8 / exp(Real(1))) < Real("1e-40"));
  }

  AsymptoticReport u = asymptotic_constants(NetworkClass::UnrootedLevel2);
  CHECK(near(u.rho, "0.06698", "0.5e-5"));
  CHECK(near(u.c1, "0.07695", "0.5e-5"));
  CHECK(near(u.c2, "5.4925", "0.5e-4"));

  AsymptoticReport l = asymptotic_constants(NetworkClass::RootedLevel2);
  CHECK(near(l.c1, "0.02931", "0.5e-5"));
  CHECK(near(l.c2, "15.433", "0.5e-3"));
  CHECK(near(l.rho, "0.0238", "0.5e-4"));
}

TEST_CASE("asymptotic_estimate sanity") {
  PrecisionGuard guard(256);
  Real est6 = asymptotic_estimate(NetworkClass::RootedLevel1, 6);
  Real ratio = est6 / Real(730755);
  CHECK(ratio > Real("0.8"));
  CHECK(ratio < Real("1.2"));

  PowerSeries r = class_egf(NetworkClass::RootedLevel1, 300);
  BigInt r300 = rat_to_int(r[300] * Rat(factorial(300)));
  Real ratio300 = Real(r300) / asymptotic_estimate(NetworkClass::RootedLevel1, 300);
  CHECK(abs(ratio300 - 1) < Real("0.01"));

  Real est1 = asymptotic_estimate(NetworkClass::UnrootedLevel1, 1);
  CHECK(est1 > 0);
}

TEST_CASE("estimate converges monotonically to the exact count") {
  PrecisionGuard guard(256);
  for (NetworkClass cls : kAllClasses) {
    PowerSeries s = class_egf(cls, 400);
    Real prev = 1e9;
    for (int n : {50, 100, 200, 400}) {
      BigInt cnt = rat_to_int(s[n] * Rat(factorial(n)));
      Real ratio = abs(Real(cnt) / asymptotic_estimate(cls, n) - 1);
      CHECK(ratio < prev);
      prev = ratio;
    }
  }
}

TEST_CASE("drmota moments") {
  MomentReport gx = drmota_moments(NetworkClass::UnrootedLevel1, Parameter::BlobCount);
  CHECK(near(gx.mu, "0.46", "0.5e-2"));
  CHECK(near(gx.sigma2, "0.18", "0.5e-2"));
  CHECK(near(gx.C0, "0.3427", "0.5e-4"));
  CHECK(near(gx.z0, "0.1946", "0.5e-4"));

  MomentReport ry = drmota_moments(NetworkClass::RootedLevel1, Parameter::InnerEdgeCount);
  CHECK(near(ry.mu, "1.93", "0.5e-2"));
  CHECK(near(ry.sigma2, "1.24", "0.5e-2"));
  CHECK(abs(ry.z0 - Real(1) / 8) < Real("1e-30"));

  MomentReport lx = drmota_moments(NetworkClass::RootedLevel2, Parameter::BlobCount);
  CHECK(near(lx.mu, "0.8243", "0.5e-4"));
  CHECK(near(lx.sigma2, "0.1232", "0.5e-4"));
  CHECK(near(lx.C0, "0.04447", "0.5e-5"));
}

TEST_CASE("z0 coincides with rho, C0 with tau") {
  for (NetworkClass cls : kAllClasses) {
    AsymptoticReport a = asymptotic_constants(cls);
    for (Parameter p : {Parameter::BlobCount, Parameter::InnerEdgeCount}) {
      MomentReport m = drmota_moments(cls, p);
      CHECK(abs(m.z0 - a.rho) < Real("1e-20"));
      CHECK(abs(m.C0 - a.tau) < Real("1e-20"));
    }
  }
}

TEST_CASE("the two level-1 blob-count variances differ beyond rounding") {
  // both print as 0.18 at two digits, but they are distinct constants
  MomentReport g = drmota_moments(NetworkClass::UnrootedLevel1, Parameter::BlobCount);
  MomentReport r = drmota_moments(NetworkClass::RootedLevel1, Parameter::BlobCount);
  CHECK(abs(g.sigma2 - r.sigma2) > Real("1e-3"));
  CHECK(near(g.sigma2, "0.17874", "0.5e-4"));
  CHECK(near(r.sigma2, "0.17736", "0.5e-4"));
}

TEST_CASE("finite-n mean of k approaches mu*n") {
  for (NetworkClass cls : {NetworkClass::UnrootedLevel1, NetworkClass::RootedLevel1}) {
    MomentReport m = drmota_moments(cls, Parameter::BlobCount);
    RefinedCountTable t = refined_counts(cls, 30);
    Rat num(0), den(0);
    for (const auto& [km, c] : t.entries) {
      num += Rat(km.first) * Rat(c);
      den += Rat(c);
    }
    Real mean = rat_to_real(num / den);
    CHECK(abs(mean - m.mu * 30) < 2);
  }
}

TEST_CASE("singular inversion hypotheses hold for every class") {
  for (NetworkClass cls : kAllClasses) CHECK(phi_coefficients_nonnegative(cls, 100));
}

TEST_CASE("finite-n slope confirms the unrooted1 inner-edge mean constant") {
  // Exact E[m] from the refined tables; successive differences converge to mu.
  // This pins the limit near 1.6163: it is not within half an ulp of 1.61.
  MomentReport m = drmota_moments(NetworkClass::UnrootedLevel1, Parameter::InnerEdgeCount);
  refined_series(NetworkClass::UnrootedLevel1, 30);
  auto mean_m = [&](int n) {
    RefinedCountTable t = refined_counts(NetworkClass::UnrootedLevel1, n);
    Rat num(0), den(0);
    for (const auto& [km, c] : t.entries) {
      num += Rat(km.second) * Rat(c);
      den += Rat(c);
    }
    return rat_to_real(num / den);
  };
  Real slope = mean_m(30) - mean_m(29);
  CHECK(abs(slope - m.mu) < Real("2e-3"));
  CHECK(abs(slope - Real("1.61")) > Real("0.005"));
}

TEST_CASE("json reports carry precision metadata") {
  std::string j = to_json(asymptotic_constants(NetworkClass::UnrootedLevel1, 128));
  CHECK(j.find("\"precision_bits\": 128") != std::string::npos);
  CHECK(j.find("phynet.asym/1") != std::string::npos);
  std::string m =
      to_json(drmota_moments(NetworkClass::UnrootedLevel1, Parameter::BlobCount, 128));
  CHECK(m.find("phynet.moments/1") != std::string::npos);
}
