#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "phynet/classes.hpp"

using namespace phynet;

TEST_CASE("univariate phi matches the known polynomial forms") {
  // derived from the refined term tables; must equal the closed expressions
  const RationalFunction& g = phi(NetworkClass::UnrootedLevel1);
  CHECK(poly::equal(g.num, {Rat(2), Rat(-2)}));
  CHECK(poly::equal(g.den, {Rat(2), Rat(-4), Rat(1)}));

  const RationalFunction& r = phi(NetworkClass::RootedLevel1);
  CHECK(poly::equal(r.num, {Rat(2), Rat(-4), Rat(2)}));
  CHECK(poly::equal(r.den, {Rat(2), Rat(-7), Rat(5), Rat(-1)}));

  const RationalFunction& u = phi(NetworkClass::UnrootedLevel2);
  CHECK(poly::equal(u.num, {Rat(4), Rat(-16), Rat(24), Rat(-16), Rat(4)}));
  CHECK(poly::equal(u.den, {Rat(4), Rat(-28), Rat(54), Rat(-48), Rat(20), Rat(-3)}));

  const RationalFunction& l = phi(NetworkClass::RootedLevel2);
  CHECK(poly::equal(l.num, {Rat(4), Rat(-24), Rat(60), Rat(-80), Rat(60), Rat(-24), Rat(4)}));
  CHECK(poly::equal(l.den, {Rat(4), Rat(-60), Rat(162), Rat(-239), Rat(208), Rat(-105),
                            Rat(28), Rat(-3)}));
}

TEST_CASE("phi basics") {
  for (NetworkClass cls : kAllClasses) CHECK(phi(cls).eval(Rat(0)) == 1);
  // numerator coefficient of z in phi_L's defining fraction: 36/4 = 9 = l_2/2!
  PowerSeries l = class_egf(NetworkClass::RootedLevel2, 2);
  CHECK(l[2] == 9);
}

TEST_CASE("count reproduces the known values") {
  CHECK(count(NetworkClass::RootedLevel1, 4) == 723);
  CHECK(count(NetworkClass::RootedLevel2, 6) == BigInt("3332111850"));
  CHECK(count(NetworkClass::UnrootedLevel2, 1) == 1);  // one network on 2 leaves
  CHECK(count_by_leaves(NetworkClass::UnrootedLevel2, 2) == 1);
  CHECK(count_by_leaves(NetworkClass::UnrootedLevel1, 1) == 0);
  CHECK_THROWS_AS(count(NetworkClass::RootedLevel1, 0), std::invalid_argument);
}

TEST_CASE("series anchors") {
  PowerSeries u = class_egf(NetworkClass::UnrootedLevel2, 5);
  CHECK(u[1] == 1);
  CHECK(u[2] == 3);
  CHECK(u[3] == Rat(45, 2));
  CHECK(u[4] == Rat(421, 2));
  CHECK(u[5] == Rat(8809, 4));

  PowerSeries l = class_egf(NetworkClass::RootedLevel2, 6);
  CHECK(l[1] == 1);
  CHECK(l[2] == 9);
  CHECK(l[3] == Rat(381, 2));
  CHECK(l[4] == Rat(20013, 4));
  CHECK(l[5] == Rat(588119, 4));
  CHECK(l[6] == Rat(37023465, 8));
}

TEST_CASE("closed_count examples") {
  CHECK(closed_count(NetworkClass::UnrootedLevel1, 2) == 2);
  CHECK(closed_count(NetworkClass::RootedLevel1, 5) == 20280);
  CHECK(closed_count(NetworkClass::UnrootedLevel2, 5) == 264270);
  CHECK(closed_count(NetworkClass::RootedLevel2, 1) == 1);
}

TEST_CASE("closed_count equals count for n <= 25") {
  for (NetworkClass cls : kAllClasses)
    for (int n = 1; n <= 25; ++n) CHECK(closed_count(cls, n) == count(cls, n));
}

TEST_CASE("counts are integral and non-negative") {
  for (NetworkClass cls : kAllClasses) {
    PowerSeries s = class_egf(cls, 30);
    BigInt fac = 1;
    for (int n = 1; n <= 30; ++n) {
      fac *= n;
      BigInt c = rat_to_int(s[n] * Rat(fac));  // throws if not integral
      CHECK(c >= 0);
    }
  }
}

TEST_CASE("refined_counts small examples") {
  RefinedCountTable r2 = refined_counts(NetworkClass::RootedLevel1, 2);
  CHECK(r2.entries.size() == 2);
  CHECK(r2.entries.at({0, 0}) == 1);
  CHECK(r2.entries.at({1, 3}) == 2);

  RefinedCountTable g2 = refined_counts(NetworkClass::UnrootedLevel1, 2);
  CHECK(g2.entries.size() == 2);
  CHECK(g2.entries.at({0, 0}) == 1);
  CHECK(g2.entries.at({1, 3}) == 1);

  CHECK(refined_counts(NetworkClass::RootedLevel2, 2).total() == 18);
}

TEST_CASE("refined marginals equal counts for n <= 12") {
  for (NetworkClass cls : kAllClasses) {
    refined_series(cls, 12);  // warm the cache once
    for (int n = 1; n <= 12; ++n)
      CHECK(refined_counts(cls, n).total() == count(cls, n));
  }
}

TEST_CASE("refined support: m >= 3k") {
  for (NetworkClass cls : kAllClasses) {
    for (int n = 1; n <= 10; ++n)
      for (const auto& [km, c] : refined_counts(cls, n).entries)
        if (km.first >= 1) CHECK(km.second >= 3 * km.first);
  }
}

TEST_CASE("refined_closed_rooted1") {
  CHECK(refined_closed_rooted1(2, 1, 3) == 2);
  CHECK(refined_closed_rooted1(2, 1, 4) == 0);

  // r_3 = tree term + sum over the refined support
  BigInt tot = rat_to_int(Rat(factorial(4), BigInt(factorial(2)) << 2));
  for (int k = 1; k <= 2; ++k)
    for (int m = 3 * k; m <= 3 + 2 * k - 1; ++m) tot += refined_closed_rooted1(3, k, m);
  CHECK(tot == 36);

  // against the refined tables over the full support, n <= 12
  for (int n = 1; n <= 12; ++n) {
    RefinedCountTable table = refined_counts(NetworkClass::RootedLevel1, n);
    for (int k = 1; k <= n - 1; ++k)
      for (int m = 3 * k; m <= n + 2 * k - 1; ++m) {
        BigInt expect = 0;
        auto it = table.entries.find({k, m});
        if (it != table.entries.end()) expect = it->second;
        CHECK(refined_closed_rooted1(n, k, m) == expect);
      }
  }
}

TEST_CASE("eval_closed_R") {
  PrecisionGuard guard(256);
  CHECK(eval_closed_R(Real(0)) == 0);

  PowerSeries r = class_egf(NetworkClass::RootedLevel1, 60);
  auto series_value = [&](const Real& z) {
    Real acc = 0;
    for (int n = 60; n >= 1; --n) acc = acc * z + rat_to_real(r[n]);
    return acc * z;
  };
  Real z1 = Real(1) / 20;
  CHECK(abs(eval_closed_R(z1) - series_value(z1)) < Real("1e-12"));

  Real z2 = Real("0.12");
  Real v = eval_closed_R(z2);
  CHECK(v > 0);
  CHECK(v < 10);
  // order-60 truncation at z=0.12 carries a visible tail; compare loosely
  CHECK(abs(v - series_value(z2)) < Real("1e-3"));

  CHECK_THROWS_AS(eval_closed_R(Real(1) / 8), std::domain_error);
  CHECK_THROWS_AS(eval_closed_R(Real(-1)), std::domain_error);
}

TEST_CASE("csv round trip") {
  std::vector<CountRecord> recs = table_records(6);
  std::string csv = counts_csv(recs);
  std::vector<CountRecord> back = parse_counts_csv(csv);
  REQUIRE(back.size() == recs.size());
  for (size_t i = 0; i < recs.size(); ++i) {
    CHECK(back[i].cls == recs[i].cls);
    CHECK(back[i].n_index == recs[i].n_index);
    CHECK(back[i].count == recs[i].count);
  }
}
