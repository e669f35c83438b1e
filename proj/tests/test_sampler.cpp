#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "phynet/oracle.hpp"
#include "phynet/sampler.hpp"

using namespace phynet;

TEST_CASE("preprocess: case weights sum to the class counts") {
  for (NetworkClass cls : kAllClasses) {
    WeightTable t = preprocess(cls, 12);
    for (int n = 1; n <= 12; ++n) {
      BigInt total = 0;
      for (const auto& [tag, w] : t.case_counts) total += w[n];
      CHECK(total == count(cls, n));
    }
  }
}

TEST_CASE("preprocess: rooted1 case totals at n=2") {
  WeightTable t = preprocess(NetworkClass::RootedLevel1, 4);
  CHECK(t.case_counts.at("0a")[2] == 0);
  CHECK(t.case_counts.at("0b")[2] == 1);
  CHECK(t.case_counts.at("1a")[2] == 2);
  CHECK(t.case_counts.at("1b")[2] == 0);
  CHECK(t.case_counts.at("0a")[1] == 1);
}

TEST_CASE("preprocess: case weights match the oracle per-case histograms") {
  WeightTable tr = preprocess(NetworkClass::RootedLevel2, 3);
  auto oracle = generate_by_case(NetworkClass::RootedLevel2, 2);
  auto oc = [&](const std::string& tag) -> BigInt {
    auto it = oracle.find(tag);
    return it == oracle.end() ? BigInt(0) : BigInt(static_cast<long>(it->second.size()));
  };
  for (const char* tag : {"0a", "0b", "1a", "1b", "2a", "2b", "2c"})
    CHECK(tr.case_counts.at(tag)[2] == oc(tag));
  CHECK(tr.case_counts.at("2d0")[2] + tr.case_counts.at("2d+")[2] == oc("2d"));

  WeightTable tu = preprocess(NetworkClass::UnrootedLevel2, 3);
  auto uoracle = generate_by_case(NetworkClass::UnrootedLevel2, 3);
  BigInt theta_total = 0;
  for (const auto& [tag, nets] : uoracle)
    if (tag != "leaf" && tag != "pair" && tag != "cycle")
      theta_total += static_cast<long>(nets.size());
  CHECK(tu.case_counts.at("theta0")[3] + tu.case_counts.at("theta+")[3] == theta_total);
}

TEST_CASE("sample: base cases and determinism") {
  WeightTable t = preprocess(NetworkClass::RootedLevel1, 8);
  Network one = sample(t, 1, 12345);
  CHECK(one.num_vertices == 1);
  CHECK(one.leaf_labels.at(0) == "1");

  Network a = sample(t, 6, 999);
  Network b = sample(t, 6, 999);
  CHECK(canonical_form(a) == canonical_form(b));
  CHECK(a.edges == b.edges);

  CHECK_THROWS_AS(sample(t, 9, 0), std::invalid_argument);
}

TEST_CASE("every sample validates at the class level") {
  for (NetworkClass cls : kAllClasses) {
    WeightTable t = preprocess(cls, 9);
    for (int n : {2, 5, 9})
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Network net = sample(t, n, seed);
        ValidationResult v = validate(net);
        CHECK(v.ok());
        CHECK(v.level <= class_level(cls));
        CHECK(static_cast<int>(net.leaf_labels.size()) == n + leaf_offset(cls));
      }
  }
}

TEST_CASE("frequencies over the three rooted1 networks on two leaves") {
  WeightTable t = preprocess(NetworkClass::RootedLevel1, 4);
  std::map<std::string, int> freq;
  const int N = 30000;
  for (int seed = 0; seed < N; ++seed) freq[canonical_form(sample(t, 2, seed))]++;
  REQUIRE(freq.size() == 3);
  double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) / N);
  for (const auto& [form, c] : freq)
    CHECK(std::abs(static_cast<double>(c) / N - 1.0 / 3) < 3 * sigma);
}

TEST_CASE("samples of unrooted2 at 3 leaves cover all six networks uniformly") {
  WeightTable t = preprocess(NetworkClass::UnrootedLevel2, 4);
  std::map<std::string, int> freq;
  const int N = 30000;
  for (int seed = 0; seed < N; ++seed) freq[canonical_form(sample(t, 2, seed))]++;
  REQUIRE(freq.size() == 6);
  double chi2 = 0, expect = N / 6.0;
  for (const auto& [form, c] : freq) chi2 += (c - expect) * (c - expect) / expect;
  // 5 dof: far tail threshold (p ~ 1e-3) is 20.5
  CHECK(chi2 < 20.5);
}

TEST_CASE("samples of rooted2 at n=2 cover all 18 networks uniformly") {
  WeightTable t = preprocess(NetworkClass::RootedLevel2, 4);
  std::map<std::string, int> freq;
  const int N = 36000;
  for (int seed = 0; seed < N; ++seed) freq[canonical_form(sample(t, 2, seed))]++;
  REQUIRE(freq.size() == 18);
  double chi2 = 0, expect = N / 18.0;
  for (const auto& [form, c] : freq) chi2 += (c - expect) * (c - expect) / expect;
  // 17 dof: far tail threshold (p ~ 1e-3) is 40.8
  CHECK(chi2 < 40.8);
}

TEST_CASE("cached-table overload is deterministic per seed") {
  Network a = sample(NetworkClass::UnrootedLevel1, 5, 42);
  Network b = sample(NetworkClass::UnrootedLevel1, 5, 42);
  CHECK(canonical_form(a) == canonical_form(b));
}

TEST_CASE("empirical mean of k at n=12 sits near the exact mean") {
  WeightTable t = preprocess(NetworkClass::RootedLevel1, 12);
  RefinedCountTable table = refined_counts(NetworkClass::RootedLevel1, 12);
  Rat num(0), den(0), sq(0);
  for (const auto& [km, c] : table.entries) {
    num += Rat(km.first) * Rat(c);
    sq += Rat(km.first) * Rat(km.first) * Rat(c);
    den += Rat(c);
  }
  double mean = static_cast<double>(rat_to_real(num / den));
  double var = static_cast<double>(rat_to_real(sq / den - (num / den) * (num / den)));
  const int N = 20000;
  double acc = 0;
  for (int seed = 0; seed < N; ++seed) {
    NetParameters p = parameters(sample(t, 12, seed));
    acc += p.k;
  }
  double emp = acc / N;
  double se = std::sqrt(var / N);
  CHECK(std::abs(emp - mean) < 5 * se);
}
