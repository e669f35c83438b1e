#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "phynet/oracle.hpp"

using namespace phynet;

TEST_CASE("generate_all matches the published counts at small n") {
  CHECK(generate_all(NetworkClass::RootedLevel1, 2).size() == 3);
  CHECK(generate_all(NetworkClass::UnrootedLevel2, 2).size() == 6);   // 3 leaves
  CHECK(generate_all(NetworkClass::RootedLevel2, 2).size() == 18);
  CHECK(generate_all(NetworkClass::UnrootedLevel1, 3).size() == 15);  // 4 leaves
}

TEST_CASE("caps are enforced") {
  CHECK_THROWS_AS(generate_all(NetworkClass::RootedLevel2, 9), ResourceError);
  OracleOptions opts;
  opts.cap_level1 = 2;
  CHECK_THROWS_AS(generate_all(NetworkClass::RootedLevel1, 3, opts), ResourceError);
}

TEST_CASE("every generated network validates at the class level") {
  for (NetworkClass cls : kAllClasses) {
    int nmax = class_level(cls) == 2 ? 2 : 3;
    for (int n = 1; n <= nmax; ++n)
      for (const Network& net : generate_all(cls, n)) {
        ValidationResult v = validate(net);
        CHECK(v.ok());
        CHECK(v.level <= class_level(cls));
      }
  }
}

TEST_CASE("generated lists are duplicate-free") {
  for (NetworkClass cls : kAllClasses) {
    std::set<std::string> forms;
    for (const Network& net : generate_all(cls, 2)) CHECK(forms.insert(canonical_form(net)).second);
  }
}

TEST_CASE("level-2 lists contain the level-1 lists") {
  auto forms_of = [](const std::vector<Network>& nets, int max_level) {
    std::set<std::string> out;
    for (const Network& n : nets)
      if (validate(n).level <= max_level) out.insert(canonical_form(n));
    return out;
  };
  for (int n = 1; n <= 2; ++n) {
    auto l2 = forms_of(generate_all(NetworkClass::RootedLevel2, n), 1);
    auto l1 = forms_of(generate_all(NetworkClass::RootedLevel1, n), 1);
    CHECK(l2 == l1);
    auto u2 = forms_of(generate_all(NetworkClass::UnrootedLevel2, n), 1);
    auto u1 = forms_of(generate_all(NetworkClass::UnrootedLevel1, n), 1);
    CHECK(u2 == u1);
  }
}

TEST_CASE("per-case histograms at rooted1 n=2") {
  auto by_case = generate_by_case(NetworkClass::RootedLevel1, 2);
  CHECK(by_case.count("0a") == 0);
  CHECK(by_case.at("0b").size() == 1);
  CHECK(by_case.at("1a").size() == 2);
  CHECK(by_case.count("1b") == 0);
}

TEST_CASE("canonical_form keeps distinct structures apart") {
  auto nets = generate_all(NetworkClass::UnrootedLevel1, 2);  // 2 networks on 3 leaves
  REQUIRE(nets.size() == 2);
  CHECK(canonical_form(nets[0]) != canonical_form(nets[1]));
}

TEST_CASE("verify_counts cross-checks the series") {
  VerifyReport r1 = verify_counts(NetworkClass::RootedLevel1, 3);
  CHECK(r1.ok);
  CHECK(r1.entries[0].generated == 1);
  CHECK(r1.entries[1].generated == 3);
  CHECK(r1.entries[2].generated == 36);

  VerifyReport u1 = verify_counts(NetworkClass::UnrootedLevel1, 3);
  CHECK(u1.ok);
  CHECK(u1.entries[2].generated == 15);

  VerifyReport l2 = verify_counts(NetworkClass::RootedLevel2, 2);
  CHECK(l2.ok);
  CHECK(l2.entries[1].generated == 18);

  std::string j = to_json(l2);
  CHECK(j.find("phynet.verify/1") != std::string::npos);
}

TEST_CASE("oracle (k,m) histograms match the refined tables at n=3") {
  for (NetworkClass cls : {NetworkClass::RootedLevel1, NetworkClass::UnrootedLevel1,
                           NetworkClass::UnrootedLevel2}) {
    std::map<std::pair<int, int>, BigInt> hist;
    for (const Network& net : generate_all(cls, 3)) {
      NetParameters p = parameters(net);
      hist[{p.k, p.m}] += 1;
    }
    RefinedCountTable table = refined_counts(cls, 3);
    CHECK(hist == table.entries);
  }
}

TEST_CASE("generation rules enumerate the case tags") {
  auto rules = generation_rules(NetworkClass::RootedLevel2);
  std::set<std::string> tags;
  for (const auto& r : rules) tags.insert(r.case_tag);
  for (const char* t : {"0a", "0b", "1a", "1b", "2a", "2b", "2c", "2d"})
    CHECK(tags.count(t) == 1);
  auto urules = generation_rules(NetworkClass::UnrootedLevel2);
  tags.clear();
  for (const auto& r : urules) tags.insert(r.case_tag);
  CHECK(tags.count("4E") == 1);
}
