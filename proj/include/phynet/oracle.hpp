#pragma once

#include <map>
#include <string>
#include <vector>

#include "phynet/classes.hpp"
#include "phynet/network.hpp"

namespace phynet {

// One top-level case of a class's recursive description; arity is the number
// of sub-network / sequence slots the case consumes.
struct GenerationRule {
  NetworkClass cls;
  std::string case_tag;
  int arity;
};
std::vector<GenerationRule> generation_rules(NetworkClass cls);

struct OracleOptions {
  int cap_level1 = 5;
  int cap_rooted2 = 3;
  int cap_unrooted2 = 4;
  bool allow_big = false;  // permits rooted2 n = 4 (120 078 networks)
};

// Complete duplicate-free list (up to leaf-labeled isomorphism) of the
// networks of the class with series index n.  Rooted classes use labels
// {1..n}; unrooted classes return networks on {1..n} plus the '#' leaf.
std::vector<Network> generate_all(NetworkClass cls, int n, const OracleOptions& opts = {});
std::map<std::string, std::vector<Network>> generate_by_case(NetworkClass cls, int n,
                                                             const OracleOptions& opts = {});

struct VerifyEntry {
  int n{};
  BigInt generated, expected;
  bool count_ok{}, refined_ok{};
  std::map<std::string, BigInt> per_case;
  std::vector<std::string> mismatches;
};
struct VerifyReport {
  NetworkClass cls;
  std::vector<VerifyEntry> entries;
  bool ok{};
};

// Compares |generate_all| with count() and the per-(k,m) histogram with
// refined_counts() for every n <= n_max.
VerifyReport verify_counts(NetworkClass cls, int n_max, const OracleOptions& opts = {});
std::string to_json(const VerifyReport& report);

}  // namespace phynet
