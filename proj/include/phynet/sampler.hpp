#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phynet/classes.hpp"
#include "phynet/network.hpp"

namespace phynet {

// Exact per-case counts driving the recursive method.  For a symmetric case
// the stored count is the ordered-configuration count divided by the orbit
// size, so the totals match count(cls, n) exactly.
struct WeightTable {
  NetworkClass cls{};
  int max_n{};
  std::map<std::string, std::vector<BigInt>> case_counts;  // tag -> per-n counts
  // internal arrays for the size-split descent (counts of ordered tuples)
  std::vector<BigInt> net;          // networks per size
  std::vector<BigInt> seq0, seq1, seq2;  // sequences of >=0/1/2 networks per size
  std::map<std::string, std::vector<std::vector<BigInt>>> suffix;  // per-case suffix products
};

WeightTable preprocess(NetworkClass cls, int max_n);

// Uniform over the class at series index n; deterministic for a fixed seed.
// The RNG stream is a single mt19937_64 consumed left-to-right along the
// recursive descent (case choice, size split, label split, sub-structures).
Network sample(const WeightTable& table, int n, std::uint64_t seed);
Network sample(NetworkClass cls, int n, std::uint64_t seed);  // cached table

}  // namespace phynet
