#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phynet/series.hpp"

namespace phynet {

enum class NetworkClass { UnrootedLevel1, RootedLevel1, UnrootedLevel2, RootedLevel2 };

inline constexpr std::array<NetworkClass, 4> kAllClasses = {
    NetworkClass::UnrootedLevel1, NetworkClass::RootedLevel1,
    NetworkClass::UnrootedLevel2, NetworkClass::RootedLevel2};

// Series index n counts leaves minus this offset (unrooted classes are
// indexed by one less than their leaf count).
int leaf_offset(NetworkClass cls);
int class_level(NetworkClass cls);
bool is_rooted_class(NetworkClass cls);
std::string_view class_name(NetworkClass cls);  // unrooted1 | rooted1 | unrooted2 | rooted2
std::optional<NetworkClass> class_from_name(std::string_view name);

// One term of S(C,x,y)/C where the class equation is C = z + S(C,x,y):
// coef * x^xpow * y^ypow * C^cpow / (1-yC)^denpow.
struct RefinedTerm {
  Rat coef;
  int xpow, ypow, cpow, denpow;
};
const std::vector<RefinedTerm>& refined_terms(NetworkClass cls);
int refined_denom_power(NetworkClass cls);  // common (1-yC) power of the class

// Exact univariate phi with C = z*phi(C); derived from the refined terms at
// x = y = 1 and cleared to integer polynomial coefficients.
const RationalFunction& phi(NetworkClass cls);

// EGF coefficients [z^0..z^order] of the class series (cached).
PowerSeries class_egf(NetworkClass cls, int order);

// n! [z^n] of the class EGF; n is the series index (>= 1).
BigInt count(NetworkClass cls, int n);
// Count keyed by number of leaves (>= 1); 0 for the empty series slot of
// unrooted classes at one leaf.
BigInt count_by_leaves(NetworkClass cls, int leaves);

// Explicit multi-index summation formulas.
BigInt closed_count(NetworkClass cls, int n);

// Closed form for rooted level-1 networks with n leaves, k cycles, m inner
// arcs (k >= 1, m >= 1); factorials of negative integers make a summand 0.
BigInt refined_closed_rooted1(int n, int k, int m);

struct CountRecord {
  NetworkClass cls;
  int n_index;
  BigInt count;
};

struct RefinedCountTable {
  NetworkClass cls;
  int n_index;
  std::map<std::pair<int, int>, BigInt> entries;  // (k, m) -> count
  BigInt total() const;
};

// Multivariate fixed-point series of the class (cached).
RefinedSeries refined_series(NetworkClass cls, int order);
RefinedCountTable refined_counts(NetworkClass cls, int n);

// Radical closed form of R(z) inside its disk of convergence [0, 1/8).
Real eval_closed_R(const Real& z);

// Table export.
std::vector<CountRecord> table_records(int leaves_max);
std::string counts_csv(const std::vector<CountRecord>& records);
std::vector<CountRecord> parse_counts_csv(const std::string& text);
std::string counts_json(const std::vector<CountRecord>& records);
std::string refined_csv(const RefinedCountTable& table);
std::string refined_json(const RefinedCountTable& table);

}  // namespace phynet
