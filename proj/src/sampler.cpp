#include "phynet/sampler.hpp"

#include <mutex>
#include <random>

#include "phynet/builders.hpp"

namespace phynet {

namespace {

// Slot kinds of a variant.  A case with symmetry factors or nonemptiness
// constraints is split into variants that are plain labeled products, so the
// descent below never rejects and every sub-structure is strictly smaller.
enum class Slot { Net, Seq0, Seq1, Seq2, Empty };

struct Variant {
  std::vector<Slot> slots;
};

struct CaseDef {
  std::string tag;
  int orbit;  // ordered configurations per network
  std::vector<Variant> variants;
};

std::vector<Variant> subset_variants(int fixed_nets, int arcs) {
  // one variant per nonempty subset of decorated arcs
  std::vector<Variant> out;
  for (unsigned mask = 1; mask < (1u << arcs); ++mask) {
    Variant v;
    for (int i = 0; i < fixed_nets; ++i) v.slots.push_back(Slot::Net);
    for (int a = 0; a < arcs; ++a)
      v.slots.push_back((mask >> a) & 1 ? Slot::Seq1 : Slot::Empty);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<CaseDef> case_defs(NetworkClass cls) {
  std::vector<CaseDef> out;
  bool rooted = is_rooted_class(cls);
  if (rooted) {
    out.push_back({"0a", 1, {}});
    out.push_back({"0b", 2, {{{Slot::Net, Slot::Net}}}});
    out.push_back({"1a", 1, {{{Slot::Seq1, Slot::Net}}}});
    out.push_back({"1b", 2, {{{Slot::Seq1, Slot::Seq1, Slot::Net}}}});
    if (class_level(cls) == 2) {
      out.push_back({"2a", 1, subset_variants(1, 5)});
      {
        // slots: [pendant, rho->u, rho->r, e, e', w->r]
        CaseDef c{"2b", 2, {}};
        for (auto [e, ep] : {std::pair{Slot::Seq1, Slot::Empty},
                             std::pair{Slot::Empty, Slot::Seq1},
                             std::pair{Slot::Seq1, Slot::Seq1}})
          c.variants.push_back({{Slot::Net, Slot::Seq0, Slot::Seq0, e, ep, Slot::Seq0}});
        out.push_back(std::move(c));
      }
      out.push_back({"2c",
                     1,
                     {{{Slot::Net, Slot::Net, Slot::Seq0, Slot::Seq0, Slot::Seq0,
                        Slot::Seq0, Slot::Seq0, Slot::Seq0}}}});
      out.push_back({"2d0",
                     2,
                     {{{Slot::Net, Slot::Net, Slot::Empty, Slot::Empty, Slot::Empty,
                        Slot::Empty, Slot::Empty, Slot::Empty}}}});
      out.push_back({"2d+", 4, subset_variants(2, 6)});
    }
  } else {
    out.push_back({"leaf", 1, {}});
    out.push_back({"pair", 2, {{{Slot::Net, Slot::Net}}}});
    out.push_back({"cycle", 2, {{{Slot::Seq2}}}});
    if (class_level(cls) == 2) {
      // slots: [p, q, s, t]; s and t are the parallel edges of the generator
      out.push_back({"theta0", 2, {{{Slot::Empty, Slot::Empty, Slot::Net, Slot::Net}}}});
      CaseDef plus{"theta+", 4, {}};
      const Slot kinds[3] = {Slot::Empty, Slot::Net, Slot::Seq2};
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int cdx = 0; cdx < 3; ++cdx)
            for (int d = 0; d < 3; ++d) {
              Slot sp = kinds[a], sq = kinds[b], ss = kinds[cdx], st = kinds[d];
              if (ss == Slot::Empty && st == Slot::Empty) continue;
              int singles = (sp == Slot::Net) + (sq == Slot::Net) + (ss == Slot::Net) +
                            (st == Slot::Net);
              int multis = (sp == Slot::Seq2) + (sq == Slot::Seq2) + (ss == Slot::Seq2) +
                           (st == Slot::Seq2);
              if (multis == 0 && singles < 2) continue;  // fewer than two pendants
              if (sp == Slot::Empty && sq == Slot::Empty && ss == Slot::Net &&
                  st == Slot::Net)
                continue;  // that is theta0
              plus.variants.push_back({{sp, sq, ss, st}});
            }
      out.push_back(std::move(plus));
    }
  }
  return out;
}

std::vector<BigInt> counts_from_egf(const PowerSeries& s) {
  std::vector<BigInt> out(s.order() + 1);
  BigInt fac = 1;
  for (int n = 0; n <= s.order(); ++n) {
    if (n > 0) fac *= n;
    out[n] = rat_to_int(s[n] * Rat(fac));
  }
  return out;
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  BigInt below(const BigInt& n) {
    if (n <= 0) throw std::invalid_argument("Rng::below: empty range");
    if (n == 1) return 0;
    unsigned bits = boost::multiprecision::msb(n) + 1;
    unsigned words = (bits + 63) / 64;
    while (true) {
      BigInt x = 0;
      for (unsigned w = 0; w < words; ++w) x = (x << 64) | BigInt(eng());
      x >>= (words * 64 - bits);
      if (x < n) return x;
    }
  }

  size_t pick(const std::vector<BigInt>& weights) {
    BigInt total = 0;
    for (const BigInt& w : weights) total += w;
    BigInt x = below(total);
    for (size_t i = 0; i < weights.size(); ++i) {
      if (x < weights[i]) return i;
      x -= weights[i];
    }
    throw AnalysisError("Rng::pick: weights exhausted");
  }
};

// uniformly choose a k-subset of labels; returns (subset, rest) keeping order
std::pair<std::vector<std::string>, std::vector<std::string>> choose_subset(
    const std::vector<std::string>& labels, int k, Rng& rng) {
  std::vector<std::string> subset, rest;
  int n = static_cast<int>(labels.size());
  int need = k;
  for (int i = 0; i < n; ++i) {
    int left = n - i;
    if (need > 0 && rng.below(left) < need) {
      subset.push_back(labels[i]);
      need--;
    } else {
      rest.push_back(labels[i]);
    }
  }
  return {subset, rest};
}

}  // namespace

// Per-class tables beyond the public WeightTable fields.
struct SamplerTables {
  std::vector<CaseDef> cases;
  // per case tag: per variant: weight array and suffix arrays
  std::map<std::string, std::vector<std::vector<BigInt>>> variant_weights;
  std::map<std::string, std::vector<std::vector<std::vector<BigInt>>>> variant_suffix;
};

namespace {

std::mutex g_tables_mutex;
std::map<std::pair<NetworkClass, int>, SamplerTables> g_tables;

const std::vector<BigInt>& slot_array(const WeightTable& t, Slot k) {
  static const std::vector<BigInt> empty_one = {BigInt(1)};
  switch (k) {
    case Slot::Net: return t.net;
    case Slot::Seq0: return t.seq0;
    case Slot::Seq1: return t.seq1;
    case Slot::Seq2: return t.seq2;
    case Slot::Empty: return empty_one;  // only size 0 possible
  }
  throw std::invalid_argument("slot_array: bad kind");
}

BigInt slot_count(const WeightTable& t, Slot k, int m) {
  const std::vector<BigInt>& arr = slot_array(t, k);
  if (m >= static_cast<int>(arr.size())) return 0;
  return arr[m];
}

const SamplerTables& tables_for(const WeightTable& t) {
  std::lock_guard<std::mutex> lock(g_tables_mutex);
  auto key = std::make_pair(t.cls, t.max_n);
  auto it = g_tables.find(key);
  if (it != g_tables.end()) return it->second;
  SamplerTables tabs;
  tabs.cases = case_defs(t.cls);
  for (const CaseDef& cd : tabs.cases) {
    std::vector<std::vector<BigInt>> weights;
    std::vector<std::vector<std::vector<BigInt>>> suffixes;
    for (const Variant& v : cd.variants) {
      size_t k = v.slots.size();
      std::vector<std::vector<BigInt>> suf(k + 1, std::vector<BigInt>(t.max_n + 1, 0));
      suf[k][0] = 1;
      for (int i = static_cast<int>(k) - 1; i >= 0; --i)
        for (int m = 0; m <= t.max_n; ++m) {
          BigInt s = 0;
          for (int j = 0; j <= m; ++j) {
            BigInt f = slot_count(t, v.slots[i], j);
            if (f != 0 && suf[i + 1][m - j] != 0)
              s += binomial(m, j) * f * suf[i + 1][m - j];
          }
          suf[i][m] = s;
        }
      weights.push_back(suf[0]);
      suffixes.push_back(std::move(suf));
    }
    // ordered-variant totals must reproduce orbit * case count
    if (!cd.variants.empty()) {
      const std::vector<BigInt>& cw = t.case_counts.at(cd.tag);
      for (int n = 1; n <= t.max_n; ++n) {
        BigInt tot = 0;
        for (const auto& w : weights) tot += w[n];
        if (tot != cw[n] * cd.orbit)
          throw AnalysisError("sampler tables: variant total mismatch for case " + cd.tag +
                              " at n=" + std::to_string(n));
      }
    }
    tabs.variant_weights[cd.tag] = std::move(weights);
    tabs.variant_suffix[cd.tag] = std::move(suffixes);
  }
  return g_tables.emplace(key, std::move(tabs)).first->second;
}

}  // namespace

WeightTable preprocess(NetworkClass cls, int max_n) {
  if (max_n < 1) throw std::invalid_argument("preprocess: max_n must be >= 1");
  WeightTable t;
  t.cls = cls;
  t.max_n = max_n;
  PowerSeries X = class_egf(cls, max_n);
  PowerSeries qi = quasi_inverse(X);
  PowerSeries one = PowerSeries::one(max_n);
  t.net = counts_from_egf(X);
  t.seq0 = counts_from_egf(qi);
  t.seq1 = counts_from_egf(mul(X, qi));
  t.seq2 = counts_from_egf(mul(X, mul(X, qi)));

  auto qpow = [&](int k) { return pow(qi, k); };
  std::map<std::string, PowerSeries> weight_egf;
  bool rooted = is_rooted_class(cls);
  PowerSeries X2 = mul(X, X);
  if (rooted) {
    weight_egf.emplace("0a", PowerSeries::z(max_n));
    weight_egf.emplace("0b", scale(Rat(1, 2), X2));
    weight_egf.emplace("1a", mul(X2, qi));
    weight_egf.emplace("1b", scale(Rat(1, 2), mul(X, mul(mul(X, qi), mul(X, qi)))));
    if (class_level(cls) == 2) {
      weight_egf.emplace("2a", mul(X, qpow(5) - one));
      weight_egf.emplace("2b", scale(Rat(1, 2), mul(X, mul(qpow(2) - one, qpow(3)))));
      weight_egf.emplace("2c", mul(X2, qpow(6)));
      weight_egf.emplace("2d0", scale(Rat(1, 2), X2));
      weight_egf.emplace("2d+", scale(Rat(1, 4), mul(X2, qpow(6) - one)));
    }
  } else {
    weight_egf.emplace("leaf", PowerSeries::z(max_n));
    weight_egf.emplace("pair", scale(Rat(1, 2), X2));
    weight_egf.emplace("cycle", scale(Rat(1, 2), mul(X2, qi)));
    if (class_level(cls) == 2) {
      weight_egf.emplace("theta0", scale(Rat(1, 2), X2));
      weight_egf.emplace("theta+",
                         scale(Rat(1, 4), qpow(4) - qpow(2) - scale(Rat(2), X) - X2));
    }
  }
  for (auto& [tag, egf] : weight_egf) t.case_counts[tag] = counts_from_egf(egf);

  // totals must reproduce the class counts
  for (int n = 1; n <= max_n; ++n) {
    BigInt total = 0;
    for (const auto& [tag, w] : t.case_counts) total += w[n];
    if (total != t.net[n])
      throw AnalysisError("preprocess: case weights do not sum to the class count at n=" +
                          std::to_string(n));
  }
  tables_for(t);  // build and cross-check the variant tables now
  return t;
}

namespace {

Network sample_net(const WeightTable& t, const SamplerTables& tabs,
                   const std::vector<std::string>& labels, Rng& rng);

std::vector<Network> sample_seq(const WeightTable& t, const SamplerTables& tabs,
                                std::vector<std::string> labels, int min_len, Rng& rng) {
  std::vector<Network> out;
  int m = static_cast<int>(labels.size());
  int need = min_len;
  while (m > 0) {
    const std::vector<BigInt>& rest_arr = need >= 2 ? t.seq1 : t.seq0;
    std::vector<BigInt> w;
    std::vector<int> sizes;
    for (int j = 1; j <= m; ++j) {
      BigInt wt = binomial(m, j) * t.net[j] * rest_arr[m - j];
      if (wt != 0) {
        w.push_back(wt);
        sizes.push_back(j);
      }
    }
    if (w.empty()) throw AnalysisError("sample_seq: no feasible split");
    int j = sizes[rng.pick(w)];
    auto [mine, rest_labels] = choose_subset(labels, j, rng);
    out.push_back(sample_net(t, tabs, mine, rng));
    labels = std::move(rest_labels);
    m -= j;
    need = std::max(0, need - 1);
  }
  if (static_cast<int>(out.size()) < min_len)
    throw AnalysisError("sample_seq: sequence shorter than the required minimum");
  return out;
}

Network sample_net(const WeightTable& t, const SamplerTables& tabs,
                   const std::vector<std::string>& labels, Rng& rng) {
  int n = static_cast<int>(labels.size());
  if (n < 1) throw std::invalid_argument("sample_net: empty label set");
  bool rooted = is_rooted_class(t.cls);
  if (n == 1)
    return rooted ? build::leaf(labels[0]) : build::pointed_leaf(labels[0]);

  std::vector<BigInt> case_w;
  for (const CaseDef& cd : tabs.cases) case_w.push_back(t.case_counts.at(cd.tag).at(n));
  const CaseDef& cd = tabs.cases[rng.pick(case_w)];

  const auto& vweights = tabs.variant_weights.at(cd.tag);
  std::vector<BigInt> vw;
  for (const auto& w : vweights) vw.push_back(w[n]);
  size_t vidx = rng.pick(vw);
  const Variant& variant = cd.variants[vidx];
  const auto& suf = tabs.variant_suffix.at(cd.tag)[vidx];

  // split sizes slot by slot, then draw the contents
  std::vector<std::vector<Network>> slots(variant.slots.size());
  std::vector<std::string> rest = labels;
  int m = n;
  for (size_t i = 0; i < variant.slots.size(); ++i) {
    std::vector<BigInt> weights;
    std::vector<int> sizes;
    for (int j = 0; j <= m; ++j) {
      BigInt f = slot_count(t, variant.slots[i], j);
      if (f != 0 && suf[i + 1][m - j] != 0) {
        weights.push_back(binomial(m, j) * f * suf[i + 1][m - j]);
        sizes.push_back(j);
      }
    }
    int j = sizes[rng.pick(weights)];
    auto [mine, remaining] = choose_subset(rest, j, rng);
    rest = std::move(remaining);
    m -= j;
    switch (variant.slots[i]) {
      case Slot::Empty:
        break;
      case Slot::Net:
        slots[i].push_back(sample_net(t, tabs, mine, rng));
        break;
      case Slot::Seq0:
        slots[i] = sample_seq(t, tabs, mine, 0, rng);
        break;
      case Slot::Seq1:
        slots[i] = sample_seq(t, tabs, mine, 1, rng);
        break;
      case Slot::Seq2:
        slots[i] = sample_seq(t, tabs, mine, 2, rng);
        break;
    }
  }

  const std::string& tag = cd.tag;
  if (tag == "0b") return build::rooted_pair(slots[0][0], slots[1][0]);
  if (tag == "1a") return build::rooted_cycle_path(slots[0], slots[1][0]);
  if (tag == "1b") return build::rooted_cycle_two_paths(slots[0], slots[1], slots[2][0]);
  if (tag == "2a")
    return build::rooted_gen2a({slots[1], slots[2], slots[3], slots[4], slots[5]},
                               slots[0][0]);
  if (tag == "2b")
    return build::rooted_gen2b({slots[1], slots[2], slots[3], slots[4], slots[5]},
                               slots[0][0]);
  if (tag == "2c")
    return build::rooted_gen2c(
        {slots[2], slots[3], slots[4], slots[5], slots[6], slots[7]}, slots[0][0],
        slots[1][0]);
  if (tag == "2d0" || tag == "2d+")
    return build::rooted_gen2d(
        {slots[2], slots[3], slots[4], slots[5], slots[6], slots[7]}, slots[0][0],
        slots[1][0]);
  if (tag == "pair") return build::pointed_pair(slots[0][0], slots[1][0]);
  if (tag == "cycle") return build::pointed_cycle(slots[0]);
  if (tag == "theta0" || tag == "theta+")
    return build::pointed_theta(slots[0], slots[1], slots[2], slots[3]);
  throw AnalysisError("sample_net: unhandled case " + tag);
}

}  // namespace

Network sample(const WeightTable& table, int n, std::uint64_t seed) {
  if (n < 1 || n > table.max_n)
    throw std::invalid_argument("sample: n outside the preprocessed range");
  const SamplerTables& tabs = tables_for(table);
  Rng rng(seed);
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return sample_net(table, tabs, labels, rng);
}

Network sample(NetworkClass cls, int n, std::uint64_t seed) {
  static std::mutex mu;
  static std::map<NetworkClass, WeightTable> cache;
  std::unique_lock<std::mutex> lock(mu);
  auto it = cache.find(cls);
  if (it == cache.end() || it->second.max_n < n) {
    WeightTable t = preprocess(cls, std::max(n, 16));
    it = cache.insert_or_assign(cls, std::move(t)).first;
  }
  WeightTable copy = it->second;
  lock.unlock();
  return sample(copy, n, seed);
}

}  // namespace phynet
