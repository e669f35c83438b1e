#include "phynet/classes.hpp"

#include <functional>
#include <mutex>
#include <sstream>

#include "json.hpp"

namespace phynet {

using json = nlohmann::json;

int leaf_offset(NetworkClass cls) {
  switch (cls) {
    case NetworkClass::UnrootedLevel1:
    case NetworkClass::UnrootedLevel2:
      return 1;
    default:
      return 0;
  }
}

int class_level(NetworkClass cls) {
  return (cls == NetworkClass::UnrootedLevel1 || cls == NetworkClass::RootedLevel1) ? 1 : 2;
}

bool is_rooted_class(NetworkClass cls) {
  return cls == NetworkClass::RootedLevel1 || cls == NetworkClass::RootedLevel2;
}

std::string_view class_name(NetworkClass cls) {
  switch (cls) {
    case NetworkClass::UnrootedLevel1: return "unrooted1";
    case NetworkClass::RootedLevel1: return "rooted1";
    case NetworkClass::UnrootedLevel2: return "unrooted2";
    case NetworkClass::RootedLevel2: return "rooted2";
  }
  return "?";
}

std::optional<NetworkClass> class_from_name(std::string_view name) {
  for (NetworkClass cls : kAllClasses)
    if (class_name(cls) == name) return cls;
  return std::nullopt;
}

// ------------------------------------------------------------- term tables
//
// The class equation is C = z + S(C,x,y); terms below give S/C.  x marks
// blobs of level >= 1, y marks edges inside them.

const std::vector<RefinedTerm>& refined_terms(NetworkClass cls) {
  static const std::vector<RefinedTerm> G = {
      {Rat(1, 2), 0, 0, 1, 0},  // unordered pair
      {Rat(1, 2), 1, 3, 1, 1},  // cycle carrying an unoriented sequence
  };
  static const std::vector<RefinedTerm> R = {
      {Rat(1, 2), 0, 0, 1, 0},  // 0b
      {Rat(1), 1, 3, 1, 1},     // 1a
      {Rat(1, 2), 1, 4, 2, 2},  // 1b
  };
  static const std::vector<RefinedTerm> U = {
      {Rat(1, 2), 0, 0, 1, 0},   // pair
      {Rat(1, 2), 1, 3, 1, 1},   // cycle
      {Rat(1, 2), 1, 6, 1, 1},   // generator case 1
      {Rat(3, 2), 1, 6, 1, 0},   // 2A
      {Rat(5, 2), 1, 7, 2, 1},   // 2B
      {Rat(5, 4), 1, 8, 3, 2},   // 2C
      {Rat(1), 1, 7, 2, 0},      // 3A
      {Rat(3), 1, 8, 3, 1},      // 3B
      {Rat(3), 1, 9, 4, 2},      // 3C
      {Rat(1), 1, 10, 5, 3},     // 3D
      {Rat(1, 4), 1, 8, 3, 0},   // 4A
      {Rat(1), 1, 9, 4, 1},      // 4B
      {Rat(3, 2), 1, 10, 5, 2},  // 4C
      {Rat(1), 1, 11, 6, 3},     // 4D
      {Rat(1, 4), 1, 12, 7, 4},  // 4E
  };
  static const std::vector<RefinedTerm> L = {
      {Rat(1, 2), 0, 0, 1, 0},    // 0b
      {Rat(1, 2), 1, 6, 1, 0},    // 2d, all arcs bare
      {Rat(1), 1, 3, 1, 1},       // 1a
      {Rat(6), 1, 6, 1, 1},
      {Rat(3, 2), 1, 7, 2, 1},
      {Rat(1, 2), 1, 4, 2, 2},    // 1b
      {Rat(27, 2), 1, 7, 2, 2},
      {Rat(15, 4), 1, 8, 3, 2},
      {Rat(29, 2), 1, 8, 3, 3},
      {Rat(5), 1, 9, 4, 3},
      {Rat(15, 2), 1, 9, 4, 4},
      {Rat(15, 4), 1, 10, 5, 4},
      {Rat(3, 2), 1, 10, 5, 5},
      {Rat(3, 2), 1, 11, 6, 5},
      {Rat(1), 1, 6, 1, 6},       // 2c
      {Rat(1, 4), 1, 12, 7, 6},
  };
  switch (cls) {
    case NetworkClass::UnrootedLevel1: return G;
    case NetworkClass::RootedLevel1: return R;
    case NetworkClass::UnrootedLevel2: return U;
    case NetworkClass::RootedLevel2: return L;
  }
  return G;
}

int refined_denom_power(NetworkClass cls) {
  switch (cls) {
    case NetworkClass::UnrootedLevel1: return 1;
    case NetworkClass::RootedLevel1: return 2;
    case NetworkClass::UnrootedLevel2: return 4;
    case NetworkClass::RootedLevel2: return 6;
  }
  return 1;
}

// ----------------------------------------------------------- univariate phi

static RationalFunction build_phi(NetworkClass cls) {
  // phi(C) = (1-C)^D / ((1-C)^D - N(C)),  N = sum coef C^cpow (1-C)^(D-denpow)
  int D = refined_denom_power(cls);
  Poly one_minus = {Rat(1), Rat(-1)};
  Poly P = poly::power(one_minus, D);
  Poly N = {};
  for (const RefinedTerm& t : refined_terms(cls)) {
    Poly mono(t.cpow + 1, Rat(0));
    mono[t.cpow] = t.coef;
    N = poly::add(N, poly::mul(mono, poly::power(one_minus, D - t.denpow)));
  }
  Poly Q = poly::add(P, poly::scale(Rat(-1), N));
  // clear denominators to integer coefficients
  BigInt lcm = 1;
  for (const Rat& c : Q) lcm = boost::multiprecision::lcm(lcm, denominator(c));
  for (const Rat& c : P) lcm = boost::multiprecision::lcm(lcm, denominator(c));
  Rat s(lcm);
  RationalFunction f{poly::scale(s, P), poly::scale(s, Q)};
  while (!f.num.empty() && f.num.back() == 0) f.num.pop_back();
  while (!f.den.empty() && f.den.back() == 0) f.den.pop_back();
  return f;
}

const RationalFunction& phi(NetworkClass cls) {
  static const RationalFunction tabs[4] = {
      build_phi(NetworkClass::UnrootedLevel1), build_phi(NetworkClass::RootedLevel1),
      build_phi(NetworkClass::UnrootedLevel2), build_phi(NetworkClass::RootedLevel2)};
  return tabs[static_cast<int>(cls)];
}

// --------------------------------------------------------------- EGF cache

namespace {
std::mutex g_egf_mutex;
std::map<NetworkClass, PowerSeries> g_egf_cache;
}  // namespace

PowerSeries class_egf(NetworkClass cls, int order) {
  std::lock_guard<std::mutex> lock(g_egf_mutex);
  auto it = g_egf_cache.find(cls);
  if (it == g_egf_cache.end() || it->second.order() < order) {
    PowerSeries s = algebraic_series(phi(cls), order);
    if (it == g_egf_cache.end())
      it = g_egf_cache.emplace(cls, s).first;
    else
      it->second = s;
  }
  return it->second.truncated(order);
}

BigInt count(NetworkClass cls, int n) {
  if (n < 1) throw std::invalid_argument("count: series index must be >= 1");
  PowerSeries s = class_egf(cls, n);
  return rat_to_int(s[n] * Rat(factorial(n)));
}

BigInt count_by_leaves(NetworkClass cls, int leaves) {
  if (leaves < 1) throw std::invalid_argument("count_by_leaves: leaves must be >= 1");
  int n = leaves - leaf_offset(cls);
  if (n < 1) return 0;
  return count(cls, n);
}

// ----------------------------------------------------------- closed counts

static BigInt closed_count_g(int n) {
  Rat tot(factorial(2 * n - 2), BigInt(factorial(n - 1)) << (n - 1));
  for (int i = 1; i <= n - 1; ++i)
    for (int k = 1; k <= i; ++k) {
      Rat term(factorial(n + i - 1) * factorial(n + k - i - 2),
               factorial(k) * factorial(k - 1) * factorial(i - k) * factorial(n - i - 1));
      tot += term * rat_pow(Rat(1, 2), i);
    }
  return rat_to_int(tot);
}

static BigInt closed_count_r(int n) {
  Rat tot(factorial(2 * n - 2), BigInt(factorial(n - 1)) << (n - 1));
  for (int i = 1; i <= n - 1; ++i)
    for (int k = 1; k <= i; ++k)
      for (int p = 0; p <= k; ++p) {
        int a = n - 1 - i - k + p;
        if (a < 0) continue;  // factorial of a negative integer: summand is 0
        Rat term(factorial(n + i - 1) * factorial(n + k - i - 2),
                 factorial(i - k) * factorial(k - p) * factorial(p) * factorial(a) *
                     factorial(2 * k - p - 1));
        tot += term * rat_pow(Rat(2), p - i);
      }
  return rat_to_int(tot);
}

// Shared shape of the level-2 formulas: nested binomial chain against the
// expansion of (1 - z)^{-w*i}, with per-index rational bases.  Chains are cut
// as soon as the running index sum exceeds n-1.
static BigInt closed_count_level2(int n, int w, const std::vector<Rat>& bases) {
  int depth = static_cast<int>(bases.size());
  Rat tot(0);
  int top = 0;  // current value of the leading index i
  std::function<void(int, int, int, const Rat&)> rec = [&](int level, int upper, int sum,
                                                           const Rat& acc) {
    Rat powed(1);
    for (int v = 0; v <= upper && sum + v <= n - 1; ++v) {
      if (v > 0) powed *= bases[level];
      Rat term = acc * powed;
      term *= Rat(level == 0 ? binomial(n + v - 1, v) : binomial(upper, v));
      if (term == 0) continue;
      if (level == 0) top = v;
      if (level + 1 < depth) {
        rec(level + 1, v, sum + v, term);
      } else {
        int j = n - 1 - sum - v;
        term *= Rat(binomial(w * top + j - 1, j));
        tot += term;
      }
    }
  };
  rec(0, n - 1, 0, Rat(1));
  return rat_to_int(tot * Rat(factorial(n - 1)));
}

BigInt closed_count(NetworkClass cls, int n) {
  if (n < 1) throw std::invalid_argument("closed_count: series index must be >= 1");
  switch (cls) {
    case NetworkClass::UnrootedLevel1:
      return closed_count_g(n);
    case NetworkClass::RootedLevel1:
      return closed_count_r(n);
    case NetworkClass::UnrootedLevel2:
      return closed_count_level2(
          n, 4, {Rat(3), Rat(-15, 6), Rat(-16, 15), Rat(-1, 2), Rat(-3, 16)});
    case NetworkClass::RootedLevel2:
      return closed_count_level2(n, 6,
                                 {Rat(9), Rat(-17, 6), Rat(-53, 34), Rat(-148, 159),
                                  Rat(-81, 148), Rat(-8, 27), Rat(-1, 8)});
  }
  throw std::invalid_argument("closed_count: bad class");
}

BigInt refined_closed_rooted1(int n, int k, int m) {
  if (n < 1 || k < 1 || m < 1)
    throw std::invalid_argument("refined_closed_rooted1: n, k, m must be >= 1");
  Rat tot(0);
  for (int p = 0; p <= k; ++p) {
    long long f1 = 2LL * n + 3 * k - m - 2;
    long long f2 = m - 2 * k - 1;
    long long f3 = n + 2 * k - m - 1;
    long long f4 = m - 4 * k + p;
    long long f5 = 2LL * k - p - 1;
    if (f1 < 0 || f2 < 0 || f3 < 0 || f4 < 0 || f5 < 0) continue;
    Rat term(factorial(f1) * factorial(f2),
             factorial(f3) * factorial(p) * factorial(k - p) * factorial(f4) * factorial(f5));
    tot += term * rat_pow(Rat(2), p + m + 1 - n - 3 * k);
  }
  return rat_to_int(tot);
}

// ----------------------------------------------------------- refined series

namespace {
std::mutex g_ref_mutex;
std::map<NetworkClass, RefinedSeries> g_ref_cache;

// One pass of C <- z + S(C,x,y) at the series order of `C`.
RefinedSeries refined_rhs(NetworkClass cls, const RefinedSeries& C) {
  int N = C.order();
  const auto& terms = refined_terms(cls);
  int max_c = 0, max_d = 0;
  for (const auto& t : terms) {
    max_c = std::max(max_c, t.cpow + 1);
    max_d = std::max(max_d, t.denpow);
  }
  RefinedSeries yC = C.shifted(0, 1);
  RefinedSeries qi = quasi_inverse(yC);
  std::vector<RefinedSeries> cp, qp;
  cp.reserve(max_c + 1);
  qp.reserve(max_d + 1);
  cp.push_back(RefinedSeries::one(N));
  for (int j = 1; j <= max_c; ++j) cp.push_back(mul(cp.back(), C));
  qp.push_back(RefinedSeries::one(N));
  for (int j = 1; j <= max_d; ++j) qp.push_back(mul(qp.back(), qi));
  RefinedSeries out = RefinedSeries::z(N);
  for (const auto& t : terms) {
    RefinedSeries part = mul(cp[t.cpow + 1], qp[t.denpow]);
    out = out + scale(t.coef, part).shifted(t.xpow, t.ypow);
  }
  return out;
}
}  // namespace

RefinedSeries refined_series(NetworkClass cls, int order) {
  std::lock_guard<std::mutex> lock(g_ref_mutex);
  auto it = g_ref_cache.find(cls);
  if (it == g_ref_cache.end() || it->second.order() < order) {
    // Growing truncation: pass k fixes the coefficient of z^k, so working at
    // order k on pass k produces the same series as full-order passes.
    RefinedSeries C(0);
    for (int k = 1; k <= order; ++k) {
      RefinedSeries cur(k);
      for (int n = 0; n <= C.order(); ++n) cur.at(n) = C[n];
      C = refined_rhs(cls, cur);
    }
    if (order == 0) C = RefinedSeries(0);
    if (it == g_ref_cache.end())
      it = g_ref_cache.emplace(cls, C).first;
    else
      it->second = C;
  }
  return it->second.truncated(order);
}

RefinedCountTable refined_counts(NetworkClass cls, int n) {
  if (n < 1) throw std::invalid_argument("refined_counts: series index must be >= 1");
  RefinedSeries s = refined_series(cls, n);
  RefinedCountTable table{cls, n, {}};
  BigInt fac = factorial(n);
  for (const auto& [key, v] : s[n].terms()) {
    BigInt c = rat_to_int(v * Rat(fac));
    if (c < 0) throw AnalysisError("refined_counts: negative entry");
    if (c != 0) table.entries[key] = c;
  }
  return table;
}

BigInt RefinedCountTable::total() const {
  BigInt t = 0;
  for (const auto& [key, v] : entries) t += v;
  return t;
}

// ------------------------------------------------------------ closed R(z)

Real eval_closed_R(const Real& z) {
  if (z < 0 || z >= Real(1) / 8)
    throw std::domain_error("eval_closed_R: z outside [0, 1/8)");
  Real s = sqrt(Real(1) - 8 * z);
  Real inner = -4 * (s - 2) * z + 9 * s - 1;
  Real quarter_root = pow(Real(1) - 8 * z, Real(1) / 4);
  return -sqrt(Real(2)) * sqrt(inner) / (4 * quarter_root) - s / 4 + Real(5) / 4;
}

// ----------------------------------------------------------------- export

std::vector<CountRecord> table_records(int leaves_max) {
  std::vector<CountRecord> out;
  for (NetworkClass cls : kAllClasses)
    for (int leaves = 1; leaves <= leaves_max; ++leaves)
      out.push_back({cls, leaves - leaf_offset(cls), count_by_leaves(cls, leaves)});
  return out;
}

std::string counts_csv(const std::vector<CountRecord>& records) {
  std::ostringstream os;
  os << "class,n,leaves,count\n";
  for (const auto& r : records)
    os << class_name(r.cls) << ',' << r.n_index << ','
       << r.n_index + leaf_offset(r.cls) << ',' << r.count.str() << '\n';
  return os.str();
}

std::vector<CountRecord> parse_counts_csv(const std::string& text) {
  std::vector<CountRecord> out;
  std::istringstream is(text);
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ls(line);
    std::string cls_s, n_s, leaves_s, count_s;
    std::getline(ls, cls_s, ',');
    std::getline(ls, n_s, ',');
    std::getline(ls, leaves_s, ',');
    std::getline(ls, count_s, ',');
    auto cls = class_from_name(cls_s);
    if (!cls) throw std::invalid_argument("parse_counts_csv: unknown class " + cls_s);
    out.push_back({*cls, std::stoi(n_s), BigInt(count_s)});
  }
  return out;
}

std::string counts_json(const std::vector<CountRecord>& records) {
  json arr = json::array();
  for (const auto& r : records)
    arr.push_back({{"class", class_name(r.cls)},
                   {"n", r.n_index},
                   {"leaves", r.n_index + leaf_offset(r.cls)},
                   {"count", r.count.str()}});
  return json{{"schema", "phynet.counts/1"}, {"records", arr}}.dump(2);
}

std::string refined_csv(const RefinedCountTable& table) {
  std::ostringstream os;
  os << "class,n,k,m,count\n";
  for (const auto& [key, v] : table.entries)
    os << class_name(table.cls) << ',' << table.n_index << ',' << key.first << ','
       << key.second << ',' << v.str() << '\n';
  return os.str();
}

std::string refined_json(const RefinedCountTable& table) {
  json arr = json::array();
  for (const auto& [key, v] : table.entries)
    arr.push_back({{"k", key.first}, {"m", key.second}, {"count", v.str()}});
  return json{{"schema", "phynet.refined/1"},
              {"class", class_name(table.cls)},
              {"n", table.n_index},
              {"entries", arr}}
      .dump(2);
}

}  // namespace phynet
