#include "phynet/oracle.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "phynet/builders.hpp"

namespace phynet {

using json = nlohmann::json;

// ----------------------------------------------------------------- builders

namespace build {

namespace {

// Copy `sub` into `dest` and return the new id of `sub_vertex`.
int splice(Network& dest, const Network& sub, int sub_vertex) {
  int off = dest.num_vertices;
  dest.num_vertices += sub.num_vertices;
  for (auto [a, b] : sub.edges) dest.edges.push_back({a + off, b + off});
  for (const auto& [v, lab] : sub.leaf_labels) dest.leaf_labels[v + off] = lab;
  return sub_vertex + off;
}

// Attach a rooted subnetwork below `parent`.
void attach_rooted(Network& dest, int parent, const Network& sub) {
  int r = splice(dest, sub, find_root(sub));
  dest.edges.push_back({parent, r});
}

int pointed_hash_vertex(const Network& p) {
  for (const auto& [v, lab] : p.leaf_labels)
    if (lab == "#") return v;
  throw std::invalid_argument("pointed network without '#' leaf");
}

// Attach a pointed subnetwork at `at`: drop its '#' leaf, join `at` to the
// old '#' neighbor.
void glue_pointed(Network& dest, int at, const Network& sub) {
  int hash = pointed_hash_vertex(sub);
  int nb = -1;
  for (auto [a, b] : sub.edges) {
    if (a == hash) nb = b;
    if (b == hash) nb = a;
  }
  if (nb == -1) throw std::invalid_argument("glue_pointed: isolated '#'");
  // splice sub without the '#' vertex
  int off = dest.num_vertices;
  std::vector<int> newid(sub.num_vertices, -1);
  int nv = off;
  for (int v = 0; v < sub.num_vertices; ++v)
    if (v != hash) newid[v] = nv++;
  dest.num_vertices = nv;
  for (auto [a, b] : sub.edges) {
    if (a == hash || b == hash) continue;
    dest.edges.push_back({newid[a], newid[b]});
  }
  for (const auto& [v, lab] : sub.leaf_labels)
    if (v != hash) dest.leaf_labels[newid[v]] = lab;
  dest.edges.push_back({at, newid[nb]});
}

// Subdivide the rooted arc (u, w) of `dest` (not yet inserted) by `seq`,
// adding the resulting arcs; each new vertex gets one pendant subnetwork.
void arc_with_sequence(Network& dest, int u, int w, const std::vector<Network>& seq) {
  int prev = u;
  for (const Network& sub : seq) {
    int x = dest.num_vertices++;
    dest.edges.push_back({prev, x});
    attach_rooted(dest, x, sub);
    prev = x;
  }
  dest.edges.push_back({prev, w});
}

}  // namespace

Network leaf(const std::string& label) {
  Network n;
  n.kind = Kind::Rooted;
  n.num_vertices = 1;
  n.leaf_labels[0] = label;
  return n;
}

Network rooted_pair(const Network& a, const Network& b) {
  Network n;
  n.kind = Kind::Rooted;
  n.num_vertices = 1;  // root
  attach_rooted(n, 0, a);
  attach_rooted(n, 0, b);
  return n;
}

Network rooted_cycle_path(const std::vector<Network>& path_seq, const Network& under) {
  Network n;
  n.kind = Kind::Rooted;
  n.num_vertices = 2;  // 0 = root, 1 = reticulation
  n.edges.push_back({0, 1});
  arc_with_sequence(n, 0, 1, path_seq);
  attach_rooted(n, 1, under);
  return n;
}

Network rooted_cycle_two_paths(const std::vector<Network>& left,
                               const std::vector<Network>& right, const Network& under) {
  Network n;
  n.kind = Kind::Rooted;
  n.num_vertices = 2;  // 0 = root, 1 = reticulation
  arc_with_sequence(n, 0, 1, left);
  arc_with_sequence(n, 0, 1, right);
  attach_rooted(n, 1, under);
  return n;
}

// 2a skeleton: rho -> a, rho -> b, a -> b, a -> r, b -> r; pendant on r.
// seqs order: [rho->a, rho->b, a->b, a->r, b->r]
Network rooted_gen2a(const std::array<std::vector<Network>, 5>& seqs, const Network& under) {
  Network n;
  n.kind = Kind::Rooted;
  n.num_vertices = 4;  // 0 = rho, 1 = a, 2 = b, 3 = r
  arc_with_sequence(n, 0, 1, seqs[0]);
  arc_with_sequence(n, 0, 2, seqs[1]);
  arc_with_sequence(n, 1, 2, seqs[2]);
  arc_with_sequence(n, 1, 3, seqs[3]);
  arc_with_sequence(n, 2, 3, seqs[4]);
  attach_rooted(n, 3, under);
  return n;
}

// 2b skeleton: rho -> u, rho -> r, u => w twice (e, e'), w -> r; pendant on r.
// seqs order: [rho->u, rho->r, e, e', w->r]; at least one of e, e' nonempty.
Network rooted_gen2b(const std::array<std::vector<Network>, 5>& seqs, const Network& under) {
  Network n;
  n.kind = Kind::Rooted;
  n.num_vertices = 4;  // 0 = rho, 1 = u, 2 = w, 3 = r
  arc_with_sequence(n, 0, 1, seqs[0]);
  arc_with_sequence(n, 0, 3, seqs[1]);
  arc_with_sequence(n, 1, 2, seqs[2]);
  arc_with_sequence(n, 1, 2, seqs[3]);
  arc_with_sequence(n, 2, 3, seqs[4]);
  attach_rooted(n, 3, under);
  return n;
}

// 2c skeleton: rho -> a, rho -> r1, a -> b, a -> r2, b -> r1, b -> r2;
// pendants on r1 and r2.  seqs order matches that arc list.
Network rooted_gen2c(const std::array<std::vector<Network>, 6>& seqs, const Network& under1,
                     const Network& under2) {
  Network n;
  n.kind = Kind::Rooted;
  n.num_vertices = 5;  // 0 = rho, 1 = a, 2 = b, 3 = r1, 4 = r2
  arc_with_sequence(n, 0, 1, seqs[0]);
  arc_with_sequence(n, 0, 3, seqs[1]);
  arc_with_sequence(n, 1, 2, seqs[2]);
  arc_with_sequence(n, 1, 4, seqs[3]);
  arc_with_sequence(n, 2, 3, seqs[4]);
  arc_with_sequence(n, 2, 4, seqs[5]);
  attach_rooted(n, 3, under1);
  attach_rooted(n, 4, under2);
  return n;
}

// 2d skeleton: rho -> a, rho -> b, a -> r1, b -> r1, a -> r2, b -> r2;
// pendants on r1 and r2.  seqs order matches that arc list.
Network rooted_gen2d(const std::array<std::vector<Network>, 6>& seqs, const Network& under1,
                     const Network& under2) {
  Network n;
  n.kind = Kind::Rooted;
  n.num_vertices = 5;  // 0 = rho, 1 = a, 2 = b, 3 = r1, 4 = r2
  arc_with_sequence(n, 0, 1, seqs[0]);
  arc_with_sequence(n, 0, 2, seqs[1]);
  arc_with_sequence(n, 1, 3, seqs[2]);
  arc_with_sequence(n, 2, 3, seqs[3]);
  arc_with_sequence(n, 1, 4, seqs[4]);
  arc_with_sequence(n, 2, 4, seqs[5]);
  attach_rooted(n, 3, under1);
  attach_rooted(n, 4, under2);
  return n;
}

Network pointed_leaf(const std::string& label) {
  Network n;
  n.kind = Kind::Unrooted;
  n.num_vertices = 2;
  n.edges.push_back({0, 1});
  n.leaf_labels[0] = "#";
  n.leaf_labels[1] = label;
  return n;
}

Network pointed_pair(const Network& a, const Network& b) {
  Network n;
  n.kind = Kind::Unrooted;
  n.num_vertices = 2;  // 0 = '#', 1 = v
  n.edges.push_back({0, 1});
  n.leaf_labels[0] = "#";
  glue_pointed(n, 1, a);
  glue_pointed(n, 1, b);
  return n;
}

Network pointed_cycle(const std::vector<Network>& seq) {
  if (seq.size() < 2)
    throw std::invalid_argument("pointed_cycle: need at least two subnetworks");
  Network n;
  n.kind = Kind::Unrooted;
  n.num_vertices = 2;  // 0 = '#', 1 = v
  n.edges.push_back({0, 1});
  n.leaf_labels[0] = "#";
  int prev = 1;
  for (const Network& sub : seq) {
    int w = n.num_vertices++;
    n.edges.push_back({prev, w});
    glue_pointed(n, w, sub);
    prev = w;
  }
  n.edges.push_back({prev, 1});
  return n;
}

Network pointed_theta(const std::vector<Network>& p, const std::vector<Network>& q,
                      const std::vector<Network>& s, const std::vector<Network>& t) {
  if (s.empty() && t.empty())
    throw std::invalid_argument("pointed_theta: parallel edges need a subdivision");
  if (p.size() + q.size() + s.size() + t.size() < 2)
    throw std::invalid_argument("pointed_theta: need at least two pendants");
  Network n;
  n.kind = Kind::Unrooted;
  n.num_vertices = 4;  // 0 = '#', 1 = v, 2 = l, 3 = r
  n.edges.push_back({0, 1});
  n.leaf_labels[0] = "#";
  // unrooted construction reuses the rooted splicer; orientation is ignored
  int prev;
  auto run_edge = [&](int u, int w, const std::vector<Network>& seq) {
    prev = u;
    for (const Network& sub : seq) {
      int x = n.num_vertices++;
      n.edges.push_back({prev, x});
      glue_pointed(n, x, sub);
      prev = x;
    }
    n.edges.push_back({prev, w});
  };
  run_edge(1, 2, p);
  run_edge(1, 3, q);
  run_edge(2, 3, s);
  run_edge(2, 3, t);
  return n;
}

}  // namespace build

// ------------------------------------------------------------------ oracle

namespace {

std::vector<std::string> number_labels(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

// All ways to split `labels` into `parts` nonempty ordered blocks.
void ordered_partitions(const std::vector<std::string>& labels, int parts,
                        const std::function<void(const std::vector<std::vector<std::string>>&)>& fn) {
  int n = static_cast<int>(labels.size());
  if (parts <= 0) {
    if (n == 0) fn({});
    return;
  }
  std::vector<int> assign(n, 0);
  while (true) {
    std::vector<std::vector<std::string>> blocks(parts);
    for (int i = 0; i < n; ++i) blocks[assign[i]].push_back(labels[i]);
    bool all_nonempty = true;
    for (const auto& b : blocks)
      if (b.empty()) all_nonempty = false;
    if (all_nonempty) fn(blocks);
    int i = 0;
    while (i < n && assign[i] == parts - 1) assign[i++] = 0;
    if (i == n) break;
    assign[i]++;
  }
}

// Splits of `labels` into an arbitrary number of >= min_len nonempty ordered
// blocks (sequences of subnetworks).
void sequence_partitions(const std::vector<std::string>& labels, size_t min_len,
                         const std::function<void(const std::vector<std::vector<std::string>>&)>& fn) {
  size_t n = labels.size();
  if (n == 0) {
    if (min_len == 0) fn({});
    return;
  }
  for (size_t parts = std::max<size_t>(min_len, 1); parts <= n; ++parts)
    ordered_partitions(labels, static_cast<int>(parts), fn);
}

class Generator {
 public:
  Generator(NetworkClass cls, const OracleOptions& opts) : cls_(cls), opts_(opts) {}

  // memoized list over labels {"1", ..., "n"}
  const std::vector<Network>& nets(int n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    std::vector<Network> all;
    for (auto& [tag, list] : by_case(n))
      for (Network& net : list) all.push_back(std::move(net));
    return memo_.emplace(n, std::move(all)).first->second;
  }

  // networks over an arbitrary label set, relabeled from the memoized list
  std::vector<Network> nets_for(const std::vector<std::string>& labels) {
    // a slot holding the entire label set can never complete to a valid
    // configuration (every case has at least two disjoint components)
    if (static_cast<int>(labels.size()) >= n_ctx_) return {};
    const std::vector<Network>& base = nets(static_cast<int>(labels.size()));
    std::map<std::string, std::string> m;
    for (size_t i = 0; i < labels.size(); ++i) m[std::to_string(i + 1)] = labels[i];
    std::vector<Network> out;
    out.reserve(base.size());
    for (const Network& b : base) out.push_back(relabel(b, m));
    return out;
  }

  std::map<std::string, std::vector<Network>> by_case(int n);

 private:
  // all choices of per-slot pendant lists for a label multiset assigned to
  // sequence slots; calls fn with one subnetwork chosen per block
  void expand_blocks(const std::vector<std::vector<std::string>>& blocks, size_t idx,
                     std::vector<Network>& chosen,
                     const std::function<void(const std::vector<Network>&)>& fn) {
    if (idx == blocks.size()) {
      fn(chosen);
      return;
    }
    for (const Network& net : nets_for(blocks[idx])) {
      chosen.push_back(net);
      expand_blocks(blocks, idx + 1, chosen, fn);
      chosen.pop_back();
    }
  }
  void for_block_choices(const std::vector<std::vector<std::string>>& blocks,
                         const std::function<void(const std::vector<Network>&)>& fn) {
    std::vector<Network> chosen;
    expand_blocks(blocks, 0, chosen, fn);
  }

  NetworkClass cls_;
  OracleOptions opts_;
  int n_ctx_ = 1 << 30;  // size currently being generated, set by by_case
  std::map<int, std::vector<Network>> memo_;
};

// Dedup helper: insert into per-case buckets keyed by canonical form.
struct CaseBuckets {
  std::map<std::string, std::map<std::string, Network>> by_case;
  void add(const std::string& tag, Network net) {
    by_case[tag].emplace(canonical_form(net), std::move(net));
  }
  std::map<std::string, std::vector<Network>> finish() {
    std::map<std::string, std::vector<Network>> out;
    std::set<std::string> all_forms;
    for (auto& [tag, m] : by_case) {
      for (auto& [form, net] : m) {
        if (!all_forms.insert(form).second)
          throw AnalysisError("oracle: identical network produced by two cases");
        out[tag].push_back(std::move(net));
      }
    }
    return out;
  }
};

// (o, s) -> appendix case tag for the pointed level-2 generator, where o is
// the number of edges with exactly one pendant and s the number with >= 2.
std::string theta_case_tag(int o, int s) {
  static const std::map<std::pair<int, int>, std::string> tags = {
      {{0, 1}, "1"},  {{2, 0}, "2A"}, {{1, 1}, "2B"}, {{0, 2}, "2C"},
      {{3, 0}, "3A"}, {{2, 1}, "3B"}, {{1, 2}, "3C"}, {{0, 3}, "3D"},
      {{4, 0}, "4A"}, {{3, 1}, "4B"}, {{2, 2}, "4C"}, {{1, 3}, "4D"},
      {{0, 4}, "4E"}};
  auto it = tags.find({o, s});
  if (it == tags.end()) throw AnalysisError("theta_case_tag: impossible shape");
  return it->second;
}

std::map<std::string, std::vector<Network>> Generator::by_case(int n) {
  struct CtxGuard {
    int* slot;
    int saved;
    ~CtxGuard() { *slot = saved; }
  } guard{&n_ctx_, n_ctx_};
  n_ctx_ = n;
  CaseBuckets buckets;
  bool rooted = is_rooted_class(cls_);
  bool level2 = class_level(cls_) == 2;
  std::vector<std::string> labels = number_labels(n);

  if (n == 1) {
    buckets.add(rooted ? "0a" : "leaf",
                rooted ? build::leaf("1") : build::pointed_leaf("1"));
    return buckets.finish();
  }

  // binary/pair case
  ordered_partitions(labels, 2, [&](const std::vector<std::vector<std::string>>& blocks) {
    for (const Network& a : nets_for(blocks[0]))
      for (const Network& b : nets_for(blocks[1]))
        buckets.add(rooted ? "0b" : "pair",
                    rooted ? build::rooted_pair(a, b) : build::pointed_pair(a, b));
  });

  if (rooted) {
    // 1a: decorated path + network under the reticulation
    ordered_partitions(labels, 2, [&](const std::vector<std::vector<std::string>>& split) {
      sequence_partitions(split[0], 1, [&](const std::vector<std::vector<std::string>>& blocks) {
        for_block_choices(blocks, [&](const std::vector<Network>& seq) {
          for (const Network& under : nets_for(split[1]))
            buckets.add("1a", build::rooted_cycle_path(seq, under));
        });
      });
    });
    // 1b: two decorated paths + network under the reticulation
    ordered_partitions(labels, 3, [&](const std::vector<std::vector<std::string>>& split) {
      sequence_partitions(split[0], 1, [&](const std::vector<std::vector<std::string>>& lb) {
        for_block_choices(lb, [&](const std::vector<Network>& left) {
          sequence_partitions(split[1], 1, [&](const std::vector<std::vector<std::string>>& rb) {
            for_block_choices(rb, [&](const std::vector<Network>& right) {
              for (const Network& under : nets_for(split[2]))
                buckets.add("1b", build::rooted_cycle_two_paths(left, right, under));
            });
          });
        });
      });
    });
  } else {
    // cycle: unoriented sequence of at least two pointed networks
    sequence_partitions(labels, 2, [&](const std::vector<std::vector<std::string>>& blocks) {
      for_block_choices(blocks, [&](const std::vector<Network>& seq) {
        buckets.add("cycle", build::pointed_cycle(seq));
      });
    });
  }

  if (level2 && rooted) {
    // enumerate pendant split and per-arc sequences recursively
    auto enumerate_gen = [&](int arcs, int pendants, const std::string& tag,
                             const std::function<bool(const std::vector<std::vector<Network>>&)>& valid,
                             const std::function<Network(const std::vector<std::vector<Network>>&,
                                                         const std::vector<Network>&)>& make) {
      // split labels into pendants blocks + one remainder for arcs
      ordered_partitions(labels, pendants + 1, [&](const std::vector<std::vector<std::string>>& top) {
        // top[0..pendants-1] = pendant nets, top[pendants] = all arc labels.
        // NB: ordered_partitions requires nonempty blocks; arcs may be empty,
        // so also handle the all-to-pendants split below.
        std::vector<Network> pend;
        std::function<void(size_t)> rec_p = [&](size_t i) {
          if (i == static_cast<size_t>(pendants)) {
            // distribute top[pendants] over `arcs` sequences (possibly empty)
            std::vector<std::vector<Network>> seqs(arcs);
            std::function<void(const std::vector<std::string>&, size_t)> rec_a =
                [&](const std::vector<std::string>& rest, size_t arc) {
                  if (arc + 1 == static_cast<size_t>(arcs)) {
                    sequence_partitions(rest, 0, [&](const std::vector<std::vector<std::string>>& blocks) {
                      for_block_choices(blocks, [&](const std::vector<Network>& seq) {
                        seqs[arc] = seq;
                        if (valid(seqs)) buckets.add(tag, make(seqs, pend));
                        seqs[arc].clear();
                      });
                    });
                    return;
                  }
                  // choose a subset of rest for this arc
                  size_t m = rest.size();
                  for (unsigned mask = 0; mask < (1u << m); ++mask) {
                    std::vector<std::string> mine, other;
                    for (size_t b = 0; b < m; ++b)
                      ((mask >> b) & 1 ? mine : other).push_back(rest[b]);
                    sequence_partitions(mine, 0, [&](const std::vector<std::vector<std::string>>& blocks) {
                      for_block_choices(blocks, [&](const std::vector<Network>& seq) {
                        seqs[arc] = seq;
                        rec_a(other, arc + 1);
                        seqs[arc].clear();
                      });
                    });
                  }
                };
            rec_a(top[pendants], 0);
            return;
          }
          for (const Network& net : nets_for(top[i])) {
            pend.push_back(net);
            rec_p(i + 1);
            pend.pop_back();
          }
        };
        rec_p(0);
      });
      // all labels on pendants, no arc decorations
      if (pendants >= 1) {
        ordered_partitions(labels, pendants, [&](const std::vector<std::vector<std::string>>& top) {
          std::vector<Network> pend;
          std::function<void(size_t)> rec_p = [&](size_t i) {
            if (i == static_cast<size_t>(pendants)) {
              std::vector<std::vector<Network>> seqs(arcs);
              if (valid(seqs)) buckets.add(tag, make(seqs, pend));
              return;
            }
            for (const Network& net : nets_for(top[i])) {
              pend.push_back(net);
              rec_p(i + 1);
              pend.pop_back();
            }
          };
          rec_p(0);
        });
      }
    };

    auto nonempty_count = [](const std::vector<std::vector<Network>>& seqs) {
      int c = 0;
      for (const auto& s : seqs)
        if (!s.empty()) c++;
      return c;
    };

    enumerate_gen(5, 1, "2a",
                  [&](const std::vector<std::vector<Network>>& seqs) {
                    return nonempty_count(seqs) >= 1;
                  },
                  [](const std::vector<std::vector<Network>>& seqs,
                     const std::vector<Network>& pend) {
                    return build::rooted_gen2a({seqs[0], seqs[1], seqs[2], seqs[3], seqs[4]},
                                               pend[0]);
                  });
    enumerate_gen(5, 1, "2b",
                  [](const std::vector<std::vector<Network>>& seqs) {
                    return !seqs[2].empty() || !seqs[3].empty();
                  },
                  [](const std::vector<std::vector<Network>>& seqs,
                     const std::vector<Network>& pend) {
                    return build::rooted_gen2b({seqs[0], seqs[1], seqs[2], seqs[3], seqs[4]},
                                               pend[0]);
                  });
    enumerate_gen(6, 2, "2c",
                  [](const std::vector<std::vector<Network>>&) { return true; },
                  [](const std::vector<std::vector<Network>>& seqs,
                     const std::vector<Network>& pend) {
                    return build::rooted_gen2c(
                        {seqs[0], seqs[1], seqs[2], seqs[3], seqs[4], seqs[5]}, pend[0],
                        pend[1]);
                  });
    enumerate_gen(6, 2, "2d",
                  [](const std::vector<std::vector<Network>>&) { return true; },
                  [](const std::vector<std::vector<Network>>& seqs,
                     const std::vector<Network>& pend) {
                    return build::rooted_gen2d(
                        {seqs[0], seqs[1], seqs[2], seqs[3], seqs[4], seqs[5]}, pend[0],
                        pend[1]);
                  });
  }

  if (level2 && !rooted) {
    // theta blob: 4 edge slots (p, q, s, t); s/t are the parallel edges
    std::vector<std::vector<Network>> seqs(4);
    std::function<void(const std::vector<std::string>&, size_t)> rec =
        [&](const std::vector<std::string>& rest, size_t slot) {
          if (slot == 3) {
            sequence_partitions(rest, 0, [&](const std::vector<std::vector<std::string>>& blocks) {
              for_block_choices(blocks, [&](const std::vector<Network>& seq) {
                seqs[3] = seq;
                size_t total = seqs[0].size() + seqs[1].size() + seqs[2].size() + seqs[3].size();
                if ((seqs[2].size() + seqs[3].size() >= 1) && total >= 2) {
                  int o = 0, s = 0;
                  for (const auto& sq : seqs) {
                    if (sq.size() == 1) o++;
                    if (sq.size() >= 2) s++;
                  }
                  buckets.add(theta_case_tag(o, s),
                              build::pointed_theta(seqs[0], seqs[1], seqs[2], seqs[3]));
                }
                seqs[3].clear();
              });
            });
            return;
          }
          size_t m = rest.size();
          for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<std::string> mine, other;
            for (size_t b = 0; b < m; ++b)
              ((mask >> b) & 1 ? mine : other).push_back(rest[b]);
            sequence_partitions(mine, 0, [&](const std::vector<std::vector<std::string>>& blocks) {
              for_block_choices(blocks, [&](const std::vector<Network>& seq) {
                seqs[slot] = seq;
                rec(other, slot + 1);
                seqs[slot].clear();
              });
            });
          }
        };
    rec(labels, 0);
  }

  return buckets.finish();
}

int class_cap(NetworkClass cls, const OracleOptions& opts) {
  switch (cls) {
    case NetworkClass::UnrootedLevel1:
    case NetworkClass::RootedLevel1:
      return opts.cap_level1;
    case NetworkClass::UnrootedLevel2:
      return opts.cap_unrooted2;
    case NetworkClass::RootedLevel2:
      return opts.allow_big ? opts.cap_rooted2 + 1 : opts.cap_rooted2;
  }
  return 1;
}

}  // namespace

std::vector<GenerationRule> generation_rules(NetworkClass cls) {
  std::vector<GenerationRule> out;
  auto add = [&](const std::string& tag, int arity) { out.push_back({cls, tag, arity}); };
  if (is_rooted_class(cls)) {
    add("0a", 0);
    add("0b", 2);
    add("1a", 2);
    add("1b", 3);
    if (class_level(cls) == 2) {
      add("2a", 6);
      add("2b", 6);
      add("2c", 8);
      add("2d", 8);
    }
  } else {
    add("leaf", 0);
    add("pair", 2);
    add("cycle", 1);
    if (class_level(cls) == 2)
      for (const char* t : {"1", "2A", "2B", "2C", "3A", "3B", "3C", "3D", "4A", "4B",
                            "4C", "4D", "4E"})
        add(t, 4);
  }
  return out;
}

std::map<std::string, std::vector<Network>> generate_by_case(NetworkClass cls, int n,
                                                             const OracleOptions& opts) {
  if (n < 1) throw std::invalid_argument("generate_by_case: n must be >= 1");
  if (n > class_cap(cls, opts))
    throw ResourceError("generate_by_case: n exceeds the feasibility cap for " +
                        std::string(class_name(cls)));
  Generator gen(cls, opts);
  return gen.by_case(n);
}

std::vector<Network> generate_all(NetworkClass cls, int n, const OracleOptions& opts) {
  std::vector<Network> out;
  for (auto& [tag, list] : generate_by_case(cls, n, opts))
    for (Network& net : list) out.push_back(std::move(net));
  return out;
}

VerifyReport verify_counts(NetworkClass cls, int n_max, const OracleOptions& opts) {
  VerifyReport report{cls, {}, true};
  for (int n = 1; n <= n_max; ++n) {
    VerifyEntry entry;
    entry.n = n;
    entry.expected = count(cls, n);
    auto by_case = generate_by_case(cls, n, opts);
    BigInt total = 0;
    std::map<std::pair<int, int>, BigInt> hist;
    for (const auto& [tag, list] : by_case) {
      entry.per_case[tag] = static_cast<long>(list.size());
      total += static_cast<long>(list.size());
      for (const Network& net : list) {
        ValidationResult v = validate(net);
        if (!v.ok())
          entry.mismatches.push_back("invalid network generated: " + v.violations.front());
        else if (v.level > class_level(cls))
          entry.mismatches.push_back("generated network exceeds level bound");
        NetParameters p = parameters(net);
        hist[{p.k, p.m}] += 1;
      }
    }
    entry.generated = total;
    entry.count_ok = total == entry.expected;
    if (!entry.count_ok)
      entry.mismatches.push_back("count mismatch: generated " + entry.generated.str() +
                                 ", expected " + entry.expected.str());
    RefinedCountTable table = refined_counts(cls, n);
    entry.refined_ok = hist.size() == table.entries.size();
    if (entry.refined_ok)
      for (const auto& [km, c] : table.entries) {
        auto it = hist.find(km);
        if (it == hist.end() || it->second != c) {
          entry.refined_ok = false;
          break;
        }
      }
    if (!entry.refined_ok) entry.mismatches.push_back("refined (k,m) histogram mismatch");
    report.ok = report.ok && entry.count_ok && entry.refined_ok && entry.mismatches.empty();
    report.entries.push_back(std::move(entry));
  }
  return report;
}

std::string to_json(const VerifyReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json cases = json::object();
    for (const auto& [tag, c] : e.per_case) cases[tag] = c.str();
    entries.push_back({{"n", e.n},
                       {"generated", e.generated.str()},
                       {"expected", e.expected.str()},
                       {"count_ok", e.count_ok},
                       {"refined_ok", e.refined_ok},
                       {"cases", cases},
                       {"mismatches", e.mismatches}});
  }
  return json{{"schema", "phynet.verify/1"},
              {"class", class_name(report.cls)},
              {"ok", report.ok},
              {"entries", entries}}
      .dump(2);
}

}  // namespace phynet
