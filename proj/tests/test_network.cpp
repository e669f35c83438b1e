#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "phynet/builders.hpp"
#include "phynet/network.hpp"

using namespace phynet;

namespace {

// The rooted level-2 network N of the running example: a triangle blob over
// one subtree and a 6-vertex level-2 blob with three pendant leaves.
Network example_N() {
  Network n;
  n.kind = Kind::Rooted;
  n.num_vertices = 17;
  // 0 root, 1 a, 2 b, 3 c, 4 d, 5 e, 6 f, 7 g, 8 h, 9 i, 10 j, 11..16 leaves
  n.edges = {{0, 1}, {1, 2}, {0, 2},  {2, 3},  {3, 13}, {3, 4},  {4, 11},
             {4, 12}, {1, 5}, {5, 6},  {6, 14}, {6, 7},  {7, 8},  {8, 15},
             {5, 9},  {9, 7}, {9, 10}, {10, 16}, {10, 8}};
  n.leaf_labels = {{11, "l1"}, {12, "l2"}, {13, "l3"}, {14, "l4"}, {15, "l5"}, {16, "l6"}};
  return n;
}

Network example_N_prime() {
  Network n = example_N();
  n.kind = Kind::Unrooted;
  n.edges.push_back({17, 0});
  n.num_vertices = 18;
  n.leaf_labels[17] = "#";
  return n;
}

Network rooted_triangle(const std::string& under, const std::string& pendant) {
  return build::rooted_cycle_path({build::leaf(pendant)}, build::leaf(under));
}

// strict check of the emitted DOT text
bool dot_parses(const std::string& text, bool rooted) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) return false;
  if (line != (rooted ? "digraph N {" : "graph N {")) return false;
  bool closed = false;
  while (std::getline(is, line)) {
    if (line == "}") {
      closed = true;
      break;
    }
    if (line.size() < 4 || line.substr(0, 3) != "  v") return false;
    if (line.back() != ';') return false;
    std::string body = line.substr(2, line.size() - 3);
    size_t arrow = body.find(rooted ? " -> " : " -- ");
    size_t attr = body.find(" [");
    if (arrow == std::string::npos && attr == std::string::npos) return false;
  }
  return closed;
}

}  // namespace

TEST_CASE("validate: base cases and the running example") {
  Network single = build::leaf("a");
  ValidationResult v = validate(single);
  CHECK(v.ok());
  CHECK(v.level == 0);

  ValidationResult vn = validate(example_N());
  CHECK(vn.ok());
  CHECK(vn.level == 2);

  ValidationResult vp = validate(example_N_prime());
  CHECK(vp.ok());
  CHECK(vp.level == 2);
}

TEST_CASE("validate rejects a blob with a single outgoing cut arc") {
  Network n;
  n.kind = Kind::Rooted;
  n.num_vertices = 5;
  n.edges = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 4}};
  n.leaf_labels = {{4, "x"}};
  ValidationResult v = validate(n);
  CHECK(!v.ok());
  bool found = false;
  for (const auto& msg : v.violations)
    if (msg.find("cut arc") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("parameters") {
  Network cherry = build::rooted_pair(build::leaf("1"), build::leaf("2"));
  NetParameters p0 = parameters(cherry);
  CHECK(p0.k == 0);
  CHECK(p0.m == 0);

  NetParameters p1 = parameters(rooted_triangle("1", "2"));
  CHECK(p1.k == 1);
  CHECK(p1.m == 3);

  NetParameters pn = parameters(example_N());
  CHECK(pn.k == 2);
  CHECK(pn.m == 10);  // triangle (3 arcs) plus the 6-vertex level-2 blob (7 arcs)

  Network invalid;
  invalid.kind = Kind::Rooted;
  invalid.num_vertices = 1;
  CHECK_THROWS_AS(parameters(invalid), std::invalid_argument);
}

TEST_CASE("unroot") {
  Network cherry = build::rooted_pair(build::leaf("1"), build::leaf("2"));
  Network star = unroot(cherry);
  CHECK(validate(star).ok());
  CHECK(star.num_vertices == cherry.num_vertices + 1);
  CHECK(star.leaf_labels.size() == 3);

  Network manual_star;
  manual_star.kind = Kind::Unrooted;
  manual_star.num_vertices = 4;
  manual_star.edges = {{0, 1}, {0, 2}, {0, 3}};
  manual_star.leaf_labels = {{1, "1"}, {2, "2"}, {3, "#"}};
  CHECK(isomorphic(star, manual_star));

  ValidationResult v = validate(unroot(example_N()));
  CHECK(v.ok());
  CHECK(v.level == 2);
  CHECK(isomorphic(unroot(example_N()), example_N_prime()));
}

TEST_CASE("the three rooted level-1 networks on two leaves unroot to two networks") {
  std::vector<Network> rooted = {
      build::rooted_pair(build::leaf("1"), build::leaf("2")),
      rooted_triangle("1", "2"),
      rooted_triangle("2", "1"),
  };
  std::set<std::string> forms;
  for (const Network& r : rooted) {
    CHECK(validate(r).ok());
    forms.insert(canonical_form(unroot(r)));
  }
  CHECK(forms.size() == 2);
}

TEST_CASE("root_at: star becomes cherry") {
  Network star;
  star.kind = Kind::Unrooted;
  star.num_vertices = 4;
  star.edges = {{0, 1}, {0, 2}, {0, 3}};
  star.leaf_labels = {{1, "1"}, {2, "2"}, {3, "#"}};
  Network r = root_at(star, "#");
  CHECK(validate(r).ok());
  CHECK(isomorphic(r, build::rooted_pair(build::leaf("1"), build::leaf("2"))));
}

TEST_CASE("root_at inverts unroot on level-1 cycles with matching sinks") {
  for (const Network& x : {rooted_triangle("1", "2"), rooted_triangle("2", "1"),
                           build::rooted_cycle_two_paths({build::leaf("1")},
                                                         {build::leaf("2")},
                                                         build::leaf("3"))}) {
    Network u = unroot(x);
    bool recovered = false;
    // try every sink choice of the nontrivial blob
    std::vector<int> cands;
    {
      Network probe = root_at(u, "#", [&](const std::vector<int>& c) {
        cands = c;
        return c.front();
      });
      if (isomorphic(probe, x)) recovered = true;
    }
    for (size_t i = 1; i < cands.size() && !recovered; ++i) {
      Network probe = root_at(u, "#", [&](const std::vector<int>& c) { return c[i]; });
      if (isomorphic(probe, x)) recovered = true;
    }
    CHECK(recovered);
  }
}

TEST_CASE("root_at always inverts on the unrooted side") {
  for (const Network& x : {example_N(), rooted_triangle("1", "2"),
                           build::rooted_pair(build::leaf("1"), build::leaf("2"))}) {
    Network u = unroot(x);
    Network y = root_at(u, "#");
    ValidationResult v = validate(y);
    CHECK(v.ok());
    CHECK(v.level <= validate(x).level);
    CHECK(isomorphic(unroot(y), u));
  }
}

TEST_CASE("distinct sink choices on a four-cycle give distinct rooted networks") {
  // cycle v0-v1-v2-v3 with pendants #, 1, 2, 3
  Network n;
  n.kind = Kind::Unrooted;
  n.num_vertices = 8;
  n.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
  n.leaf_labels = {{4, "#"}, {5, "1"}, {6, "2"}, {7, "3"}};
  REQUIRE(validate(n).ok());
  std::vector<int> cands;
  root_at(n, "#", [&](const std::vector<int>& c) {
    cands = c;
    return c.front();
  });
  REQUIRE(cands.size() == 3);
  std::set<std::string> forms;
  for (int t : cands) {
    Network r = root_at(n, "#", [&](const std::vector<int>&) { return t; });
    CHECK(validate(r).ok());
    forms.insert(canonical_form(r));
  }
  CHECK(forms.size() >= 2);
}

TEST_CASE("root_at input checking") {
  Network star;
  star.kind = Kind::Unrooted;
  star.num_vertices = 4;
  star.edges = {{0, 1}, {0, 2}, {0, 3}};
  star.leaf_labels = {{1, "1"}, {2, "2"}, {3, "#"}};
  CHECK_THROWS_AS(root_at(star, "zzz"), std::invalid_argument);
  CHECK_THROWS_AS(root_at(example_N_prime(), "#",
                          [](const std::vector<int>&) { return -5; }),
                  std::invalid_argument);
}

TEST_CASE("to_dot") {
  Network single = build::leaf("a");
  std::string d0 = to_dot(single);
  CHECK(d0.find("label=\"a\"") != std::string::npos);
  CHECK(dot_parses(d0, true));

  Network cherry = build::rooted_pair(build::leaf("1"), build::leaf("2"));
  std::string d1 = to_dot(cherry);
  CHECK(dot_parses(d1, true));
  size_t arcs = 0;
  for (size_t p = d1.find("->"); p != std::string::npos; p = d1.find("->", p + 1)) arcs++;
  CHECK(arcs == 2);

  std::string d2 = to_dot(example_N_prime());
  CHECK(dot_parses(d2, false));
  CHECK(to_dot(example_N_prime()) == d2);  // deterministic
}

TEST_CASE("blob level equals the least number of edge removals, brute force") {
  for (const Network& net :
       {unroot(example_N()), unroot(rooted_triangle("1", "2"))}) {
    BlobDecomposition dec = blob_decomposition(net);
    for (size_t b = 0; b < dec.blobs.size(); ++b) {
      if (dec.blobs[b].size() < 2 || dec.blob_edge_count[b] > 8) continue;
      std::vector<std::pair<int, int>> inner;
      for (auto [x, y] : net.edges)
        if (dec.blob_of[x] == static_cast<int>(b) && dec.blob_of[y] == static_cast<int>(b) &&
            std::find(dec.bridges.begin(), dec.bridges.end(), std::make_pair(x, y)) ==
                dec.bridges.end())
          inner.push_back({x, y});
      int E = static_cast<int>(inner.size());
      int V = static_cast<int>(dec.blobs[b].size());
      int rank = E - V + 1;
      CHECK(rank == dec.blob_level[b]);
      // every subset of fewer than `rank` removals leaves a cycle
      auto acyclic_after = [&](unsigned mask) {
        // union-find cycle test on the remaining edges
        std::map<int, int> parent;
        for (int v : dec.blobs[b]) parent[v] = v;
        std::function<int(int)> find = [&](int v) {
          return parent[v] == v ? v : parent[v] = find(parent[v]);
        };
        for (int e = 0; e < E; ++e) {
          if ((mask >> e) & 1) continue;
          int ra = find(inner[e].first), rb = find(inner[e].second);
          if (ra == rb) return false;
          parent[ra] = rb;
        }
        return true;
      };
      bool some_rank_subset_works = false;
      for (unsigned mask = 0; mask < (1u << E); ++mask) {
        int bits = __builtin_popcount(mask);
        if (bits < rank) CHECK(!acyclic_after(mask));
        if (bits == rank && acyclic_after(mask)) some_rank_subset_works = true;
      }
      CHECK(some_rank_subset_works);
    }
  }
}

TEST_CASE("canonical_form") {
  Network c1 = build::rooted_pair(build::leaf("1"), build::leaf("2"));
  Network c2 = build::rooted_pair(build::leaf("2"), build::leaf("1"));
  CHECK(canonical_form(c1) == canonical_form(c2));

  // the two distinct 3-leaf unrooted level-1 networks
  Network star;
  star.kind = Kind::Unrooted;
  star.num_vertices = 4;
  star.edges = {{0, 1}, {0, 2}, {0, 3}};
  star.leaf_labels = {{1, "1"}, {2, "2"}, {3, "#"}};
  Network tri = unroot(rooted_triangle("1", "2"));
  CHECK(canonical_form(star) != canonical_form(tri));

  // relabeling changes identity
  Network swapped = relabel(rooted_triangle("1", "2"), {{"1", "2"}, {"2", "1"}});
  CHECK(canonical_form(swapped) != canonical_form(rooted_triangle("1", "2")));

  // vertex renumbering does not
  Network perm = example_N();
  std::vector<int> map_to(perm.num_vertices);
  for (int i = 0; i < perm.num_vertices; ++i) map_to[i] = (i * 5 + 3) % perm.num_vertices;
  Network shuffled;
  shuffled.kind = perm.kind;
  shuffled.num_vertices = perm.num_vertices;
  for (auto [a, b] : perm.edges) shuffled.edges.push_back({map_to[a], map_to[b]});
  for (const auto& [v, lab] : perm.leaf_labels) shuffled.leaf_labels[map_to[v]] = lab;
  CHECK(isomorphic(perm, shuffled));
}

TEST_CASE("unroot adds one vertex, one leaf, preserves level") {
  for (const Network& x : {example_N(), rooted_triangle("1", "2")}) {
    Network u = unroot(x);
    CHECK(u.num_vertices == x.num_vertices + 1);
    CHECK(u.leaf_labels.size() == x.leaf_labels.size() + 1);
    CHECK(validate(u).level == validate(x).level);
  }
}

TEST_CASE("network json round trip") {
  Network n = example_N();
  Network back = network_from_json(network_json(n));
  CHECK(back.kind == n.kind);
  CHECK(back.num_vertices == n.num_vertices);
  CHECK(back.edges == n.edges);
  CHECK(back.leaf_labels == n.leaf_labels);
}
