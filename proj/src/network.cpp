#include "phynet/network.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"

namespace phynet {

using json = nlohmann::json;

std::vector<int> in_degrees(const Network& net) {
  std::vector<int> d(net.num_vertices, 0);
  for (auto [a, b] : net.edges) d[b]++;
  return d;
}

std::vector<int> out_degrees(const Network& net) {
  std::vector<int> d(net.num_vertices, 0);
  for (auto [a, b] : net.edges) d[a]++;
  return d;
}

std::vector<int> degrees(const Network& net) {
  std::vector<int> d(net.num_vertices, 0);
  for (auto [a, b] : net.edges) {
    d[a]++;
    d[b]++;
  }
  return d;
}

int find_root(const Network& net) {
  if (net.kind != Kind::Rooted)
    throw std::invalid_argument("find_root: network is not rooted");
  if (net.num_vertices == 1) return 0;
  std::vector<int> in = in_degrees(net);
  for (int v = 0; v < net.num_vertices; ++v)
    if (in[v] == 0) return v;
  throw std::invalid_argument("find_root: no in-degree-0 vertex");
}

namespace {

// adjacency as (neighbor, edge index) ignoring orientation
std::vector<std::vector<std::pair<int, int>>> undirected_adj(const Network& net) {
  std::vector<std::vector<std::pair<int, int>>> adj(net.num_vertices);
  for (int e = 0; e < static_cast<int>(net.edges.size()); ++e) {
    auto [a, b] = net.edges[e];
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  return adj;
}

bool is_connected(const Network& net) {
  if (net.num_vertices == 0) return false;
  auto adj = undirected_adj(net);
  std::vector<char> seen(net.num_vertices, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto [w, e] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        cnt++;
        q.push(w);
      }
  }
  return cnt == net.num_vertices;
}

// Tarjan bridge finding on the underlying undirected multigraph.
std::vector<char> bridge_flags(const Network& net) {
  int n = net.num_vertices;
  auto adj = undirected_adj(net);
  std::vector<char> is_bridge(net.edges.size(), 0);
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  // iterative DFS
  struct Frame {
    int v, parent_edge;
    size_t i;
  };
  for (int start = 0; start < n; ++start) {
    if (disc[start] != -1) continue;
    std::vector<Frame> stack;
    stack.push_back({start, -1, 0});
    disc[start] = low[start] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.i < adj[f.v].size()) {
        auto [w, e] = adj[f.v][f.i++];
        if (e == f.parent_edge) continue;
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, e, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        int v = f.v, pe = f.parent_edge;
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back().v;
          low[p] = std::min(low[p], low[v]);
          if (low[v] > disc[p]) is_bridge[pe] = 1;
        }
      }
    }
  }
  return is_bridge;
}

bool is_acyclic(const Network& net) {
  std::vector<int> in = in_degrees(net);
  std::vector<std::vector<int>> out(net.num_vertices);
  for (auto [a, b] : net.edges) out[a].push_back(b);
  std::queue<int> q;
  for (int v = 0; v < net.num_vertices; ++v)
    if (in[v] == 0) q.push(v);
  int cnt = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    cnt++;
    for (int w : out[v])
      if (--in[w] == 0) q.push(w);
  }
  return cnt == net.num_vertices;
}

}  // namespace

BlobDecomposition blob_decomposition(const Network& net) {
  std::vector<char> is_bridge = bridge_flags(net);
  int n = net.num_vertices;
  std::vector<std::vector<int>> adj(n);
  for (int e = 0; e < static_cast<int>(net.edges.size()); ++e) {
    if (is_bridge[e]) continue;
    auto [a, b] = net.edges[e];
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  BlobDecomposition dec;
  dec.blob_of.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (dec.blob_of[v] != -1) continue;
    int id = static_cast<int>(dec.blobs.size());
    std::vector<int> comp;
    std::queue<int> q;
    q.push(v);
    dec.blob_of[v] = id;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      comp.push_back(u);
      for (int w : adj[u])
        if (dec.blob_of[w] == -1) {
          dec.blob_of[w] = id;
          q.push(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    dec.blobs.push_back(std::move(comp));
  }
  dec.blob_edge_count.assign(dec.blobs.size(), 0);
  for (int e = 0; e < static_cast<int>(net.edges.size()); ++e) {
    if (is_bridge[e]) {
      dec.bridges.push_back(net.edges[e]);
    } else {
      dec.blob_edge_count[dec.blob_of[net.edges[e].first]]++;
    }
  }
  dec.blob_level.assign(dec.blobs.size(), 0);
  if (net.kind == Kind::Rooted) {
    std::vector<int> in = in_degrees(net);
    for (size_t b = 0; b < dec.blobs.size(); ++b) {
      int retic = 0;
      for (int v : dec.blobs[b]) {
        // count only reticulations whose both parents lie in the blob
        int inner_in = 0;
        for (auto [x, y] : net.edges)
          if (y == v && dec.blob_of[x] == static_cast<int>(b)) inner_in++;
        if (in[v] == 2 && inner_in == 2) retic++;
      }
      dec.blob_level[b] = retic;
    }
  } else {
    for (size_t b = 0; b < dec.blobs.size(); ++b) {
      int v = static_cast<int>(dec.blobs[b].size());
      dec.blob_level[b] = v == 1 ? 0 : dec.blob_edge_count[b] - v + 1;
    }
  }
  return dec;
}

ValidationResult validate(const Network& net) {
  ValidationResult res;
  auto bad = [&](std::string msg) { res.violations.push_back(std::move(msg)); };

  if (net.num_vertices <= 0) {
    bad("network has no vertices");
    return res;
  }
  for (auto [a, b] : net.edges) {
    if (a < 0 || a >= net.num_vertices || b < 0 || b >= net.num_vertices) {
      bad("edge endpoint out of range");
      return res;
    }
    if (a == b) bad("loop at vertex " + std::to_string(a));
  }
  {
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : net.edges) {
      std::pair<int, int> key = {a, b};
      if (net.kind == Kind::Unrooted && key.first > key.second)
        std::swap(key.first, key.second);
      if (!seen.insert(key).second)
        bad("multiple edges between " + std::to_string(a) + " and " + std::to_string(b));
    }
  }
  for (const auto& [v, lab] : net.leaf_labels)
    if (v < 0 || v >= net.num_vertices) bad("label on missing vertex");
  {
    std::set<std::string> labs;
    for (const auto& [v, lab] : net.leaf_labels)
      if (!labs.insert(lab).second) bad("duplicate leaf label " + lab);
  }
  if (!res.violations.empty()) return res;
  if (!is_connected(net)) {
    bad("network is not connected");
    return res;
  }

  // single labeled vertex: the base case of both definitions
  if (net.num_vertices == 1) {
    if (!net.leaf_labels.count(0)) bad("single vertex must carry a leaf label");
    res.level = 0;
    return res;
  }

  if (net.kind == Kind::Rooted) {
    std::vector<int> in = in_degrees(net), out = out_degrees(net);
    int roots = 0;
    for (int v = 0; v < net.num_vertices; ++v) {
      int i = in[v], o = out[v];
      if (i == 0 && o == 2) {
        roots++;
      } else if (i == 1 && o == 0) {
        if (!net.leaf_labels.count(v)) bad("unlabeled leaf " + std::to_string(v));
      } else if (i == 1 && o == 2) {
        // tree vertex
      } else if (i == 2 && o == 1) {
        // reticulation
      } else {
        bad("vertex " + std::to_string(v) + " has degrees (" + std::to_string(i) + "," +
            std::to_string(o) + ")");
      }
      if (net.leaf_labels.count(v) && !(i == 1 && o == 0))
        bad("label on non-leaf vertex " + std::to_string(v));
    }
    if (roots != 1) bad("expected exactly one root, found " + std::to_string(roots));
    if (!is_acyclic(net)) bad("directed cycle present");
    if (!res.violations.empty()) return res;

    BlobDecomposition dec = blob_decomposition(net);
    for (size_t b = 0; b < dec.blobs.size(); ++b) {
      if (dec.blobs[b].size() < 2) continue;
      int out_cut = 0;
      for (auto [x, y] : dec.bridges)
        if (dec.blob_of[x] == static_cast<int>(b)) out_cut++;
      if (out_cut < 2)
        bad("blob with " + std::to_string(dec.blobs[b].size()) +
            " vertices has fewer than two outgoing cut arcs");
    }
    for (int lv : dec.blob_level) res.level = std::max(res.level, lv);
  } else {
    std::vector<int> deg = degrees(net);
    for (int v = 0; v < net.num_vertices; ++v) {
      if (deg[v] == 1) {
        if (!net.leaf_labels.count(v)) bad("unlabeled leaf " + std::to_string(v));
      } else if (deg[v] == 3) {
        if (net.leaf_labels.count(v)) bad("label on internal vertex " + std::to_string(v));
      } else {
        bad("vertex " + std::to_string(v) + " has degree " + std::to_string(deg[v]));
      }
    }
    if (!res.violations.empty()) return res;

    BlobDecomposition dec = blob_decomposition(net);
    for (size_t b = 0; b < dec.blobs.size(); ++b) {
      if (dec.blobs[b].size() < 2) continue;
      int cut = 0;
      for (auto [x, y] : dec.bridges)
        if (dec.blob_of[x] == static_cast<int>(b) || dec.blob_of[y] == static_cast<int>(b))
          cut++;
      if (cut < 3)
        bad("blob with " + std::to_string(dec.blobs[b].size()) +
            " vertices has fewer than three incident cut-edges");
    }
    for (int lv : dec.blob_level) res.level = std::max(res.level, lv);
  }
  return res;
}

NetParameters parameters(const Network& net) {
  ValidationResult v = validate(net);
  if (!v.ok())
    throw std::invalid_argument("parameters: invalid network: " + v.violations.front());
  BlobDecomposition dec = blob_decomposition(net);
  NetParameters p{0, 0};
  for (size_t b = 0; b < dec.blobs.size(); ++b)
    if (dec.blob_level[b] >= 1) {
      p.k++;
      p.m += dec.blob_edge_count[b];
    }
  return p;
}

Network unroot(const Network& net) {
  ValidationResult v = validate(net);
  if (net.kind != Kind::Rooted || !v.ok())
    throw std::invalid_argument("unroot: input must be a valid rooted network");
  Network out;
  out.kind = Kind::Unrooted;
  out.num_vertices = net.num_vertices + 1;
  out.edges = net.edges;
  out.leaf_labels = net.leaf_labels;
  int hash_leaf = net.num_vertices;
  out.edges.push_back({find_root(net), hash_leaf});
  out.leaf_labels[hash_leaf] = "#";
  return out;
}

namespace {

// s-t numbering of a 2-connected blob by ear insertion: every vertex other
// than s and t ends up with both a lower and a higher neighbor.
std::map<int, int> st_numbering(const std::vector<int>& blob,
                                const std::map<int, std::vector<int>>& adj, int s, int t) {
  std::vector<int> order;
  std::set<int> placed;
  {
    // base path s -> t avoiding nothing
    std::map<int, int> prev;
    std::queue<int> q;
    q.push(s);
    prev[s] = s;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      if (v == t) break;
      for (int w : adj.at(v))
        if (!prev.count(w)) {
          prev[w] = v;
          q.push(w);
        }
    }
    std::vector<int> path{t};
    int cur = t;
    while (cur != s) {
      cur = prev.at(cur);
      path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    order = path;
    placed.insert(path.begin(), path.end());
  }

  while (placed.size() < blob.size()) {
    // find an attachment edge (u placed, x unplaced)
    int u = -1, x = -1;
    for (int v : order) {
      for (int w : adj.at(v))
        if (!placed.count(w)) {
          u = v;
          x = w;
          break;
        }
      if (u != -1) break;
    }
    if (u == -1) throw AnalysisError("st_numbering: blob is not connected");
    // ear from x to some placed vertex != u, internal vertices unplaced
    std::map<int, int> prev;
    std::queue<int> q;
    q.push(x);
    prev[x] = x;
    int w_end = -1;
    while (!q.empty() && w_end == -1) {
      int v = q.front();
      q.pop();
      for (int w : adj.at(v)) {
        if (w == u || prev.count(w)) continue;
        if (placed.count(w)) {
          prev[w] = v;
          w_end = w;
          break;
        }
        prev[w] = v;
        q.push(w);
      }
    }
    if (w_end == -1)
      throw AnalysisError("st_numbering: blob is not 2-connected");
    std::vector<int> ear{w_end};
    int cur = w_end;
    while (cur != x) {
      cur = prev.at(cur);
      ear.push_back(cur);
    }
    // ear currently [w_end, ..., x]; interior to insert is ear[1..]
    std::vector<int> interior(ear.begin() + 1, ear.end());
    // interior is ordered from the w side towards x (x adjacent to u)
    auto pos = [&](int v) {
      return std::find(order.begin(), order.end(), v) - order.begin();
    };
    long pu = pos(u), pw = pos(w_end);
    if (pu < pw) {
      // insert ascending after u: u < x < ... < w  (x nearest u goes first)
      std::vector<int> asc(interior.rbegin(), interior.rend());
      order.insert(order.begin() + pu + 1, asc.begin(), asc.end());
    } else {
      // insert ascending after w: w < ... < x < u
      order.insert(order.begin() + pw + 1, interior.begin(), interior.end());
    }
    placed.insert(interior.begin(), interior.end());
  }

  std::map<int, int> num;
  for (size_t i = 0; i < order.size(); ++i) num[order[i]] = static_cast<int>(i);
  return num;
}

}  // namespace

Network root_at(const Network& net, const std::string& leaf, const SinkChoice& choose_sink) {
  ValidationResult v = validate(net);
  if (net.kind != Kind::Unrooted || !v.ok())
    throw std::invalid_argument("root_at: input must be a valid unrooted network");
  int leaf_v = -1;
  for (const auto& [vid, lab] : net.leaf_labels)
    if (lab == leaf) leaf_v = vid;
  if (leaf_v == -1) throw std::invalid_argument("root_at: no leaf labeled " + leaf);
  if (net.num_vertices == 1)
    throw std::invalid_argument("root_at: cannot delete the only vertex");
  if (net.num_vertices == 2) {
    // deleting one endpoint of a single edge leaves a one-vertex network
    Network out;
    out.kind = Kind::Rooted;
    out.num_vertices = 1;
    int other = net.edges[0].first == leaf_v ? net.edges[0].second : net.edges[0].first;
    out.leaf_labels[0] = net.leaf_labels.at(other);
    return out;
  }

  // drop the chosen leaf, renumber
  std::vector<int> newid(net.num_vertices, -1);
  int nv = 0;
  for (int i = 0; i < net.num_vertices; ++i)
    if (i != leaf_v) newid[i] = nv++;
  Network g;
  g.kind = Kind::Unrooted;
  g.num_vertices = nv;
  int rho = -1;
  for (auto [a, b] : net.edges) {
    if (a == leaf_v) {
      rho = newid[b];
      continue;
    }
    if (b == leaf_v) {
      rho = newid[a];
      continue;
    }
    g.edges.push_back({newid[a], newid[b]});
  }
  for (const auto& [vid, lab] : net.leaf_labels)
    if (vid != leaf_v) g.leaf_labels[newid[vid]] = lab;

  BlobDecomposition dec = blob_decomposition(g);
  std::map<int, std::vector<int>> blob_adj;  // within-blob adjacency
  for (auto [a, b] : g.edges)
    if (dec.blob_of[a] == dec.blob_of[b]) {
      blob_adj[a].push_back(b);
      blob_adj[b].push_back(a);
    }
  for (auto& [k2, lst] : blob_adj) std::sort(lst.begin(), lst.end());

  std::vector<std::pair<int, int>> arcs;
  std::vector<char> blob_done(dec.blobs.size(), 0);
  std::queue<std::pair<int, int>> bq;  // (blob id, entry vertex)
  bq.push({dec.blob_of[rho], rho});
  blob_done[dec.blob_of[rho]] = 1;
  while (!bq.empty()) {
    auto [bid, entry] = bq.front();
    bq.pop();
    const std::vector<int>& blob = dec.blobs[bid];
    // outgoing cut edges: bridges with one endpoint in this blob, other side
    // not yet processed (the entry bridge's far blob is already done)
    std::vector<std::pair<int, int>> outgoing;  // (tail in blob, head outside)
    for (auto [a, b] : dec.bridges) {
      if (dec.blob_of[a] == bid && !blob_done[dec.blob_of[b]])
        outgoing.push_back({a, b});
      else if (dec.blob_of[b] == bid && !blob_done[dec.blob_of[a]])
        outgoing.push_back({b, a});
    }
    std::sort(outgoing.begin(), outgoing.end());
    if (blob.size() >= 2) {
      std::vector<int> candidates;
      for (auto [a, b] : outgoing) candidates.push_back(a);
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      if (candidates.empty())
        throw std::invalid_argument("root_at: blob has no outgoing cut edge");
      int t = choose_sink ? choose_sink(candidates) : candidates.front();
      if (std::find(candidates.begin(), candidates.end(), t) == candidates.end())
        throw std::invalid_argument("root_at: chosen sink is not an outgoing cut-edge tail");
      std::map<int, int> num = st_numbering(blob, blob_adj, entry, t);
      std::set<std::pair<int, int>> seen;
      for (int a : blob)
        for (int b : blob_adj.at(a)) {
          auto key = std::minmax(a, b);
          if (!seen.insert(key).second) continue;
          if (num.at(a) < num.at(b))
            arcs.push_back({a, b});
          else
            arcs.push_back({b, a});
        }
    }
    for (auto [a, b] : outgoing) {
      arcs.push_back({a, b});
      blob_done[dec.blob_of[b]] = 1;
      bq.push({dec.blob_of[b], b});
    }
  }

  Network out;
  out.kind = Kind::Rooted;
  out.num_vertices = nv;
  out.edges = std::move(arcs);
  out.leaf_labels = g.leaf_labels;
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::string to_dot(const Network& net) {
  std::ostringstream os;
  bool rooted = net.kind == Kind::Rooted;
  os << (rooted ? "digraph" : "graph") << " N {\n";
  for (int v = 0; v < net.num_vertices; ++v) {
    auto it = net.leaf_labels.find(v);
    if (it != net.leaf_labels.end())
      os << "  v" << v << " [label=\"" << it->second << "\"];\n";
    else
      os << "  v" << v << " [shape=point];\n";
  }
  std::vector<std::pair<int, int>> es = net.edges;
  if (!rooted)
    for (auto& e : es)
      if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(es.begin(), es.end());
  for (auto [a, b] : es)
    os << "  v" << a << (rooted ? " -> v" : " -- v") << b << ";\n";
  os << "}\n";
  return os.str();
}

// ------------------------------------------------------ canonical labeling

namespace {

struct ColorState {
  // color per vertex; colors are ranks of sorted signature strings
  std::vector<int> colors;
};

std::vector<int> refine_colors(const Network& net, std::vector<int> colors) {
  bool rooted = net.kind == Kind::Rooted;
  int n = net.num_vertices;
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (dir, neighbor)
  for (auto [a, b] : net.edges) {
    if (rooted) {
      adj[a].push_back({0, b});
      adj[b].push_back({1, a});
    } else {
      adj[a].push_back({0, b});
      adj[b].push_back({0, a});
    }
  }
  while (true) {
    // integer-vector signatures keep the rank order aligned with the current
    // colors, so a stable partition reproduces itself exactly
    std::vector<std::vector<int>> sigs(n);
    for (int v = 0; v < n; ++v) {
      std::vector<std::pair<int, int>> nb;
      for (auto [dir, w] : adj[v]) nb.push_back({dir, colors[w]});
      std::sort(nb.begin(), nb.end());
      sigs[v].push_back(colors[v]);
      for (auto [dir, c] : nb) {
        sigs[v].push_back(dir);
        sigs[v].push_back(c);
      }
    }
    std::vector<std::vector<int>> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v)
      next[v] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), sigs[v]) - sorted.begin());
    if (next == colors) return colors;
    colors = std::move(next);
  }
}

std::string encode_with_colors(const Network& net, const std::vector<int>& colors) {
  // colors must be discrete here
  int n = net.num_vertices;
  std::vector<int> rank(n);
  for (int v = 0; v < n; ++v) rank[v] = colors[v];
  std::ostringstream os;
  os << (net.kind == Kind::Rooted ? "R" : "U") << n << ';';
  std::vector<std::pair<int, int>> es;
  for (auto [a, b] : net.edges) {
    int x = rank[a], y = rank[b];
    if (net.kind == Kind::Unrooted && x > y) std::swap(x, y);
    es.push_back({x, y});
  }
  std::sort(es.begin(), es.end());
  for (auto [a, b] : es) os << a << '>' << b << ';';
  std::vector<std::pair<int, std::string>> labs;
  for (const auto& [v, lab] : net.leaf_labels) labs.push_back({rank[v], lab});
  std::sort(labs.begin(), labs.end());
  for (const auto& [r, lab] : labs) os << r << '=' << lab << ';';
  return os.str();
}

std::string canonical_rec(const Network& net, std::vector<int> colors) {
  colors = refine_colors(net, colors);
  int n = net.num_vertices;
  // find first non-singleton color class
  std::map<int, std::vector<int>> classes;
  for (int v = 0; v < n; ++v) classes[colors[v]].push_back(v);
  int split_color = -1;
  for (const auto& [c, vs] : classes)
    if (vs.size() > 1) {
      split_color = c;
      break;
    }
  if (split_color == -1) {
    // discrete: colors are a permutation 0..n-1
    return encode_with_colors(net, colors);
  }
  std::string best;
  for (int v : classes[split_color]) {
    std::vector<int> next = colors;
    // individualize v: give it a color just below its class, shift handled by refinement
    for (int w = 0; w < n; ++w)
      next[w] = 2 * next[w] + (w == v ? 0 : 1);
    std::string cand = canonical_rec(net, next);
    if (best.empty() || cand < best) best = cand;
  }
  return best;
}

}  // namespace

std::string canonical_form(const Network& net) {
  int n = net.num_vertices;
  bool rooted = net.kind == Kind::Rooted;
  std::vector<int> in = in_degrees(net), out = out_degrees(net), deg = degrees(net);
  std::vector<std::string> keys(n);
  for (int v = 0; v < n; ++v) {
    auto it = net.leaf_labels.find(v);
    if (it != net.leaf_labels.end())
      keys[v] = "L:" + it->second;
    else if (rooted)
      keys[v] = "I:" + std::to_string(in[v]) + ":" + std::to_string(out[v]);
    else
      keys[v] = "I:" + std::to_string(deg[v]);
  }
  std::vector<std::string> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> colors(n);
  for (int v = 0; v < n; ++v)
    colors[v] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
  std::string enc = canonical_rec(net, colors);
  // prepend the label key multiset so distinct label sets always differ
  std::ostringstream os;
  for (const auto& s : sorted) os << s << ',';
  os << '#' << enc;
  return os.str();
}

bool isomorphic(const Network& a, const Network& b) {
  if (a.kind != b.kind || a.num_vertices != b.num_vertices ||
      a.edges.size() != b.edges.size())
    return false;
  return canonical_form(a) == canonical_form(b);
}

Network relabel(const Network& net, const std::map<std::string, std::string>& mapping) {
  Network out = net;
  for (auto& [v, lab] : out.leaf_labels) {
    auto it = mapping.find(lab);
    if (it != mapping.end()) lab = it->second;
  }
  return out;
}

std::string network_json(const Network& net) {
  json edges = json::array();
  for (auto [a, b] : net.edges) edges.push_back({a, b});
  json labels = json::object();
  for (const auto& [v, lab] : net.leaf_labels) labels[std::to_string(v)] = lab;
  return json{{"schema", "phynet.network/1"},
              {"kind", net.kind == Kind::Rooted ? "rooted" : "unrooted"},
              {"vertices", net.num_vertices},
              {"edges", edges},
              {"labels", labels}}
      .dump();
}

Network network_from_json(const std::string& text) {
  json j = json::parse(text);
  Network net;
  net.kind = j.at("kind") == "rooted" ? Kind::Rooted : Kind::Unrooted;
  net.num_vertices = j.at("vertices").get<int>();
  for (const auto& e : j.at("edges"))
    net.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  for (const auto& [k, v] : j.at("labels").items())
    net.leaf_labels[std::stoi(k)] = v.get<std::string>();
  return net;
}

}  // namespace phynet
