#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "phynet/numbers.hpp"

namespace phynet {

enum class Kind { Rooted, Unrooted };

// Leaf-labeled binary phylogenetic network. Vertices are 0..num_vertices-1.
// For Kind::Rooted, edges are arcs (tail, head); for Kind::Unrooted they are
// unordered (the stored orientation carries no meaning).
struct Network {
  Kind kind{Kind::Rooted};
  int num_vertices{0};
  std::vector<std::pair<int, int>> edges;
  std::map<int, std::string> leaf_labels;
};

struct ValidationResult {
  int level{0};
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct BlobDecomposition {
  std::vector<std::vector<int>> blobs;          // vertex sets, each sorted
  std::vector<std::pair<int, int>> bridges;     // cut edges/arcs
  std::vector<int> blob_level;                  // per blob
  std::vector<int> blob_edge_count;             // edges inside each blob
  std::vector<int> blob_of;                     // vertex -> blob index
};

struct NetParameters {
  int k;  // blobs of level >= 1
  int m;  // edges/arcs inside those blobs
};

ValidationResult validate(const Network& net);
BlobDecomposition blob_decomposition(const Network& net);
NetParameters parameters(const Network& net);

// Add a '#'-labeled neighbor to the root and forget orientations.
Network unroot(const Network& net);

// Chooses the sink among the sorted tails of a blob's outgoing cut edges.
using SinkChoice = std::function<int(const std::vector<int>& candidates)>;

// Delete `leaf`, make its neighbor the root, orient blobs by s-t numberings.
Network root_at(const Network& net, const std::string& leaf,
                const SinkChoice& choose_sink = {});

std::string to_dot(const Network& net);

// Equal for two networks iff they are leaf-label-preserving isomorphic.
std::string canonical_form(const Network& net);
bool isomorphic(const Network& a, const Network& b);

Network relabel(const Network& net, const std::map<std::string, std::string>& mapping);

std::string network_json(const Network& net);
Network network_from_json(const std::string& text);

// degree helpers
std::vector<int> in_degrees(const Network& net);
std::vector<int> out_degrees(const Network& net);
std::vector<int> degrees(const Network& net);
int find_root(const Network& net);  // in-degree-0 vertex of a rooted network

}  // namespace phynet
