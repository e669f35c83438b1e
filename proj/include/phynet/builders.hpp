#pragma once

#include <array>
#include <vector>

#include "phynet/network.hpp"

namespace phynet::build {

// Rooted constructions.  Sequences attached to an arc subdivide it, one new
// vertex per sequence element, each carrying that element as a pendant
// subnetwork; sequence order runs from the arc's tail towards its head.

Network leaf(const std::string& label);
Network rooted_pair(const Network& a, const Network& b);
// cycle whose reticulation is a child of the root (one decorated path)
Network rooted_cycle_path(const std::vector<Network>& path_seq, const Network& under);
// cycle with two decorated paths from the root to the reticulation
Network rooted_cycle_two_paths(const std::vector<Network>& left,
                               const std::vector<Network>& right, const Network& under);
// level-2 generators; seqs entries follow the arc lists documented in the .cpp
Network rooted_gen2a(const std::array<std::vector<Network>, 5>& seqs, const Network& under);
Network rooted_gen2b(const std::array<std::vector<Network>, 5>& seqs, const Network& under);
Network rooted_gen2c(const std::array<std::vector<Network>, 6>& seqs, const Network& under1,
                     const Network& under2);
Network rooted_gen2d(const std::array<std::vector<Network>, 6>& seqs, const Network& under1,
                     const Network& under2);

// Pointed (unrooted-with-#) constructions.  A pointed network is an unrooted
// network carrying one leaf labeled "#".  Gluing a pointed subnetwork at a
// vertex deletes its '#' leaf and joins the vertex to the old '#' neighbor.

Network pointed_leaf(const std::string& label);
Network pointed_pair(const Network& a, const Network& b);
Network pointed_cycle(const std::vector<Network>& seq);  // |seq| >= 2
// level-2 blob: v adjacent to '#' and to both branch vertices l, r, which are
// joined by two parallel edge slots; p/q decorate the v-l / v-r edges, s/t the
// two l-r edges.  Requires |s|+|t| >= 1 and at least 2 pendants in total.
Network pointed_theta(const std::vector<Network>& p, const std::vector<Network>& q,
                      const std::vector<Network>& s, const std::vector<Network>& t);

}  // namespace phynet::build
