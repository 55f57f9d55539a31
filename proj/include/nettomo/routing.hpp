#pragma once

#include <limits>

#include "nettomo/network.hpp"

namespace nettomo {

inline constexpr int kUnreachable = std::numeric_limits<int>::max() / 2;

// All-pairs hop distances plus the penultimate vertex of one deterministic
// shortest path per pair (ties broken by scanning intermediates in ascending
// node-id order).
struct ShortestPathTable {
  std::vector<int> node_order;             // ascending node ids; defines the index space
  std::vector<std::vector<int>> dist;      // hops
  std::vector<std::vector<int>> pred;      // index of penultimate vertex, -1 if none

  int index_of(int node) const;
  int hops(int a, int b) const;            // by node id
  std::vector<int> path(int a, int b) const;  // node ids, a first, b last
};

ShortestPathTable floyd_warshall(Network const& net);

// One walk per edge, in edge input order:
//  - both endpoints monitors: the edge itself
//  - one endpoint a monitor m:  m -> other -> m  (loop-back)
//  - otherwise: loop-back through the nearest monitor of the closer endpoint,
//    return path identical to the outgoing path reversed
std::vector<Walk> find_probes(Network const& net);

struct Subgraph {
  std::set<int> vertices;       // node ids
  std::set<int> edges;          // edge indexes
  std::vector<int> probe_idx;   // indexes into the walk list
};

struct SubgraphCover {
  std::vector<Subgraph> subgraphs;
};

// Groups FindProbe walks into the maximum subgraph cover: each monitor-incident
// edge seeds a subgraph; every longer walk merges into the unique seed whose
// edge lies in its support. Throws "cover-grouping-failed" when that seed is
// missing or ambiguous (i.e. the walks did not come from find_probes).
SubgraphCover group_cover(std::vector<Walk> const& walks, Network const& net);

// deg(M) + |E(M)|: edges with exactly one endpoint in the monitor set plus
// edges with both endpoints in it.
int cover_bound(Network const& net);

// Checks the cover definition: every subgraph has >=1 edge and >=1 monitor,
// subgraphs are pairwise edge-disjoint, their union is E(G), and each is
// connected. Returns violations, empty means ok.
std::vector<std::string> verify_cover(SubgraphCover const& cover, Network const& net);

}  // namespace nettomo
