#include "nettomo/routing.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace nettomo {

int ShortestPathTable::index_of(int node) const {
  auto it = std::lower_bound(node_order.begin(), node_order.end(), node);
  if (it == node_order.end() || *it != node)
    throw std::invalid_argument("unknown node " + std::to_string(node));
  return static_cast<int>(it - node_order.begin());
}

int ShortestPathTable::hops(int a, int b) const {
  return dist[static_cast<std::size_t>(index_of(a))][static_cast<std::size_t>(index_of(b))];
}

std::vector<int> ShortestPathTable::path(int a, int b) const {
  int ia = index_of(a), ib = index_of(b);
  if (dist[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ib)] >= kUnreachable)
    throw std::runtime_error("graph-disconnected: no path between " + std::to_string(a) + " and " +
                             std::to_string(b));
  std::vector<int> rev{b};
  int at = ib;
  while (at != ia) {
    at = pred[static_cast<std::size_t>(ia)][static_cast<std::size_t>(at)];
    rev.push_back(node_order[static_cast<std::size_t>(at)]);
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

ShortestPathTable floyd_warshall(Network const& net) {
  ShortestPathTable t;
  t.node_order = net.nodes;
  std::sort(t.node_order.begin(), t.node_order.end());
  std::size_t n = t.node_order.size();
  t.dist.assign(n, std::vector<int>(n, kUnreachable));
  t.pred.assign(n, std::vector<int>(n, -1));
  for (std::size_t i = 0; i < n; ++i) {
    t.dist[i][i] = 0;
    t.pred[i][i] = static_cast<int>(i);
  }
  for (Edge const& e : net.edges) {
    std::size_t iu = static_cast<std::size_t>(t.index_of(e.u));
    std::size_t iv = static_cast<std::size_t>(t.index_of(e.v));
    if (t.dist[iu][iv] > 1) {
      t.dist[iu][iv] = t.dist[iv][iu] = 1;
      t.pred[iu][iv] = static_cast<int>(iu);
      t.pred[iv][iu] = static_cast<int>(iv);
    }
  }
  // k scanned in ascending node-id order; strict improvement only, so the
  // reconstructed path per pair is deterministic
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (t.dist[i][k] >= kUnreachable) continue;
      for (std::size_t j = 0; j < n; ++j) {
        int through = t.dist[i][k] + t.dist[k][j];
        if (through < t.dist[i][j]) {
          t.dist[i][j] = through;
          t.pred[i][j] = t.pred[k][j];
        }
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (t.dist[i][j] >= kUnreachable)
        throw std::runtime_error("graph-disconnected: no path between " +
                                 std::to_string(t.node_order[i]) + " and " +
                                 std::to_string(t.node_order[j]));
  return t;
}

namespace {

// vertex path -> edge indexes, taking the first matching edge in input order
std::vector<int> edges_along(std::vector<int> const& path, Network const& net) {
  std::vector<int> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    int ei = net.first_edge_between(path[i], path[i + 1]);
    if (ei < 0)
      throw std::runtime_error("walk-edge-not-found: between " + std::to_string(path[i]) + " and " +
                               std::to_string(path[i + 1]));
    out.push_back(ei);
  }
  return out;
}

struct NearestMonitor {
  int monitor = 0;
  int hops = kUnreachable;
};

NearestMonitor nearest_monitor(int node, Network const& net, ShortestPathTable const& spt) {
  NearestMonitor best;
  for (int m : net.monitors) {  // monitors scanned in ascending id order below
    int d = spt.hops(m, node);
    if (d < best.hops || (d == best.hops && m < best.monitor)) best = {m, d};
  }
  return best;
}

}  // namespace

std::vector<Walk> find_probes(Network const& net) {
  auto errs = validate_network(net);
  if (!errs.empty()) throw std::invalid_argument(errs.front());
  ShortestPathTable spt = floyd_warshall(net);

  std::vector<Walk> walks;
  walks.reserve(net.edges.size());
  for (std::size_t ei = 0; ei < net.edges.size(); ++ei) {
    Edge const& e = net.edges[ei];
    bool mu = net.is_monitor(e.u), mv = net.is_monitor(e.v);
    Walk w;
    if (mu && mv) {
      w.vertices = {e.u, e.v};
      w.edge_idx = {static_cast<int>(ei)};
    } else if (mu || mv) {
      int m = mu ? e.u : e.v;
      int x = mu ? e.v : e.u;
      w.vertices = {m, x, m};
      w.edge_idx = {static_cast<int>(ei), static_cast<int>(ei)};
    } else {
      NearestMonitor nu = nearest_monitor(e.u, net, spt);
      NearestMonitor nv = nearest_monitor(e.v, net, spt);
      // shorter loop-back wins; on equal length the lexicographically smaller
      // monitor does (and u-side if even the monitors coincide)
      bool use_u = nu.hops < nv.hops || (nu.hops == nv.hops && nu.monitor <= nv.monitor);
      int near = use_u ? e.u : e.v;
      int far = use_u ? e.v : e.u;
      int m = use_u ? nu.monitor : nv.monitor;
      std::vector<int> approach = spt.path(m, near);
      std::vector<int> approach_edges = edges_along(approach, net);
      w.vertices = approach;
      w.vertices.push_back(far);
      w.vertices.insert(w.vertices.end(), approach.rbegin(), approach.rend());
      w.edge_idx = approach_edges;
      w.edge_idx.push_back(static_cast<int>(ei));
      w.edge_idx.push_back(static_cast<int>(ei));
      w.edge_idx.insert(w.edge_idx.end(), approach_edges.rbegin(), approach_edges.rend());
    }
    walks.push_back(std::move(w));
  }
  return walks;
}

SubgraphCover group_cover(std::vector<Walk> const& walks, Network const& net) {
  for (Walk const& w : walks) {
    auto errs = validate_walk(w, net);
    if (!errs.empty()) throw std::invalid_argument(errs.front());
  }
  // seeds: walks whose support is a single monitor-incident edge
  SubgraphCover cover;
  std::vector<int> seed_edge;  // seed subgraph index -> its edge
  std::vector<int> merge_later;
  for (std::size_t i = 0; i < walks.size(); ++i) {
    auto support = walk_support(walks[i]);
    Edge const& first = net.edges[static_cast<std::size_t>(walks[i].edge_idx.front())];
    bool monitor_incident = net.is_monitor(first.u) || net.is_monitor(first.v);
    if (support.size() == 1 && monitor_incident) {
      Subgraph g;
      g.vertices.insert(walks[i].vertices.begin(), walks[i].vertices.end());
      g.edges = support;
      g.probe_idx.push_back(static_cast<int>(i));
      cover.subgraphs.push_back(std::move(g));
      seed_edge.push_back(walks[i].edge_idx.front());
    } else {
      merge_later.push_back(static_cast<int>(i));
    }
  }
  for (int i : merge_later) {
    auto support = walk_support(walks[static_cast<std::size_t>(i)]);
    int target = -1;
    for (std::size_t s = 0; s < seed_edge.size(); ++s) {
      if (support.count(seed_edge[s])) {
        if (target >= 0)
          throw std::runtime_error("cover-grouping-failed: walk " + std::to_string(i + 1) +
                                   " contains several seed edges");
        target = static_cast<int>(s);
      }
    }
    if (target < 0)
      throw std::runtime_error("cover-grouping-failed: walk " + std::to_string(i + 1) +
                               " contains no seed edge");
    Subgraph& g = cover.subgraphs[static_cast<std::size_t>(target)];
    g.vertices.insert(walks[static_cast<std::size_t>(i)].vertices.begin(),
                      walks[static_cast<std::size_t>(i)].vertices.end());
    g.edges.insert(support.begin(), support.end());
    g.probe_idx.push_back(i);
  }
  return cover;
}

int cover_bound(Network const& net) {
  int one_end = 0, both_ends = 0;
  for (Edge const& e : net.edges) {
    int in_m = (net.is_monitor(e.u) ? 1 : 0) + (net.is_monitor(e.v) ? 1 : 0);
    if (in_m == 1) ++one_end;
    if (in_m == 2) ++both_ends;
  }
  return one_end + both_ends;
}

std::vector<std::string> verify_cover(SubgraphCover const& cover, Network const& net) {
  std::vector<std::string> violations;
  std::set<int> all_covered;
  for (std::size_t gi = 0; gi < cover.subgraphs.size(); ++gi) {
    Subgraph const& g = cover.subgraphs[gi];
    std::string tag = "subgraph " + std::to_string(gi + 1);
    if (g.edges.empty()) violations.push_back("condition-1-violated: " + tag + " has no edge");
    bool has_monitor = std::any_of(g.vertices.begin(), g.vertices.end(),
                                   [&](int v) { return net.is_monitor(v); });
    if (!has_monitor) violations.push_back("condition-1-violated: " + tag + " has no monitor");
    for (int ei : g.edges) {
      if (ei < 0 || static_cast<std::size_t>(ei) >= net.edges.size()) {
        violations.push_back("unknown-edge: " + tag);
        continue;
      }
      if (!all_covered.insert(ei).second)
        violations.push_back("condition-2-violated: edge " +
                             net.edges[static_cast<std::size_t>(ei)].id + " appears twice");
    }
    // connectivity over the subgraph's own edges
    if (!g.edges.empty()) {
      std::set<int> endpoint_nodes;
      for (int ei : g.edges) {
        endpoint_nodes.insert(net.edges[static_cast<std::size_t>(ei)].u);
        endpoint_nodes.insert(net.edges[static_cast<std::size_t>(ei)].v);
      }
      for (int v : g.vertices)
        if (!endpoint_nodes.count(v))
          violations.push_back("isolated-vertex: " + tag + " vertex " + std::to_string(v));
      std::set<int> seen{*endpoint_nodes.begin()};
      std::deque<int> queue{*endpoint_nodes.begin()};
      while (!queue.empty()) {
        int at = queue.front();
        queue.pop_front();
        for (int ei : g.edges) {
          Edge const& e = net.edges[static_cast<std::size_t>(ei)];
          int nb = e.u == at ? e.v : (e.v == at ? e.u : at);
          if (nb != at && seen.insert(nb).second) queue.push_back(nb);
        }
      }
      if (seen.size() != endpoint_nodes.size())
        violations.push_back("subgraph-disconnected: " + tag);
    }
  }
  if (all_covered.size() != net.edges.size())
    for (std::size_t ei = 0; ei < net.edges.size(); ++ei)
      if (!all_covered.count(static_cast<int>(ei)))
        violations.push_back("condition-3-violated: edge " + net.edges[ei].id + " not covered");
  return violations;
}

}  // namespace nettomo
