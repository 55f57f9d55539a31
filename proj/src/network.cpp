#include "nettomo/network.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "nettomo/intlinalg.hpp"

namespace nettomo {

bool Network::has_node(int node) const {
  return std::find(nodes.begin(), nodes.end(), node) != nodes.end();
}

bool Network::is_monitor(int node) const {
  return std::find(monitors.begin(), monitors.end(), node) != monitors.end();
}

int Network::other_end(int edge_idx, int node) const {
  Edge const& e = edges.at(static_cast<std::size_t>(edge_idx));
  if (e.u == node) return e.v;
  if (e.v == node) return e.u;
  throw std::invalid_argument("node " + std::to_string(node) + " not an endpoint of edge " + e.id);
}

std::map<int, std::vector<int>> Network::adjacency() const {
  std::map<int, std::vector<int>> adj;
  for (int n : nodes) adj[n];
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].u].push_back(static_cast<int>(i));
    adj[edges[i].v].push_back(static_cast<int>(i));
  }
  return adj;
}

bool Network::connected() const {
  if (nodes.empty()) return false;
  auto adj = adjacency();
  std::set<int> seen{nodes[0]};
  std::deque<int> queue{nodes[0]};
  while (!queue.empty()) {
    int at = queue.front();
    queue.pop_front();
    for (int ei : adj[at]) {
      int nb = other_end(ei, at);
      if (seen.insert(nb).second) queue.push_back(nb);
    }
  }
  return seen.size() == nodes.size();
}

int Network::first_edge_between(int a, int b) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Edge const& e = edges[i];
    if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return static_cast<int>(i);
  }
  return -1;
}

std::string to_string(Impl impl) {
  switch (impl) {
    case Impl::coherent: return "coherent";
    case Impl::squeezed: return "squeezed";
    case Impl::entangled: return "entangled";
  }
  throw std::logic_error("unknown impl");
}

Impl impl_from_string(std::string const& s) {
  if (s == "coherent") return Impl::coherent;
  if (s == "squeezed") return Impl::squeezed;
  if (s == "entangled") return Impl::entangled;
  throw std::invalid_argument("unknown-impl: " + s);
}

std::vector<std::string> validate_network(Network const& net) {
  std::vector<std::string> errors;
  if (net.nodes.empty()) errors.push_back("no-nodes: node list is empty");
  {
    std::set<int> uniq(net.nodes.begin(), net.nodes.end());
    if (uniq.size() != net.nodes.size()) errors.push_back("duplicate-node-id: node list repeats an id");
  }
  std::set<std::string> edge_ids;
  for (Edge const& e : net.edges) {
    if (!edge_ids.insert(e.id).second)
      errors.push_back("duplicate-edge-id: " + e.id);
    if (!net.has_node(e.u))
      errors.push_back("edge-endpoint-unknown: edge " + e.id + " endpoint " + std::to_string(e.u));
    if (!net.has_node(e.v))
      errors.push_back("edge-endpoint-unknown: edge " + e.id + " endpoint " + std::to_string(e.v));
    if (e.u == e.v)
      errors.push_back("self-loop: edge " + e.id + " at node " + std::to_string(e.u));
    if (e.eta && (*e.eta <= 0.0 || *e.eta > 1.0))
      errors.push_back("transmissivity-out-of-range: edge " + e.id + " eta " + std::to_string(*e.eta));
  }
  if (net.monitors.empty()) errors.push_back("no-monitors: monitor set is empty");
  for (int m : net.monitors)
    if (!net.has_node(m)) errors.push_back("monitor-not-a-node: " + std::to_string(m));
  // connectivity only meaningful once the incidence structure is sound
  if (errors.empty() && !net.connected()) errors.push_back("graph-disconnected: not all nodes reachable");
  return errors;
}

std::vector<std::string> validate_walk(Walk const& w, Network const& net) {
  std::vector<std::string> errors;
  if (w.edge_idx.empty()) {
    errors.push_back("walk-empty: a walk needs at least one edge");
    return errors;
  }
  if (w.vertices.size() != w.edge_idx.size() + 1) {
    errors.push_back("walk-malformed: vertex count must be edge count + 1");
    return errors;
  }
  for (std::size_t i = 0; i < w.edge_idx.size(); ++i) {
    int ei = w.edge_idx[i];
    if (ei < 0 || static_cast<std::size_t>(ei) >= net.edges.size()) {
      errors.push_back("walk-unknown-edge: index " + std::to_string(ei));
      continue;
    }
    Edge const& e = net.edges[static_cast<std::size_t>(ei)];
    int a = w.vertices[i], b = w.vertices[i + 1];
    bool incident = (e.u == a && e.v == b) || (e.u == b && e.v == a);
    if (!incident)
      errors.push_back("walk-not-incident: edge " + e.id + " does not join " + std::to_string(a) +
                       " and " + std::to_string(b));
  }
  if (!net.is_monitor(w.vertices.front()))
    errors.push_back("walk-endpoint-not-monitor: " + std::to_string(w.vertices.front()));
  if (!net.is_monitor(w.vertices.back()))
    errors.push_back("walk-endpoint-not-monitor: " + std::to_string(w.vertices.back()));
  return errors;
}

std::vector<std::string> validate_probe(Probe const& p, Network const& net) {
  std::vector<std::string> errors = validate_walk(p.walk, net);
  if (p.t < 1) errors.push_back("probe-block-size-invalid: t = " + std::to_string(p.t));
  if (p.c < 1) errors.push_back("probe-copies-invalid: c = " + std::to_string(p.c));
  if (p.N < 0) errors.push_back("probe-energy-invalid: N < 0");
  if (p.Na < 0) errors.push_back("probe-energy-invalid: Na < 0");
  if ((p.impl == Impl::coherent || p.impl == Impl::squeezed) && p.t != 1)
    errors.push_back("probe-block-size-invalid: t must be 1 for " + to_string(p.impl));
  if (p.impl != Impl::coherent && p.Na <= 0)
    errors.push_back("probe-energy-invalid: Na must be > 0 for " + to_string(p.impl));
  return errors;
}

std::set<int> walk_support(Walk const& w) {
  return std::set<int>(w.edge_idx.begin(), w.edge_idx.end());
}

std::map<int, long long> walk_multiset(Walk const& w) {
  std::map<int, long long> counts;
  for (int ei : w.edge_idx) ++counts[ei];
  return counts;
}

MeasurementMatrix measurement_matrix(std::vector<Probe> const& probes, Network const& net) {
  MeasurementMatrix m;
  for (Edge const& e : net.edges) m.col_ids.push_back(e.id);
  std::vector<Walk> seen;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    auto errs = validate_walk(probes[i].walk, net);
    if (!errs.empty()) throw std::invalid_argument("probe " + std::to_string(i + 1) + ": " + errs.front());
    for (Walk const& w : seen)
      if (w == probes[i].walk)
        throw std::invalid_argument("duplicate-walk: probe " + std::to_string(i + 1) +
                                    " repeats an earlier walk (use copies instead)");
    seen.push_back(probes[i].walk);
    m.row_ids.push_back("P" + std::to_string(i + 1));
    std::vector<long long> row(net.edges.size(), 0);
    for (auto const& [ei, count] : walk_multiset(probes[i].walk))
      row[static_cast<std::size_t>(ei)] = count;
    m.entries.push_back(std::move(row));
  }
  return m;
}

bool is_identifiable(MeasurementMatrix const& m) {
  if (m.cols() == 0) return true;
  if (m.rows() < m.cols()) return false;
  return exact_rank(m.entries) == static_cast<int>(m.cols());
}

double probe_transmissivity(Probe const& p, Network const& net) {
  auto errs = validate_walk(p.walk, net);
  if (!errs.empty()) throw std::invalid_argument(errs.front());
  double prod = 1.0;
  for (auto const& [ei, count] : walk_multiset(p.walk)) {
    Edge const& e = net.edges[static_cast<std::size_t>(ei)];
    if (!e.eta)
      throw std::invalid_argument("missing-transmissivity: edge " + e.id);
    for (long long k = 0; k < count; ++k) prod *= *e.eta;
  }
  return prod;
}

}  // namespace nettomo
