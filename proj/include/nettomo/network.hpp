#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nettomo {

struct Edge {
  std::string id;
  int u = 0;
  int v = 0;
  std::optional<double> eta;  // known for analysis/simulation, absent for estimation targets
};

// Undirected multigraph with a monitor set. Edge order defines the
// measurement-matrix column order everywhere; it is never sorted by id.
struct Network {
  std::vector<int> nodes;
  std::vector<Edge> edges;
  std::vector<int> monitors;

  bool has_node(int node) const;
  bool is_monitor(int node) const;
  int other_end(int edge_idx, int node) const;
  // node id -> incident edge indexes (input order)
  std::map<int, std::vector<int>> adjacency() const;
  bool connected() const;
  // first edge (input order) joining a and b, -1 if none
  int first_edge_between(int a, int b) const;
};

// Alternating sequence v0, e1, v1, ..., ek, vk. Edges are stored as indexes
// into Network::edges so parallel edges stay unambiguous.
struct Walk {
  std::vector<int> vertices;
  std::vector<int> edge_idx;
  bool operator==(Walk const&) const = default;
  int length() const { return static_cast<int>(edge_idx.size()); }
};

enum class Impl { coherent, squeezed, entangled };
std::string to_string(Impl impl);
Impl impl_from_string(std::string const& s);

struct Probe {
  Walk walk;
  Impl impl = Impl::squeezed;
  int t = 1;  // pulses per block
  int c = 1;  // copies
  double N = 100.0;
  double Na = 0.558;
};

struct MeasurementMatrix {
  std::vector<std::string> row_ids;  // probe ids, input order
  std::vector<std::string> col_ids;  // edge ids, input order
  std::vector<std::vector<long long>> entries;
  std::size_t rows() const { return entries.size(); }
  std::size_t cols() const { return entries.empty() ? col_ids.size() : entries[0].size(); }
};

// Each violation is "rule-name: detail". Empty result means ok.
std::vector<std::string> validate_network(Network const& net);
std::vector<std::string> validate_walk(Walk const& w, Network const& net);
std::vector<std::string> validate_probe(Probe const& p, Network const& net);

std::set<int> walk_support(Walk const& w);                  // distinct edge indexes
std::map<int, long long> walk_multiset(Walk const& w);      // edge index -> multiplicity

// Rows follow probe order, columns follow net.edges order. Throws on invalid
// walks and on duplicate walks across probes (copies belong in Probe::c).
MeasurementMatrix measurement_matrix(std::vector<Probe> const& probes, Network const& net);

// Full column rank of A, decided exactly over the integers.
bool is_identifiable(MeasurementMatrix const& m);

// eta_P = product of eta_e over the walk, with multiplicity.
double probe_transmissivity(Probe const& p, Network const& net);

}  // namespace nettomo
