#include "nettomo/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nettomo {

namespace {

[[noreturn]] void bad(std::string const& what) { throw std::runtime_error(what); }

json const& need(json const& j, char const* key, char const* where) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("json-missing-field: ") + where + "." + key);
  return *it;
}

std::string id_string(json const& j, char const* where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  bad(std::string("json-bad-field: ") + where + " must be a string");
}

}  // namespace

std::string read_text_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot-open-file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(std::string const& path, std::string const& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot-open-file: " + path);
  out << content;
  if (!out) bad("write-failed: " + path);
}

Network network_from_json(json const& j) {
  Network net;
  for (auto const& n : need(j, "nodes", "network")) {
    if (!n.is_number_integer()) bad("json-bad-field: network.nodes must be integers");
    net.nodes.push_back(n.get<int>());
  }
  for (auto const& m : need(j, "monitors", "network")) {
    if (!m.is_number_integer()) bad("json-bad-field: network.monitors must be integers");
    net.monitors.push_back(m.get<int>());
  }
  for (auto const& ej : need(j, "edges", "network")) {
    Edge e;
    e.id = id_string(need(ej, "id", "edge"), "edge.id");
    e.u = need(ej, "u", "edge").get<int>();
    e.v = need(ej, "v", "edge").get<int>();
    if (auto it = ej.find("eta"); it != ej.end() && !it->is_null()) e.eta = it->get<double>();
    net.edges.push_back(std::move(e));
  }
  return net;
}

json network_to_json(Network const& net) {
  json edges = json::array();
  for (auto const& e : net.edges) {
    json ej{{"id", e.id}, {"u", e.u}, {"v", e.v}};
    if (e.eta) ej["eta"] = *e.eta;
    edges.push_back(std::move(ej));
  }
  return json{{"nodes", net.nodes}, {"monitors", net.monitors}, {"edges", edges}};
}

Network load_network(std::string const& path) {
  Network net = network_from_json(json::parse(read_text_file(path)));
  auto violations = validate_network(net);
  if (!violations.empty()) {
    std::string msg = "invalid-network: " + path;
    for (auto const& v : violations) msg += "\n  " + v;
    bad(msg);
  }
  return net;
}

std::vector<Probe> plan_from_json(json const& j, Network const& net) {
  if (!j.is_array()) bad("json-bad-field: plan must be an array of probes");
  std::vector<Probe> plan;
  for (auto const& pj : j) {
    Probe p;
    json const& walk = need(pj, "walk", "probe");
    if (!walk.is_array() || walk.size() < 2)
      bad("json-bad-field: probe.walk needs at least two node ids");
    for (auto const& n : walk) p.walk.vertices.push_back(n.get<int>());
    for (std::size_t i = 0; i + 1 < p.walk.vertices.size(); ++i) {
      int a = p.walk.vertices[i], b = p.walk.vertices[i + 1];
      int e = net.first_edge_between(a, b);
      if (e < 0)
        bad("plan-walk-no-edge: no edge joins " + std::to_string(a) + " and " + std::to_string(b));
      p.walk.edge_idx.push_back(e);
    }
    if (auto it = pj.find("impl"); it != pj.end()) p.impl = impl_from_string(it->get<std::string>());
    if (auto it = pj.find("t"); it != pj.end()) p.t = it->get<int>();
    if (auto it = pj.find("c"); it != pj.end()) p.c = it->get<int>();
    if (auto it = pj.find("N"); it != pj.end()) p.N = it->get<double>();
    if (auto it = pj.find("Na"); it != pj.end()) p.Na = it->get<double>();
    plan.push_back(std::move(p));
  }
  return plan;
}

json plan_to_json(std::vector<Probe> const& plan) {
  json out = json::array();
  for (auto const& p : plan)
    out.push_back(json{{"walk", p.walk.vertices},
                       {"impl", to_string(p.impl)},
                       {"t", p.t},
                       {"c", p.c},
                       {"N", p.N},
                       {"Na", p.Na}});
  return out;
}

std::vector<Probe> load_plan(std::string const& path, Network const& net) {
  return plan_from_json(json::parse(read_text_file(path)), net);
}

json cover_to_json(SubgraphCover const& cover, Network const& net) {
  json subs = json::array();
  for (auto const& sg : cover.subgraphs) {
    json edges = json::array();
    for (int e : sg.edges) edges.push_back(net.edges[e].id);
    json probes = json::array();
    for (int p : sg.probe_idx) probes.push_back("P" + std::to_string(p + 1));
    subs.push_back(json{{"vertices", std::vector<int>(sg.vertices.begin(), sg.vertices.end())},
                        {"edges", edges},
                        {"probes", probes}});
  }
  int bound = cover_bound(net);
  int count = static_cast<int>(cover.subgraphs.size());
  return json{{"subgraphs", subs},
              {"count", count},
              {"bound", bound},
              {"attains_bound", count == bound}};
}

json fim_report_to_json(FimReport const& r) {
  json per_probe = json::array();
  for (auto const& pc : r.per_probe)
    per_probe.push_back(json{{"probe", pc.probe_id},
                             {"eta_P", pc.eta_P},
                             {"fi", pc.fi},
                             {"copies", pc.copies}});
  json rows = json::array();
  for (Eigen::Index i = 0; i < r.fim.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < r.fim.cols(); ++k) row.push_back(r.fim(i, k));
    rows.push_back(std::move(row));
  }
  json out{{"identifiable", r.identifiable},
           {"lemma_applicable", r.lemma_applicable},
           {"det", r.det},
           {"per_probe", per_probe},
           {"edges", r.matrix.col_ids},
           {"fim", rows}};
  // trace of a singular-FIM inverse is meaningless; keep the field honest
  if (r.identifiable) out["trace_inv"] = r.trace_inv;
  if (r.lemma_applicable) {
    out["det_closed"] = r.det_closed;
    out["trace_inv_closed"] = r.trace_inv_closed;
    out["det_rel_discrepancy"] = r.det_rel_discrepancy;
    out["trace_inv_rel_discrepancy"] = r.trace_inv_rel_discrepancy;
  }
  return out;
}

json comparison_to_json(PlanComparison const& cmp) {
  return json{{"det_ratio", cmp.det_ratio},
              {"det_ratio_closed", cmp.det_ratio_closed},
              {"trace_inv_delta", cmp.trace_inv_delta},
              {"trace_delta_weighted", cmp.trace_delta_weighted},
              {"a", fim_report_to_json(cmp.a)},
              {"b", fim_report_to_json(cmp.b)}};
}

json simulation_to_json(SimulationSummary const& s, Network const& net) {
  json edges = json::array();
  for (std::size_t i = 0; i < s.true_eta.size(); ++i)
    edges.push_back(json{{"id", net.edges[i].id},
                         {"true_eta", s.true_eta[i]},
                         {"mean_estimate", s.mean_estimate[i]},
                         {"bias", s.bias[i]},
                         {"variance", s.variance[i]},
                         {"crb", s.crb_diag[i]}});
  return json{{"seed", s.seed},
              {"trials", s.trials},
              {"converged_trials", s.converged_trials},
              {"edges", edges},
              {"empirical_total_variance", s.empirical_total_variance},
              {"crb_trace", s.crb_trace},
              {"variance_to_crb_ratio", s.ratio}};
}

json verify_report_to_json(VerifyReport const& r) {
  json checks = json::array();
  for (auto const& c : r.checks)
    checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return json{{"checks", checks}, {"all_pass", r.all_pass()}};
}

}  // namespace nettomo
