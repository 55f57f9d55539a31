#include <doctest.h>

#include "nettomo/intlinalg.hpp"
#include "nettomo/json_io.hpp"
#include "nettomo/network.hpp"

using namespace nettomo;

namespace {

Network demo() {
  return load_network(std::string(NETTOMO_DATA_DIR) + "/demo_net.json");
}

bool has_violation(std::vector<std::string> const& v, std::string const& rule) {
  for (auto const& s : v)
    if (s.rfind(rule, 0) == 0) return true;
  return false;
}

Walk walk_of(Network const& net, std::vector<int> vertices) {
  Walk w;
  w.vertices = std::move(vertices);
  for (std::size_t i = 0; i + 1 < w.vertices.size(); ++i)
    w.edge_idx.push_back(net.first_edge_between(w.vertices[i], w.vertices[i + 1]));
  return w;
}

}  // namespace

TEST_CASE("network validation catches each malformed input") {
  Network net = demo();
  CHECK(validate_network(net).empty());

  SUBCASE("no nodes") {
    Network bad;
    CHECK(has_violation(validate_network(bad), "no-nodes"));
  }
  SUBCASE("duplicate node id") {
    net.nodes.push_back(3);
    CHECK(has_violation(validate_network(net), "duplicate-node-id"));
  }
  SUBCASE("duplicate edge id") {
    net.edges.push_back(net.edges[0]);
    CHECK(has_violation(validate_network(net), "duplicate-edge-id"));
  }
  SUBCASE("edge endpoint not a node") {
    net.edges[2].v = 77;
    CHECK(has_violation(validate_network(net), "edge-endpoint-unknown"));
  }
  SUBCASE("self loop") {
    net.edges[0].v = net.edges[0].u;
    CHECK(has_violation(validate_network(net), "self-loop"));
  }
  SUBCASE("transmissivity out of range") {
    net.edges[1].eta = 1.5;
    CHECK(has_violation(validate_network(net), "transmissivity-out-of-range"));
    net.edges[1].eta = 0.0;
    CHECK(has_violation(validate_network(net), "transmissivity-out-of-range"));
  }
  SUBCASE("no monitors") {
    net.monitors.clear();
    CHECK(has_violation(validate_network(net), "no-monitors"));
  }
  SUBCASE("monitor not a node") {
    net.monitors.push_back(42);
    CHECK(has_violation(validate_network(net), "monitor-not-a-node"));
  }
  SUBCASE("disconnected graph") {
    net.nodes.push_back(9);  // isolated vertex
    CHECK(has_violation(validate_network(net), "graph-disconnected"));
  }
}

TEST_CASE("walk validation") {
  Network net = demo();

  Walk good = walk_of(net, {1, 2, 3, 2, 1});
  CHECK(validate_walk(good, net).empty());

  SUBCASE("empty") {
    Walk w;
    CHECK(has_violation(validate_walk(w, net), "walk-empty"));
  }
  SUBCASE("vertex/edge count mismatch") {
    Walk w = good;
    w.edge_idx.pop_back();
    CHECK(has_violation(validate_walk(w, net), "walk-malformed"));
  }
  SUBCASE("unknown edge index") {
    Walk w = good;
    w.edge_idx[1] = 99;
    CHECK(has_violation(validate_walk(w, net), "walk-unknown-edge"));
  }
  SUBCASE("edge not incident to the step") {
    Walk w = good;
    w.edge_idx[1] = 3;  // e4 joins 4-5, not 2-3
    CHECK(has_violation(validate_walk(w, net), "walk-not-incident"));
  }
  SUBCASE("endpoints must be monitors") {
    Walk w = walk_of(net, {2, 3});
    CHECK(has_violation(validate_walk(w, net), "walk-endpoint-not-monitor"));
  }
}

TEST_CASE("probe validation") {
  Network net = demo();
  Probe p;
  p.walk = walk_of(net, {1, 2, 1});
  CHECK(validate_probe(p, net).empty());

  SUBCASE("copies must be positive") {
    p.c = 0;
    CHECK(has_violation(validate_probe(p, net), "probe-copies-invalid"));
  }
  SUBCASE("block size must be positive") {
    p.impl = Impl::entangled;
    p.t = 0;
    CHECK(has_violation(validate_probe(p, net), "probe-block-size-invalid"));
  }
  SUBCASE("only entangled probes use multi-pulse blocks") {
    p.t = 3;
    CHECK(has_violation(validate_probe(p, net), "probe-block-size-invalid"));
    p.impl = Impl::entangled;
    CHECK(validate_probe(p, net).empty());
  }
  SUBCASE("energy must be non-negative") {
    p.N = -1.0;
    CHECK(has_violation(validate_probe(p, net), "probe-energy-invalid"));
    p.N = 0.0;  // a squeezed vacuum probe is legitimate
    CHECK(validate_probe(p, net).empty());
  }
  SUBCASE("quantum probes need ancilla energy") {
    p.Na = 0.0;
    CHECK(has_violation(validate_probe(p, net), "probe-energy-invalid"));
    p.impl = Impl::coherent;
    CHECK(validate_probe(p, net).empty());
  }
}

TEST_CASE("walk support and multiset") {
  Network net = demo();
  Walk w = walk_of(net, {1, 2, 3, 2, 1});  // e1 e2 e2 e1

  std::set<int> support = walk_support(w);
  CHECK(support == std::set<int>{0, 1});

  std::map<int, long long> multi = walk_multiset(w);
  CHECK(multi[0] == 2);
  CHECK(multi[1] == 2);
}

TEST_CASE("measurement matrix layout and duplicate rejection") {
  Network net = demo();
  std::vector<Probe> plan = load_plan(std::string(NETTOMO_DATA_DIR) + "/demo_plan.json", net);

  MeasurementMatrix m = measurement_matrix(plan, net);
  REQUIRE(m.rows() == 6);
  REQUIRE(m.cols() == 6);
  CHECK(m.row_ids[0] == "P1");
  CHECK(m.col_ids == std::vector<std::string>{"e1", "e2", "e3", "e4", "e5", "e6"});
  CHECK(m.entries[0] == std::vector<long long>{2, 0, 0, 0, 0, 0});
  CHECK(m.entries[1] == std::vector<long long>{2, 2, 0, 0, 0, 0});
  CHECK(m.entries[2] == std::vector<long long>{0, 0, 2, 2, 0, 0});
  CHECK(m.entries[3] == std::vector<long long>{0, 0, 0, 2, 0, 0});
  CHECK(m.entries[4] == std::vector<long long>{2, 0, 0, 0, 2, 0});
  CHECK(m.entries[5] == std::vector<long long>{0, 0, 0, 0, 0, 1});

  plan.push_back(plan[2]);  // same walk again: copies belong in Probe::c
  CHECK_THROWS_WITH_AS(measurement_matrix(plan, net), doctest::Contains("duplicate-walk"),
                       std::invalid_argument);
}

TEST_CASE("identifiability is decided exactly") {
  Network net = demo();
  std::vector<Probe> plan = load_plan(std::string(NETTOMO_DATA_DIR) + "/demo_plan.json", net);
  CHECK(is_identifiable(measurement_matrix(plan, net)));

  SUBCASE("fewer probes than edges") {
    plan.pop_back();
    CHECK_FALSE(is_identifiable(measurement_matrix(plan, net)));
  }
  SUBCASE("proportional rows on a two-edge multigraph") {
    Network multi;
    multi.nodes = {1, 2};
    multi.edges = {{"a", 1, 2, {}}, {"b", 1, 2, {}}};
    multi.monitors = {1};
    Probe once, twice;
    once.walk = {{1, 2, 1}, {0, 1}};
    twice.walk = {{1, 2, 1, 2, 1}, {0, 1, 0, 1}};
    // rows (1,1) and (2,2) have rank 1, which a float tolerance could misjudge
    CHECK_FALSE(is_identifiable(measurement_matrix({once, twice}, multi)));
  }
}

TEST_CASE("exact integer elimination") {
  Network net = demo();
  std::vector<Probe> plan = load_plan(std::string(NETTOMO_DATA_DIR) + "/demo_plan.json", net);
  MeasurementMatrix m = measurement_matrix(plan, net);

  bigint det = exact_det(m.entries);
  CHECK((det == 32 || det == -32));
  CHECK(det * det == 1024);

  CHECK(exact_rank(m.entries) == 6);
  CHECK_THROWS_AS(exact_det({{1, 2, 3}, {4, 5, 6}}), std::invalid_argument);
  CHECK(exact_rank({{1, 1}, {2, 2}}) == 1);
}

TEST_CASE("probe transmissivity multiplies with multiplicity") {
  Network net = demo();
  Probe p;
  p.walk = walk_of(net, {1, 2, 3, 2, 1});
  CHECK(probe_transmissivity(p, net) == doctest::Approx(0.9 * 0.9 * 0.85 * 0.85).epsilon(1e-14));

  net.edges[0].eta.reset();
  CHECK_THROWS_WITH_AS(probe_transmissivity(p, net), doctest::Contains("missing-transmissivity"),
                       std::invalid_argument);
}

TEST_CASE("impl names round-trip") {
  for (Impl i : {Impl::coherent, Impl::squeezed, Impl::entangled})
    CHECK(impl_from_string(to_string(i)) == i);
  CHECK_THROWS_AS(impl_from_string("thermal"), std::invalid_argument);
}

TEST_CASE("network json round-trip keeps edge order and optional eta") {
  Network net = demo();
  net.edges[3].eta.reset();
  Network back = network_from_json(network_to_json(net));
  CHECK(back.nodes == net.nodes);
  CHECK(back.monitors == net.monitors);
  REQUIRE(back.edges.size() == net.edges.size());
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    CHECK(back.edges[i].id == net.edges[i].id);
    CHECK(back.edges[i].eta == net.edges[i].eta);
  }
}
