#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nettomo/fim.hpp"
#include "nettomo/network.hpp"
#include "nettomo/routing.hpp"
#include "nettomo/sim.hpp"
#include "nettomo/verify.hpp"

namespace nettomo {

using json = nlohmann::json;

// Throws "cannot-open-file: <path>" / propagates nlohmann parse errors.
std::string read_text_file(std::string const& path);
void write_text_file(std::string const& path, std::string const& content);

Network network_from_json(json const& j);
json network_to_json(Network const& net);
Network load_network(std::string const& path);

// Probes are written with walks as node-id lists; on the way back in each
// consecutive pair resolves to the first edge joining it (input order), so
// plans over parallel edges cannot round-trip through this format.
std::vector<Probe> plan_from_json(json const& j, Network const& net);
json plan_to_json(std::vector<Probe> const& plan);
std::vector<Probe> load_plan(std::string const& path, Network const& net);

json cover_to_json(SubgraphCover const& cover, Network const& net);
json fim_report_to_json(FimReport const& r);
json comparison_to_json(PlanComparison const& cmp);
json simulation_to_json(SimulationSummary const& s, Network const& net);
json verify_report_to_json(VerifyReport const& r);

}  // namespace nettomo
