#ifndef SEMICLIQUE_IO_H_
#define SEMICLIQUE_IO_H_

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "semiclique/generators.h"
#include "semiclique/graph.h"

namespace semiclique {

using Json = nlohmann::json;

// Edge-list text: header "n m" then m lines "u v" (0-based).
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);

// Bipartite edge-list text: header "k m e" then e lines "left right".
void write_bipartite_edge_list(std::ostream& os, const BipartiteGraph& h);
BipartiteGraph read_bipartite_edge_list(std::istream& is, double p = 0.5);

Json plan_to_json(const AdversaryPlan& plan);
AdversaryPlan plan_from_json(const Json& j);

// Instance files keep the planted set under "solution" so that loading the
// graph never touches it; evaluation reads it separately.
Json instance_to_json(const FKInstance& inst);
Graph graph_from_instance_json(const Json& j);
std::optional<VertexSet> planted_from_instance_json(const Json& j);
FKInstance instance_from_json(const Json& j);

Json bipartite_to_json(const BipartiteGraph& h);
BipartiteGraph bipartite_from_json(const Json& j);

// Loads a graph from either a JSON instance or an edge-list text file,
// chosen by the file extension (.json vs anything else).
Graph load_graph(const std::string& path);
BipartiteGraph load_bipartite(const std::string& path, double p = 0.5);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace semiclique

#endif  // SEMICLIQUE_IO_H_
