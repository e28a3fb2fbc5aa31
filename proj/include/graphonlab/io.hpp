#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "graphonlab/core.hpp"
#include "graphonlab/cutmetric.hpp"
#include "graphonlab/regularity.hpp"
#include "graphonlab/upperreg.hpp"

namespace graphonlab::io {

using nlohmann::json;

// #weighted-graph v1
// v <id> <weight>      optional; vertices without a v line get weight 1
// e <i> <j> <weight>
WeightedGraph parse_graph_tsv(std::istream& in);
void write_graph_tsv(std::ostream& out, const WeightedGraph& G);

json to_json(const StepGraphon& W);
StepGraphon graphon_from_json(const json& j);
json to_json(const Partition& P);
Partition partition_from_json(const json& j);
json to_json(const CutResult& r);
json to_json(const RegularityVerdict& v);
json to_json(const RegularityReport& r);

using Object = std::variant<WeightedGraph, StepGraphon>;
// A file starting with "#weighted-graph" is a graph, anything else must be graphon JSON.
Object load(const std::string& path);
WeightedGraph load_graph(const std::string& path);
void save_json(const std::string& path, const json& j);

}  // namespace graphonlab::io
