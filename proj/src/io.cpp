#include "graphonlab/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace graphonlab::io {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

WeightedGraph parse_graph_tsv(std::istream& in) {
    std::string line;
    std::size_t no = 0;
    if (!std::getline(in, line)) throw Error(ErrorKind::parse, "empty graph file");
    ++no;
    if (line.rfind("#weighted-graph v1", 0) != 0) fail(no, "expected header '#weighted-graph v1'");
    std::map<std::size_t, double> weights;
    std::vector<Edge> edges;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "v") {
            long long id;
            double w;
            if (!(ls >> id >> w) || id < 0) fail(no, "expected 'v <id> <weight>'");
            if (!(w > 0.0)) fail(no, "vertex weight must be positive");
            if (!weights.emplace(static_cast<std::size_t>(id), w).second) fail(no, "duplicate vertex");
            n = std::max(n, static_cast<std::size_t>(id) + 1);
        } else if (kind == "e") {
            long long i, j;
            double w;
            if (!(ls >> i >> j >> w) || i < 0 || j < 0) fail(no, "expected 'e <i> <j> <weight>'");
            if (!std::isfinite(w)) fail(no, "edge weight must be finite");
            edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), w});
            n = std::max({n, static_cast<std::size_t>(i) + 1, static_cast<std::size_t>(j) + 1});
        } else {
            fail(no, "unknown record '" + kind + "'");
        }
        std::string extra;
        if (ls >> extra) fail(no, "trailing field '" + extra + "'");
    }
    if (n == 0) throw Error(ErrorKind::parse, "graph has no vertices");
    std::vector<double> alpha(n, 1.0);
    for (auto [id, w] : weights) alpha[id] = w;
    return WeightedGraph(std::move(alpha), std::move(edges));
}

void write_graph_tsv(std::ostream& out, const WeightedGraph& G) {
    out << "#weighted-graph v1\n" << std::setprecision(17);
    for (std::size_t i = 0; i < G.size(); ++i) out << "v\t" << i << '\t' << G.vertex_weights()[i] << '\n';
    for (const auto& e : G.edges()) out << "e\t" << e.i << '\t' << e.j << '\t' << e.w << '\n';
}

json to_json(const StepGraphon& W) {
    json rows = json::array();
    for (std::size_t i = 0; i < W.size(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < W.size(); ++j) r.push_back(W.value(i, j));
        rows.push_back(std::move(r));
    }
    return {{"type", "step_graphon"}, {"lengths", W.lengths()}, {"values", rows}};
}

StepGraphon graphon_from_json(const json& j) {
    try {
        if (j.value("type", std::string("step_graphon")) != "step_graphon")
            throw Error(ErrorKind::parse, "unknown object type");
        const auto len = j.at("lengths").get<std::vector<double>>();
        const auto& rows = j.at("values");
        if (rows.size() != len.size()) throw Error(ErrorKind::parse, "values must be lengths.size() rows");
        std::vector<double> vals;
        for (const auto& r : rows) {
            auto row = r.get<std::vector<double>>();
            if (row.size() != len.size()) throw Error(ErrorKind::parse, "values must be square");
            vals.insert(vals.end(), row.begin(), row.end());
        }
        return StepGraphon(len, std::move(vals));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::parse, std::string("graphon JSON: ") + e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::invalid_argument) throw Error(ErrorKind::parse, e.what());
        throw;
    }
}

json to_json(const Partition& P) {
    return {{"classes", P.classes()}, {"labels", P.labels()}, {"measures", P.measures()}, {"base", P.base()}};
}

Partition partition_from_json(const json& j) {
    try {
        return Partition(j.at("base").get<std::vector<double>>(), j.at("labels").get<std::vector<std::size_t>>());
    } catch (const json::exception& e) {
        throw Error(ErrorKind::parse, std::string("partition JSON: ") + e.what());
    }
}

json to_json(const CutResult& r) {
    return {{"lower", r.lower},
            {"upper", r.upper},
            {"method", r.method == CutMethod::exact ? "exact" : "alternating"},
            {"witness", {{"S", r.witness.S}, {"T", r.witness.T}, {"value", r.witness.value}}}};
}

json to_json(const RegularityVerdict& v) {
    json j{{"status", to_string(v.status)}, {"worst_value", v.worst_value}, {"admissible", v.admissible}};
    if (!v.reason.empty()) j["reason"] = v.reason;
    if (v.certificate) j["certificate"] = to_json(*v.certificate);
    return j;
}

json to_json(const RegularityReport& r) {
    json trace = json::array();
    for (const auto& t : r.trace)
        trace.push_back({{"witness", t.witness},
                         {"energy", t.energy},
                         {"rounded_S", t.rounded_S},
                         {"rounded_T", t.rounded_T},
                         {"parts", t.parts}});
    return {{"parts", r.partition.classes()},
            {"error_cut", r.error_cut},
            {"error_lower", r.error_lower},
            {"target", r.target},
            {"certified", r.certified},
            {"iterations", r.iterations},
            {"min_part_measure", r.partition.min_measure()},
            {"trace", trace}};
}

Object load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
    std::string head;
    std::getline(in, head);
    in.clear();
    in.seekg(0);
    if (head.rfind("#weighted-graph", 0) == 0) return parse_graph_tsv(in);
    json j;
    try {
        in >> j;
    } catch (const json::exception&) {
        throw Error(ErrorKind::parse, path + ": neither a graph TSV nor graphon JSON");
    }
    return graphon_from_json(j);
}

WeightedGraph load_graph(const std::string& path) {
    auto obj = load(path);
    if (!std::holds_alternative<WeightedGraph>(obj)) throw Error(ErrorKind::parse, path + " is not a graph");
    return std::get<WeightedGraph>(obj);
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace graphonlab::io
