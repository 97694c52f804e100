#include "wpce/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wpce/errors.hpp"

namespace wpce::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InstanceError(std::string("invalid JSON: ") + e.what());
    }
}

template <typename T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw InstanceError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InstanceError(std::string("bad field \"") + key + "\": " + e.what());
    }
}

} // namespace

problems::TspInstance tsp_from_json(const std::string& text) {
    const json j = parse(text);
    const int n = field<int>(j, "n");
    const auto rows = field<std::vector<std::vector<double>>>(j, "distances");
    if (rows.size() != static_cast<std::size_t>(n)) throw InstanceError("distances must have n rows");
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
        if (row.size() != static_cast<std::size_t>(n)) throw InstanceError("distances must have n columns");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return problems::TspInstance(n, std::move(flat));
}

std::string tsp_to_json(const problems::TspInstance& instance) {
    const int n = instance.cities();
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int k = 0; k < n; ++k) row.push_back(instance.distance(i, k));
        rows.push_back(std::move(row));
    }
    json j;
    j["n"] = n;
    j["distances"] = std::move(rows);
    return j.dump(2) + "\n";
}

problems::MaxCutGraph graph_from_json(const std::string& text) {
    const json j = parse(text);
    const int nodes = field<int>(j, "nodes");
    std::vector<problems::Edge> edges;
    for (const auto& e : field<json>(j, "edges")) {
        if (!e.is_array() || e.size() != 3) throw InstanceError("each edge must be [i, j, w]");
        edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    return problems::MaxCutGraph(nodes, std::move(edges));
}

std::string graph_to_json(const problems::MaxCutGraph& graph) {
    json edges = json::array();
    for (const auto& e : graph.edges()) edges.push_back(json::array({e.u, e.v, e.weight}));
    json j;
    j["nodes"] = graph.nodes();
    j["edges"] = std::move(edges);
    return j.dump(2) + "\n";
}

problems::QuboProblem qubo_from_json(const std::string& text) {
    const json j = parse(text);
    problems::QuboProblem q(field<int>(j, "variables"), j.value("offset", 0.0));
    for (const auto& t : field<json>(j, "terms")) {
        if (!t.is_array() || t.size() != 3) throw InstanceError("each term must be [i, j, q]");
        const int a = t[0].get<int>();
        const int b = t[1].get<int>();
        if (a < 0 || b < 0 || a >= q.size() || b >= q.size()) throw InstanceError("term index out of range");
        q.add(a, b, t[2].get<double>());
    }
    return q;
}

std::string qubo_to_json(const problems::QuboProblem& qubo) {
    json terms = json::array();
    for (int i = 0; i < qubo.size(); ++i) {
        for (int k = i; k < qubo.size(); ++k) {
            const double c = qubo.coefficient(i, k);
            if (c != 0.0) terms.push_back(json::array({i, k, c}));
        }
    }
    json j;
    j["variables"] = qubo.size();
    j["offset"] = qubo.offset();
    j["terms"] = std::move(terms);
    return j.dump(2) + "\n";
}

std::string detect_kind(const std::string& text) {
    const json j = parse(text);
    if (j.contains("distances")) return "tsp";
    if (j.contains("edges")) return "graph";
    if (j.contains("terms")) return "qubo";
    throw InstanceError("unrecognized instance file");
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << contents;
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace wpce::io
