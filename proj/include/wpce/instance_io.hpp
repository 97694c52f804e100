#ifndef WPCE_INSTANCE_IO_HPP
#define WPCE_INSTANCE_IO_HPP

#include <filesystem>
#include <string>

#include "wpce/maxcut_graph.hpp"
#include "wpce/qubo.hpp"
#include "wpce/tsp.hpp"

namespace wpce::io {

// File schemas (all indices 0-based):
//   TSP    {"n": int, "distances": [[...], ...]}
//   graph  {"nodes": int, "edges": [[i, j, w], ...]}
//   QUBO   {"variables": int, "offset": real, "terms": [[i, j, q], ...]}  (i == j is linear)

problems::TspInstance tsp_from_json(const std::string& text);
std::string tsp_to_json(const problems::TspInstance& instance);

problems::MaxCutGraph graph_from_json(const std::string& text);
std::string graph_to_json(const problems::MaxCutGraph& graph);

problems::QuboProblem qubo_from_json(const std::string& text);
std::string qubo_to_json(const problems::QuboProblem& qubo);

/// "tsp", "graph" or "qubo", judged by the keys present.
std::string detect_kind(const std::string& text);

std::string read_file(const std::filesystem::path& path);
/// Creates parent directories; throws IoError naming the path on failure.
void write_file(const std::filesystem::path& path, const std::string& contents);

} // namespace wpce::io

#endif // WPCE_INSTANCE_IO_HPP
