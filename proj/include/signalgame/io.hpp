#ifndef SIGNALGAME_IO_HPP
#define SIGNALGAME_IO_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "signalgame/game.hpp"
#include "signalgame/graph.hpp"
#include "signalgame/security.hpp"

// File formats and serialization. Every file the library touches goes
// through open_input/open_output, which record the access in a process-wide
// audit log; tests use the log to prove that code paths never read files
// they must not (ground truth in particular).
namespace signalgame::io {

// Opens for reading/writing, throws std::runtime_error when the stream can't
// be opened, and appends "r <path>" / "w <path>" to the audit log.
std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

std::vector<std::string> audit_log();
void clear_audit_log();

// Plain-text graph: header "n m", then one "u v" line per edge with u < v,
// lexicographically sorted.
void save_graph_text(const std::string& path, const graph::Graph& g);

// Binary graph: magic "SGRB", little-endian uint64 n, then the upper
// triangle packed row-major (bit for (u,v), u < v, LSB-first within bytes).
void save_graph_binary(const std::string& path, const graph::Graph& g);

// Reads either format, sniffing the magic bytes.
graph::Graph load_graph(const std::string& path);

struct TruthFile {
  graph::PlantedCoverParams params;
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> cliques;
  std::uint64_t background_edge_count = 0;
};

void save_truth(const std::string& path,
                const graph::PlantedCoverInstance& instance);
TruthFile load_truth(const std::string& path);

// Explicit game: {r, c, M, prior, payoffs} with payoffs[theta][i][j].
game::BayesianZeroSumGame load_game(const std::string& path);
void save_game(const std::string& path, const game::BayesianZeroSumGame& g);

// Scheme: {M, signals, phi} with phi row-major M x signals.
game::SignalingScheme load_scheme(const std::string& path);
void save_scheme(const std::string& path, const game::SignalingScheme& s);

// Decomposition: {alpha, posteriors}. The prior is context the caller
// attaches afterwards (files do not embed it).
game::ConvexDecomposition load_decomposition(const std::string& path);
void save_decomposition(const std::string& path,
                        const game::ConvexDecomposition& dec);

// Parse the already-loaded JSON forms (callers that sniff file kinds by key
// reuse these; the load_* functions above wrap them).
game::SignalingScheme scheme_from_json(const nlohmann::json& j);
game::ConvexDecomposition decomposition_from_json(const nlohmann::json& j);

nlohmann::json load_json(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

nlohmann::json equilibrium_to_json(const security::EquilibriumResult& r);

// Shortest round-trip decimal form (std::to_chars), used everywhere numbers
// land in CSV so outputs are byte-stable across platforms.
std::string format_double(double v);

}  // namespace signalgame::io

#endif  // SIGNALGAME_IO_HPP
