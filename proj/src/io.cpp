#include "signalgame/io.hpp"

#include <bit>
#include <charconv>
#include <cstddef>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace signalgame::io {

namespace {

std::mutex g_audit_mutex;
std::vector<std::string> g_audit;  // "r <path>" / "w <path>", in open order

void record(char mode, const std::string& path) {
  std::lock_guard<std::mutex> lock(g_audit_mutex);
  g_audit.push_back(std::string(1, mode) + " " + path);
}

[[noreturn]] void fail(const std::string& what, const std::string& path) {
  throw std::runtime_error(what + ": " + path);
}

}  // namespace

std::ifstream open_input(const std::string& path) {
  record('r', path);
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open for reading", path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  record('w', path);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot open for writing", path);
  return out;
}

std::vector<std::string> audit_log() {
  std::lock_guard<std::mutex> lock(g_audit_mutex);
  return g_audit;
}

void clear_audit_log() {
  std::lock_guard<std::mutex> lock(g_audit_mutex);
  g_audit.clear();
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, res.ptr);
}

void save_graph_text(const std::string& path, const graph::Graph& g) {
  std::ofstream out = open_output(path);
  out << g.n() << ' ' << g.edge_count() << '\n';
  const int n = g.n();
  const std::size_t words = g.row_words();
  for (int u = 0; u < n; ++u) {
    const std::uint64_t* row = g.row(u);
    for (std::size_t w = static_cast<std::size_t>(u) / 64; w < words; ++w) {
      std::uint64_t bits = row[w];
      if (w == static_cast<std::size_t>(u) / 64) {
        // Only columns strictly above u; the lower mirror is implied.
        const unsigned shift = static_cast<unsigned>(u % 64);
        bits &= shift == 63 ? 0ULL : ~((2ULL << shift) - 1);
      }
      while (bits) {
        const int v = static_cast<int>(w * 64) + std::countr_zero(bits);
        bits &= bits - 1;
        out << u << ' ' << v << '\n';
      }
    }
  }
  if (!out) fail("write failed", path);
}

namespace {

graph::Graph load_graph_text_body(std::istream& in, const std::string& path) {
  long long n = 0, m = 0;
  if (!(in >> n >> m) || n < 0 || m < 0)
    fail("graph text: bad header", path);
  graph::Graph g(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) fail("graph text: truncated edge list", path);
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      fail("graph text: edge out of range", path);
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  if (g.edge_count() != static_cast<std::uint64_t>(m))
    fail("graph text: duplicate edges", path);
  return g;
}

constexpr char kMagic[4] = {'S', 'G', 'R', 'B'};

graph::Graph load_graph_binary_body(std::istream& in, const std::string& path) {
  char magic[4];
  in.read(magic, 4);
  if (!in || !std::equal(magic, magic + 4, kMagic))
    fail("graph binary: bad magic", path);
  unsigned char lenbuf[8];
  in.read(reinterpret_cast<char*>(lenbuf), 8);
  if (!in) fail("graph binary: truncated header", path);
  std::uint64_t n = 0;
  for (int i = 7; i >= 0; --i) n = (n << 8) | lenbuf[i];
  if (n > (1ULL << 31)) fail("graph binary: implausible n", path);
  graph::Graph g(static_cast<int>(n));
  const std::uint64_t pairs = n * (n - (n ? 1 : 0)) / 2;
  const std::uint64_t bytes = (pairs + 7) / 8;
  std::vector<char> packed(static_cast<std::size_t>(bytes));
  in.read(packed.data(), static_cast<std::streamsize>(bytes));
  if (static_cast<std::uint64_t>(in.gcount()) != bytes)
    fail("graph binary: truncated bitset", path);
  std::uint64_t bit = 0;
  for (std::uint64_t u = 0; u + 1 < n; ++u)
    for (std::uint64_t v = u + 1; v < n; ++v, ++bit)
      if ((static_cast<unsigned char>(packed[bit / 8]) >> (bit % 8)) & 1)
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
  return g;
}

}  // namespace

void save_graph_binary(const std::string& path, const graph::Graph& g) {
  std::ofstream out = open_output(path);
  out.write(kMagic, 4);
  const std::uint64_t n = static_cast<std::uint64_t>(g.n());
  unsigned char lenbuf[8];
  for (int i = 0; i < 8; ++i) lenbuf[i] = static_cast<unsigned char>(n >> (8 * i));
  out.write(reinterpret_cast<const char*>(lenbuf), 8);
  std::vector<char> packed;
  packed.reserve(static_cast<std::size_t>(n * (n ? n - 1 : 0) / 2 / 8 + 1));
  unsigned char cur = 0;
  int filled = 0;
  for (int u = 0; u + 1 < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v) {
      if (g.edge(u, v)) cur |= static_cast<unsigned char>(1u << filled);
      if (++filled == 8) {
        packed.push_back(static_cast<char>(cur));
        cur = 0;
        filled = 0;
      }
    }
  if (filled) packed.push_back(static_cast<char>(cur));
  out.write(packed.data(), static_cast<std::streamsize>(packed.size()));
  if (!out) fail("write failed", path);
}

graph::Graph load_graph(const std::string& path) {
  std::ifstream in = open_input(path);
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  in.clear();
  in.seekg(0);
  if (std::equal(magic, magic + 4, kMagic))
    return load_graph_binary_body(in, path);
  return load_graph_text_body(in, path);
}

void save_truth(const std::string& path,
                const graph::PlantedCoverInstance& instance) {
  nlohmann::json j;
  j["params"] = {{"n", instance.params.n},
                 {"p", instance.params.p},
                 {"k", instance.params.k},
                 {"r", instance.params.r}};
  j["seed"] = instance.seed;
  j["cliques"] = instance.planted_cliques;
  j["background_edge_count"] = instance.background_edge_count();
  save_json(path, j);
}

TruthFile load_truth(const std::string& path) {
  const nlohmann::json j = load_json(path);
  TruthFile t;
  t.params.n = j.at("params").at("n").get<int>();
  t.params.p = j.at("params").at("p").get<double>();
  t.params.k = j.at("params").at("k").get<int>();
  t.params.r = j.at("params").at("r").get<int>();
  t.seed = j.at("seed").get<std::uint64_t>();
  t.cliques = j.at("cliques").get<std::vector<std::vector<int>>>();
  t.background_edge_count = j.at("background_edge_count").get<std::uint64_t>();
  if (static_cast<int>(t.cliques.size()) != t.params.r)
    fail("truth: clique count disagrees with r", path);
  return t;
}

game::BayesianZeroSumGame load_game(const std::string& path) {
  const nlohmann::json j = load_json(path);
  game::BayesianZeroSumGame g;
  g.rows = j.at("r").get<int>();
  g.cols = j.at("c").get<int>();
  g.num_states = j.at("M").get<int>();
  g.prior = j.at("prior").get<std::vector<double>>();
  const auto& payoffs = j.at("payoffs");
  if (!payoffs.is_array() ||
      static_cast<int>(payoffs.size()) != g.num_states)
    fail("game: payoffs must hold one matrix per state", path);
  for (const auto& mat : payoffs) {
    Matrix m(g.rows, g.cols);
    if (static_cast<int>(mat.size()) != g.rows)
      fail("game: payoff matrix has wrong row count", path);
    for (int i = 0; i < g.rows; ++i) {
      const auto row = mat.at(i).get<std::vector<double>>();
      if (static_cast<int>(row.size()) != g.cols)
        fail("game: payoff matrix has wrong column count", path);
      for (int jx = 0; jx < g.cols; ++jx) m.at(i, jx) = row[jx];
    }
    g.payoffs.push_back(std::move(m));
  }
  g.validate();
  return g;
}

void save_game(const std::string& path, const game::BayesianZeroSumGame& g) {
  g.validate();
  nlohmann::json j;
  j["r"] = g.rows;
  j["c"] = g.cols;
  j["M"] = g.num_states;
  j["prior"] = g.prior;
  nlohmann::json payoffs = nlohmann::json::array();
  for (const Matrix& m : g.payoffs) {
    nlohmann::json mat = nlohmann::json::array();
    for (int i = 0; i < m.rows; ++i)
      mat.push_back(std::vector<double>(m.row(i), m.row(i) + m.cols));
    payoffs.push_back(std::move(mat));
  }
  j["payoffs"] = std::move(payoffs);
  save_json(path, j);
}

game::SignalingScheme scheme_from_json(const nlohmann::json& j) {
  game::SignalingScheme s;
  s.num_states = j.at("M").get<int>();
  s.num_signals = j.at("signals").get<int>();
  const auto flat = j.at("phi").get<std::vector<double>>();
  if (flat.size() != static_cast<std::size_t>(s.num_states) *
                         static_cast<std::size_t>(s.num_signals))
    throw std::runtime_error("scheme: phi length != M * signals");
  s.phi.resize(s.num_states);
  for (int t = 0; t < s.num_states; ++t)
    s.phi[t].assign(flat.begin() + static_cast<std::ptrdiff_t>(t) * s.num_signals,
                    flat.begin() +
                        static_cast<std::ptrdiff_t>(t + 1) * s.num_signals);
  s.validate();
  return s;
}

game::SignalingScheme load_scheme(const std::string& path) {
  return scheme_from_json(load_json(path));
}

void save_scheme(const std::string& path, const game::SignalingScheme& s) {
  s.validate();
  nlohmann::json j;
  j["M"] = s.num_states;
  j["signals"] = s.num_signals;
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(s.num_states) * s.num_signals);
  for (const auto& row : s.phi) flat.insert(flat.end(), row.begin(), row.end());
  j["phi"] = std::move(flat);
  save_json(path, j);
}

game::ConvexDecomposition decomposition_from_json(const nlohmann::json& j) {
  game::ConvexDecomposition dec;
  dec.alpha = j.at("alpha").get<std::vector<double>>();
  dec.posteriors = j.at("posteriors").get<std::vector<std::vector<double>>>();
  if (dec.alpha.size() != dec.posteriors.size())
    throw std::runtime_error("decomposition: alpha and posteriors disagree");
  dec.validate();  // prior absent, so only the probability-vector checks run
  return dec;
}

game::ConvexDecomposition load_decomposition(const std::string& path) {
  return decomposition_from_json(load_json(path));
}

void save_decomposition(const std::string& path,
                        const game::ConvexDecomposition& dec) {
  dec.validate();
  nlohmann::json j;
  j["alpha"] = dec.alpha;
  j["posteriors"] = dec.posteriors;
  save_json(path, j);
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in = open_input(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("json parse error (") + e.what() + ")", path);
  }
  return j;
}

void save_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
  if (!out) fail("write failed", path);
}

nlohmann::json equilibrium_to_json(const security::EquilibriumResult& r) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& atom : r.defender_decomposition)
    atoms.push_back({{"weight", atom.weight}, {"nodes", atom.nodes}});
  return nlohmann::json{{"value", r.value},
                        {"certified_gap", r.certified_gap},
                        {"attacker_strategy", r.attacker_strategy},
                        {"defender_marginal", r.defender_marginal},
                        {"defender_decomposition", std::move(atoms)}};
}

}  // namespace signalgame::io
