#include "signalgame/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "signalgame/kernels.hpp"
#include "signalgame/rng.hpp"

namespace signalgame::graph {

namespace {

void check_vertex(const Graph& g, int v, const char* what) {
  if (v < 0 || v >= g.n())
    throw std::invalid_argument(std::string(what) + ": vertex " +
                                std::to_string(v) + " out of range");
}

}  // namespace

Graph::Graph(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  bits_.assign(static_cast<std::size_t>(n) * words_, 0);
}

int Graph::degree(int u) const {
  return static_cast<int>(kernels::popcount_words(row(u), words_));
}

void Graph::add_edge(int u, int v) {
  check_vertex(*this, u, "add_edge");
  check_vertex(*this, v, "add_edge");
  if (u == v) throw std::invalid_argument("add_edge: self-loop");
  if (edge(u, v)) return;
  set_half_edge(u, v);
  set_half_edge(v, u);
  ++m_;
}

void Graph::remove_edge(int u, int v) {
  check_vertex(*this, u, "remove_edge");
  check_vertex(*this, v, "remove_edge");
  if (u == v || !edge(u, v)) return;
  const std::uint64_t bu = ~(1ULL << (static_cast<std::size_t>(v) % 64));
  const std::uint64_t bv = ~(1ULL << (static_cast<std::size_t>(u) % 64));
  bits_[static_cast<std::size_t>(u) * words_ + v / 64] &= bu;
  bits_[static_cast<std::size_t>(v) * words_ + u / 64] &= bv;
  --m_;
}

Graph gen_gnp(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_gnp: need at least one vertex");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("gen_gnp: probability outside [0,1]");
  Graph g(n);
  if (p == 0.0) return g;
  rng::Xoshiro256pp gen(rng::child_seed(seed, "gnp", 0));

  if (p == 0.5) {
    // One generator word decides 64 columns at once. Row u draws only its
    // upper-triangle span [u+1, n); the lower triangle is mirrored bit by
    // bit so rows stay complete.
    const std::size_t words = g.row_words();
    for (int u = 0; u < n - 1; ++u) {
      std::uint64_t* row =
          g.bits_.data() + static_cast<std::size_t>(u) * words;
      const int first = u + 1;
      for (std::size_t wi = static_cast<std::size_t>(first) / 64; wi < words;
           ++wi) {
        std::uint64_t word = gen.next();
        if (wi == static_cast<std::size_t>(first) / 64 && first % 64 != 0)
          word &= ~0ULL << (first % 64);
        if (wi == words - 1 && n % 64 != 0) word &= (1ULL << (n % 64)) - 1;
        row[wi] |= word;
        g.m_ += static_cast<std::uint64_t>(__builtin_popcountll(word));
        while (word) {
          const int v =
              static_cast<int>(wi * 64) + __builtin_ctzll(word);
          g.set_half_edge(v, u);
          word &= word - 1;
        }
      }
    }
    return g;
  }

  for (int u = 0; u < n - 1; ++u)
    for (int v = u + 1; v < n; ++v)
      if (gen.next_double() < p) g.add_edge(u, v);
  return g;
}

namespace {

// Adds the clique on `s` to `g`, appending every newly created edge (u < v)
// to `added`.
void plant_clique(Graph& g, const std::vector<int>& s,
                  std::vector<std::pair<int, int>>& added) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const int u = std::min(s[i], s[j]);
      const int v = std::max(s[i], s[j]);
      if (g.edge(u, v)) continue;
      g.add_edge(u, v);
      added.emplace_back(u, v);
    }
}

}  // namespace

PlantedCoverInstance gen_planted_cover(int n, double p, int k, int r,
                                       std::uint64_t seed) {
  if (k < 1 || k > n)
    throw std::invalid_argument("gen_planted_cover: need 1 <= k <= n");
  if (r < 0) throw std::invalid_argument("gen_planted_cover: negative r");

  PlantedCoverInstance inst;
  inst.params = {n, p, k, r};
  inst.seed = seed;
  inst.graph = gen_gnp(n, p, seed);
  inst.planted_cliques.reserve(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    rng::Xoshiro256pp gen(rng::child_seed(seed, "clique", i));
    std::vector<int> s = rng::sample_without_replacement(n, k, gen);
    plant_clique(inst.graph, s, inst.clique_added_edges);
    inst.planted_cliques.push_back(std::move(s));
  }
  return inst;
}

PlantedCoverInstance amplify_instance(const Graph& g, double p, int k,
                                      int extra, std::uint64_t seed) {
  if (k < 1 || k > g.n())
    throw std::invalid_argument("amplify_instance: need 1 <= k <= n");
  if (extra < 0) throw std::invalid_argument("amplify_instance: negative count");

  PlantedCoverInstance inst;
  inst.params = {g.n(), p, k, extra};
  inst.seed = seed;
  inst.graph = g;
  inst.planted_cliques.reserve(static_cast<std::size_t>(extra));
  for (int i = 0; i < extra; ++i) {
    rng::Xoshiro256pp gen(rng::child_seed(seed, "amplify-clique", i));
    std::vector<int> s = rng::sample_without_replacement(g.n(), k, gen);
    plant_clique(inst.graph, s, inst.clique_added_edges);
    inst.planted_cliques.push_back(std::move(s));
  }
  return inst;
}

Graph PlantedCoverInstance::background_graph() const {
  Graph g = graph;
  for (const auto& [u, v] : clique_added_edges) g.remove_edge(u, v);
  return g;
}

std::vector<std::uint64_t> vertex_mask(int n, const std::vector<int>& s) {
  std::vector<std::uint64_t> mask((static_cast<std::size_t>(n) + 63) / 64, 0);
  for (int v : s) {
    if (v < 0 || v >= n)
      throw std::invalid_argument("vertex_mask: vertex " + std::to_string(v) +
                                  " out of range");
    std::uint64_t& w = mask[static_cast<std::size_t>(v) / 64];
    const std::uint64_t bit = 1ULL << (static_cast<std::size_t>(v) % 64);
    if (w & bit)
      throw std::invalid_argument("vertex_mask: duplicate vertex " +
                                  std::to_string(v));
    w |= bit;
  }
  return mask;
}

namespace {

// Ordered crossing pairs: sum over u in S of |N(u) ∩ T|.
std::uint64_t crossing_pairs(const Graph& g, const std::vector<int>& s,
                             const std::vector<std::uint64_t>& tmask) {
  std::uint64_t total = 0;
  for (int u : s) {
    check_vertex(g, u, "bidensity");
    total += kernels::and_popcount(g.row(u), tmask.data(), g.row_words());
  }
  return total;
}

}  // namespace

double density(const Graph& g, const std::vector<int>& cluster) {
  const std::size_t sz = cluster.size();
  if (sz < 2) return 0.0;
  const auto mask = vertex_mask(g.n(), cluster);
  const std::uint64_t twice_edges = crossing_pairs(g, cluster, mask);
  return static_cast<double>(twice_edges) /
         (static_cast<double>(sz) * static_cast<double>(sz - 1));
}

double bidensity(const Graph& g, const std::vector<int>& s,
                 const std::vector<int>& t) {
  if (s.empty() || t.empty())
    throw std::invalid_argument("bidensity: empty vertex set");
  const auto tmask = vertex_mask(g.n(), t);
  vertex_mask(g.n(), s);  // range/duplicate validation for s
  const std::uint64_t pairs = crossing_pairs(g, s, tmask);
  return static_cast<double>(pairs) /
         (static_cast<double>(s.size()) * static_cast<double>(t.size()));
}

bool is_clique(const Graph& g, const std::vector<int>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    check_vertex(g, s[i], "is_clique");
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!g.edge(s[i], s[j])) return false;
  }
  return true;
}

DistinguisherResult edge_count_distinguisher(const Graph& g, double p, int k,
                                             int r) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("distinguisher: p must lie in (0,1)");
  const double n = static_cast<double>(g.n());
  const double expected_null = p * n * (n - 1.0) / 2.0;
  const double surplus =
      static_cast<double>(r) * (1.0 - p) * static_cast<double>(k) *
      (static_cast<double>(k) - 1.0) / 2.0;
  DistinguisherResult out;
  out.statistic = static_cast<double>(g.edge_count()) - expected_null;
  out.threshold = surplus / 2.0;
  out.planted = out.statistic > out.threshold;
  return out;
}

}  // namespace signalgame::graph
