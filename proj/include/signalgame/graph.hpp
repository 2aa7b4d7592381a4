#ifndef SIGNALGAME_GRAPH_HPP
#define SIGNALGAME_GRAPH_HPP

#include <cstdint>
#include <utility>
#include <vector>

// Undirected graphs on dense bitset adjacency, the random-graph generators
// used by the experiments, and the density statistics computed on vertex
// sets. Graphs are immutable after generation; generators are pure functions
// of (params, seed) and produce bit-identical output across platforms.
namespace signalgame::graph {

// Symmetric boolean adjacency with empty diagonal, stored as full bitset
// rows (row u holds one bit per vertex). Full rows cost twice the memory of
// a triangle (~78 MB at n = 25000) but make neighborhood intersections a
// straight word-wise AND, which the recovery filters live on.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  std::size_t row_words() const { return words_; }
  std::uint64_t edge_count() const { return m_; }

  bool edge(int u, int v) const {
    return (bits_[static_cast<std::size_t>(u) * words_ +
                  static_cast<std::size_t>(v) / 64] >>
            (static_cast<std::size_t>(v) % 64)) &
           1ULL;
  }

  const std::uint64_t* row(int u) const {
    return bits_.data() + static_cast<std::size_t>(u) * words_;
  }

  // Number of neighbors of u (popcount of its row).
  int degree(int u) const;

  // Inserts {u, v} if absent; no-op when already present. Maintains the edge
  // count. Only generators and tests construct graphs; a built graph is
  // treated as immutable.
  void add_edge(int u, int v);

  // Removes {u, v} if present (used to reconstruct background graphs).
  void remove_edge(int u, int v);

 private:
  friend Graph gen_gnp(int n, double p, std::uint64_t seed);

  void set_half_edge(int u, int v) {
    bits_[static_cast<std::size_t>(u) * words_ +
          static_cast<std::size_t>(v) / 64] |=
        1ULL << (static_cast<std::size_t>(v) % 64);
  }

  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::uint64_t m_ = 0;
};

struct PlantedCoverParams {
  int n = 0;
  double p = 0.0;
  int k = 0;
  int r = 0;
};

// A graph built as independent background edges plus r planted k-cliques,
// with the ground truth kept alongside. The background edge set is not
// materialized (it can be ~1.5e8 pairs); it is recoverable as the graph
// minus `clique_added_edges`, see background_graph().
struct PlantedCoverInstance {
  Graph graph;
  std::vector<std::vector<int>> planted_cliques;  // r sorted vertex sets
  // Edges that planting created, i.e. clique pairs absent from the graph at
  // the moment their clique was added (u < v).
  std::vector<std::pair<int, int>> clique_added_edges;
  PlantedCoverParams params;
  std::uint64_t seed = 0;

  std::uint64_t background_edge_count() const {
    return graph.edge_count() - clique_added_edges.size();
  }

  // The graph as it was before any clique was planted.
  Graph background_graph() const;
};

// Erdos-Renyi sample: every unordered pair is an edge independently with
// probability p. Deterministic per (n, p, seed); p = 0.5 takes a word-wise
// fast path (one generator word covers 64 columns), every other p draws one
// double per pair. The two paths are distinct fixed algorithms, so outputs
// stay reproducible either way.
Graph gen_gnp(int n, double p, std::uint64_t seed);

// Background gen_gnp(n, p, seed) followed by r cliques: the i-th clique's
// vertex set is k distinct vertices drawn from the stream
// child_seed(seed, "clique", i), sampled sequentially. With r = 0 the graph
// is bit-identical to gen_gnp(n, p, seed).
PlantedCoverInstance gen_planted_cover(int n, double p, int k, int r,
                                       std::uint64_t seed);

// Plants `extra` additional k-cliques into an existing graph (streams
// child_seed(seed, "amplify-clique", i)). The input graph's own history is
// deliberately not consulted: all of its edges count as background and only
// the new sets are recorded as planted.
PlantedCoverInstance amplify_instance(const Graph& g, double p, int k,
                                      int extra, std::uint64_t seed);

// Fraction of realized edges among the |S| choose 2 pairs inside `cluster`.
// Sets of size < 2 have density 0 by convention (a singleton has no pairs to
// miss). Throws on out-of-range or duplicate vertices.
double density(const Graph& g, const std::vector<int>& cluster);

// Fraction of ordered pairs (u, v) in S x T joined by an edge; the diagonal
// contributes nothing since there are no self-loops. Throws when either set
// is empty. For any S with |S| >= 2, bidensity(S, S) equals
// density(S) * (1 - 1/|S|).
double bidensity(const Graph& g, const std::vector<int>& s,
                 const std::vector<int>& t);

// True iff the vertices are pairwise adjacent (singleton sets are cliques).
bool is_clique(const Graph& g, const std::vector<int>& s);

struct DistinguisherResult {
  bool planted = false;    // true when the edge surplus clears the threshold
  double statistic = 0.0;  // observed m minus the p-background expectation
  double threshold = 0.0;  // half the expected planted surplus
};

// Edge-counting hypothesis test between pure background G(n, p) and a
// planted cover with parameters (k, r): planting adds about
// r * (1-p) * k(k-1)/2 edges in expectation, so the verdict is `planted`
// exactly when the observed surplus exceeds half of that.
DistinguisherResult edge_count_distinguisher(const Graph& g, double p, int k,
                                             int r);

// Word mask with bit v set for every v in s (length = words needed for n).
// Throws on out-of-range or duplicate vertices.
std::vector<std::uint64_t> vertex_mask(int n, const std::vector<int>& s);

}  // namespace signalgame::graph

#endif  // SIGNALGAME_GRAPH_HPP
