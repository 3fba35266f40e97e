#pragma once

#include <string>
#include <utility>
#include <vector>

#include "klean/bitset.hpp"

namespace klean {

// Undirected simple graph on dense vertex ids 0..n-1. Adjacency is kept three
// ways — sorted neighbor lists, a lexicographic edge list with u < v, and
// per-vertex neighbor bitsets — because different algorithms want different
// access patterns and the graphs here are small enough that the redundancy is
// cheap.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(n), nbr_(n, Bitset(n)) {}

  // Validates and normalizes: endpoints in range, no self-loops, no duplicate
  // edges. Throws std::invalid_argument with a description on violation.
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return int(edges_.size()); }

  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return int(adj_[v].size()); }
  const Bitset& neighbor_bits(int v) const { return nbr_[v]; }
  bool has_edge(int u, int v) const { return u != v && nbr_[u].test(v); }

  // Lexicographically sorted, each pair normalized to u < v.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<Bitset> nbr_;
};

// Parses the edge-list format: header `p <n> <m>`, then m lines `e <u> <v>`.
// Lines starting with `c` are comments. Errors carry 1-based line numbers.
Graph parse_graph(const std::string& text);

// Serializes back to the edge-list format (edges in lexicographic order).
std::string format_graph(const Graph& g);

// A vertex cut (A, B): A ∪ B = V and no edge joins A\B to B\A. The order
// |A ∩ B| is always derived from the sets, never stored.
struct VertexCut {
  std::vector<int> a;  // sorted ascending
  std::vector<int> b;  // sorted ascending
};

// Sorted A ∩ B.
std::vector<int> cut_intersection(const VertexCut& cut);
inline int cut_order(const VertexCut& cut) { return int(cut_intersection(cut).size()); }

// Throws std::invalid_argument naming the violated condition (cover or a
// crossing edge) if (A, B) is not a vertex cut of g.
void validate_cut(const Graph& g, const VertexCut& cut);

struct ContractionResult {
  Graph graph;
  std::vector<int> old_to_new;  // size n of the input graph
};

// Contracts each matching edge uv into one vertex; other vertices survive.
// New ids are assigned by ascending representative (min endpoint for matched
// pairs). Throws if m is not a matching of g.
ContractionResult contract_matching(const Graph& g,
                                    const std::vector<std::pair<int, int>>& matching);

struct EliminationResult {
  Graph graph;
  std::vector<int> old_to_new;  // -1 for eliminated vertices
};

// Eliminates an independent set: every N(v) becomes a clique, then v is
// removed. Independence makes the result order-free. Throws if x is not
// independent in g.
EliminationResult eliminate(const Graph& g, const std::vector<int>& x);

struct InducedSubgraph {
  Graph graph;
  std::vector<int> vertices;  // old ids, ascending; position = new id
};

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& x);

// G ⋄ (A,B): the A-side of a cut with the separator completed into a clique,
// reindexed onto 0..|A|-1.
InducedSubgraph clique_fill_side(const Graph& g, const VertexCut& cut);

// Components as sorted vertex lists, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const Graph& g);

}  // namespace klean
