#pragma once

#include <cstdint>
#include <vector>

#include "klean/graph.hpp"

namespace klean {

// Max-flow core shared by every connectivity computation in the library.
// Arcs live in reverse-paired slots (arc i's reverse is i^1), capacities are
// mutated during augmentation and restored from the stored originals on
// reset_flow(). Queries that need extra terminal arcs append them and
// truncate afterwards, so one network per graph serves many queries.
class FlowNetwork {
 public:
  static constexpr int64_t INF = int64_t(1) << 60;

  struct Arc {
    int from, to;
    int64_t cap;  // remaining capacity
  };

  int add_node() {
    out_.emplace_back();
    return int(out_.size()) - 1;
  }
  int node_count() const { return int(out_.size()); }
  int arc_count() const { return int(arcs_.size()); }

  // Returns the forward arc index; the reverse (cap 0) sits at index^1.
  int add_arc(int from, int to, int64_t cap);
  // Both directions share the pair and act as each other's reverse — the
  // standard undirected-edge encoding.
  int add_undirected_arc(int a, int b, int64_t cap);

  // Temporarily change a capacity; undone by the next reset_flow().
  void override_cap(int arc, int64_t cap);

  // Removes all arcs with index >= count (they must be the most recent).
  void truncate_arcs(int count);

  // Shortest-augmenting-path max flow. If abort_at >= 0, stops as soon as the
  // value reaches abort_at (the return value then only certifies ">= abort_at").
  int64_t maxflow(int s, int t, int64_t abort_at = -1);

  // Residual reachability after a maxflow run (before reset_flow).
  std::vector<char> reachable_from(int s) const;
  std::vector<char> reachable_to(int t) const;

  // Restores every capacity touched since the previous reset.
  void reset_flow();

  int64_t cap(int arc) const { return arcs_[arc].cap; }
  const Arc& arc(int i) const { return arcs_[i]; }

 private:
  void touch(int arc);

  std::vector<Arc> arcs_;
  std::vector<int64_t> cap0_;
  std::vector<std::vector<int>> out_;  // per node: arc indices leaving it
  std::vector<int> touched_;
  std::vector<char> is_touched_;
  // BFS scratch, versioned so repeated runs skip O(nodes) clears
  mutable std::vector<int> seen_;
  mutable std::vector<int> par_;
  mutable std::vector<int> bfs_queue_;
  mutable int stamp_ = 0;
};

// Result of a set-to-set vertex flow: value = |separator| = the maximum
// number of vertex-disjoint (X1,X2)-paths, and a realizing cut with X1 ⊆ A,
// X2 ⊆ B, A ∩ B = separator. The A-side is the residual-reachable closure,
// i.e. the inclusion-minimal A among minimum cuts.
struct SeparatorResult {
  int value = 0;
  std::vector<int> separator;  // sorted
  VertexCut cut;
};

struct EdgeCutResult {
  int value = 0;
  std::vector<std::pair<int, int>> cutset;  // lexicographic, u < v
  std::vector<int> side_a, side_b;          // bipartition, sorted
};

// Mixed cut for element connectivity: vertices outside U plus edges.
struct CutElements {
  std::vector<int> vertices;                // sorted
  std::vector<std::pair<int, int>> edges;   // lexicographic, u < v
  int size() const { return int(vertices.size() + edges.size()); }
  bool operator==(const CutElements&) const = default;
};

struct ElementCutResult {
  int value = 0;
  CutElements elements;
};

// Vertex-split network over one graph: v_in→v_out carries the vertex
// capacity (deletable, default 1), undirected edges become infinite arcs in
// both directions, and two pre-allocated super-terminals serve set queries.
// All queries reset and truncate, so instances are freely reusable.
class VertexSplitNetwork {
 public:
  explicit VertexSplitNetwork(const Graph& g);

  // flow(X1, X2): max vertex-disjoint (X1,X2)-paths. All vertices are
  // deletable, so members of X1 ∩ X2 are single-vertex paths that force
  // themselves into the separator. If aborted early (value == abort_at), the
  // separator/cut fields are not populated.
  SeparatorResult flow_sets(const std::vector<int>& x1, const std::vector<int>& x2,
                            int abort_at = -1);

  // flow*(u,v): internally vertex-disjoint (u,v)-paths including the direct
  // edge. Terminal capacities are bypassed by construction.
  int flow_star(int u, int v, int abort_at = -1);

  // Minimum proper (u,v)-separator S ⊆ V∖{u,v} with a realizing cut whose
  // A-side is inclusion-minimal. Endpoints must be distinct and non-adjacent
  // (adjacent endpoints admit no proper separator at all).
  SeparatorResult proper_separator(int u, int v, int abort_at = -1);

  // Minimum-total-weight (X1,X2)-separator, A-side inclusion-minimal among
  // the minimizers. Weights must be positive.
  SeparatorResult min_weight_separator(const std::vector<int>& x1,
                                       const std::vector<int>& x2,
                                       const std::vector<int64_t>& weight);

 private:
  SeparatorResult run_set_query(const std::vector<int>& x1, const std::vector<int>& x2,
                                int abort_at);

  const Graph* g_;
  FlowNetwork net_;
  int src_, snk_;
  int base_arcs_;
  std::vector<int> cap_arc_;   // per vertex: its v_in→v_out arc
  std::vector<int> edge_arc_;  // per edge: first of its two forward arcs
};

// Element-connectivity network for one (graph, U) pair: vertices in U are
// undeletable (infinite capacity), other vertices and all edges are unit
// elements (each edge via its own capacity-one edge node).
class ElementNetwork {
 public:
  ElementNetwork(const Graph& g, const std::vector<int>& u_set);

  // Minimum U-element (a,b)-cutset; a, b must be distinct members of U.
  // Aborted queries (value == abort_at) carry no elements.
  ElementCutResult query(int a, int b, int abort_at = -1);

 private:
  const Graph* g_;
  std::vector<char> in_u_;
  FlowNetwork net_;
};

// Unit-capacity edge-cut network (no vertex splitting).
class EdgeCutNetwork {
 public:
  explicit EdgeCutNetwork(const Graph& g);
  EdgeCutResult query(int u, int v, int abort_at = -1);

 private:
  const Graph* g_;
  FlowNetwork net_;
};

// One-shot conveniences over the reusable classes above.
SeparatorResult flow_sets(const Graph& g, const std::vector<int>& x1,
                          const std::vector<int>& x2);
int flow_star(const Graph& g, int u, int v);
SeparatorResult min_weight_separator(const Graph& g, const std::vector<int>& x1,
                                     const std::vector<int>& x2,
                                     const std::vector<int64_t>& weight);
EdgeCutResult min_edge_cutset(const Graph& g, int u, int v);
ElementCutResult element_cutset(const Graph& g, const std::vector<int>& u_set, int a, int b);

}  // namespace klean
