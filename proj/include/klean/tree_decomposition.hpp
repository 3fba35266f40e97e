#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "klean/graph.hpp"

namespace klean {

// Tree decomposition with dense node ids. Bags are sorted vertex lists; the
// tree is connected (a single tree, never a forest) except for the empty
// decomposition of the empty graph. root = -1 means unrooted; operations that
// need a root pick the smallest node with a nonempty bag.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> edges;
  int root = -1;

  int node_count() const { return int(bags.size()); }
  // ‖T‖: node count plus total bag size.
  int64_t total_size() const {
    int64_t s = node_count();
    for (const auto& b : bags) s += int64_t(b.size());
    return s;
  }
};

struct TdValidation {
  bool pass = false;
  std::string violation;  // empty on pass
};

// Checks tree shape, the edge condition, and the vertex condition.
TdValidation validate(const Graph& g, const TreeDecomposition& td);

// Rooted bookkeeping computed on demand: parents, BFS order, depths, and per
// graph vertex its forget node (the occurrence closest to the root).
struct RootedView {
  int root = -1;
  std::vector<int> parent;       // node → parent node, -1 at root
  std::vector<int> parent_edge;  // node → index into td.edges, -1 at root
  std::vector<std::vector<int>> children;
  std::vector<int> order;  // BFS order, order[0] == root
  std::vector<int> depth;
  std::vector<int> forget;  // graph vertex → forget node, -1 if absent
};

// Throws std::invalid_argument if the node set is not a single tree or some
// vertex's occurrence set is empty/disconnected (callers hold valid TDs).
RootedView root_decomposition(const Graph& g, const TreeDecomposition& td, int root);

// Default root: td.root if set, otherwise the smallest node with a nonempty
// bag (node 0 when all bags are empty).
int default_root(const TreeDecomposition& td);

// adh(e) = bag(s) ∩ bag(t) for every tree edge, parallel to td.edges,
// computed with one forget-node sweep.
std::vector<std::vector<int>> adhesions(const Graph& g, const TreeDecomposition& td);

// Largest adhesion size (0 for decompositions with no edges).
int adhesion_size(const Graph& g, const TreeDecomposition& td);

// A node whose bag contains w, found by the deepest-forget-node rule.
// Throws std::invalid_argument if no bag contains w.
int locate_bag(const Graph& g, const TreeDecomposition& td, const std::vector<int>& w);

// Contracts every node whose bag is contained in its parent's bag. The input
// is caller-certified k-lean; the result is k-lean with ‖·‖ ≤ (k+1)·|V|.
TreeDecomposition reduce_total_size(const Graph& g, const TreeDecomposition& td, int k);

// A certificate that a decomposition is not k-lean: a vertex cut (A,B) of
// order < k and nodes t1, t2 with |A ∩ bag(t1)| and |B ∩ bag(t2)| both larger
// than the order, while every (t1,t2)-adhesion is larger than the order.
struct NonLeanWitness {
  VertexCut cut;
  int t1 = -1, t2 = -1;
  std::vector<int> separator;  // A ∩ B, sorted
  int order = 0;
};

// Exhaustive-over-subsets semantics: some witness if one exists, NONE iff the
// decomposition is k-lean. Requires adhsize(td) < k and a valid td; violations
// are reported as errors, not treated as witnesses.
std::optional<NonLeanWitness> find_non_lean_witness(const Graph& g,
                                                    const TreeDecomposition& td, int k);

// JSON round trip: {"nodes":[{"id":..,"bag":[..]}],"edges":[[a,b],..],"root":..}
std::string td_to_json(const TreeDecomposition& td);
TreeDecomposition td_from_json(const std::string& text);

}  // namespace klean
