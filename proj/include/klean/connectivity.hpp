#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klean/flow.hpp"
#include "klean/graph.hpp"
#include "klean/tree_decomposition.hpp"

namespace klean {

// Which k-lean engine drives the reductions here.
enum class LeanEngine { kDirect, kBodlaender };

// Element-connectivity k-Gomory-Hu tree (T, γ, α): gamma maps each terminal
// to a tree node (-1 for non-terminals), alpha stores one cut-element set per
// tree edge. Every α(e) has size < k and separates every terminal pair split
// by e; pairs with element connectivity < k see that exact minimum on their
// γ-path. Pairs mapped to the same node are certified ≥ k.
struct GomoryHuTree {
  int node_count = 0;
  std::vector<std::pair<int, int>> tree_edges;
  std::vector<CutElements> alpha;  // parallel to tree_edges
  std::vector<int> gamma;          // per graph vertex, -1 outside U
  int k = 0;
};

GomoryHuTree element_gomory_hu(const Graph& g, const std::vector<int>& u_set, int k,
                               LeanEngine engine = LeanEngine::kDirect);

// U = V(G); every α consists of edges only.
GomoryHuTree k_gomory_hu(const Graph& g, int k, LeanEngine engine = LeanEngine::kDirect);

// k-edge-connected components: the γ-fiber partition of the k-Gomory-Hu tree.
// Classes sorted internally, ordered by smallest member.
std::vector<std::vector<int>> k_edge_cc(const Graph& g, int k,
                                        LeanEngine engine = LeanEngine::kDirect);

// Minimum cut answer off the tree: nullopt means "at least k".
std::optional<CutElements> min_cut_query(const GomoryHuTree& gh, int u, int v);

// A proper vertex separator of size < k, or nullopt when none exists
// (equivalently: G is complete or has connectivity >= k). The separator may
// be empty when G is disconnected.
std::optional<std::vector<int>> vertex_separator_lt_k(const Graph& g, int k,
                                                      LeanEngine engine = LeanEngine::kDirect);

// JSON round trip for the CLI:
// {"nodes":[..],"edges":[{"a":..,"b":..,"alpha":{"vertices":[..],"edges":[[u,v],..]}}],
//  "gamma":{"v":node,..},"k":k}
std::string ghtree_to_json(const GomoryHuTree& gh);
GomoryHuTree ghtree_from_json(const std::string& text);

}  // namespace klean
