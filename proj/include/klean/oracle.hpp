#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klean/connectivity.hpp"
#include "klean/graph.hpp"

namespace klean {

// Brute-force ground truths. These deliberately share no logic with the main
// pipeline: k-edge-components come from pairwise flows, connectivity from
// subset enumeration, and the Gomory-Hu verifier replays both defining
// conditions pair by pair against the element-cut oracle.

// Partition where u, v share a class iff no edge cut of size < k separates
// them; computed by pairwise min_edge_cutset only.
std::vector<std::vector<int>> oracle_kecc(const Graph& g, int k);

// Minimum proper vertex separator size; nullopt = COMPLETE (no proper
// separator exists). Exhaustive over subsets, intended for small n.
std::optional<int> oracle_vertex_connectivity(const Graph& g);

struct GhVerification {
  bool pass = false;
  std::string counterexample;  // empty on pass
};

// Checks both defining conditions of an element-connectivity k-Gomory-Hu
// tree of (g, u_set): every α(e) is a valid U-element cutset of size < k for
// every pair it separates, and every pair with element connectivity < k has
// a γ-path edge attaining exactly that minimum. Structural defects (not a
// tree, γ not total on u_set, α elements out of range) throw.
GhVerification verify_gomory_hu(const Graph& g, const std::vector<int>& u_set, int k,
                                const GomoryHuTree& gh);

}  // namespace klean
