#pragma once

#include <string>
#include <vector>

#include "klean/graph.hpp"

namespace klean {

// Union of k edge-disjoint forests: forest i is a scan-first (BFS) spanning
// forest of whatever the first i-1 forests left behind. The subgraph keeps
// every vertex cut of order < k intact — cc(G−S) = cc(G′−S) for all |S| < k —
// while holding at most k·|V| edges.
struct Sparsifier {
  Graph subgraph;                 // same vertex set as the host
  std::vector<int> forest_index;  // which forest selected each edge, 1..k,
                                  // parallel to subgraph.edges()
};

Sparsifier ni_sparsify(const Graph& g, int k);

struct SparsifierCheck {
  bool pass = false;
  std::string counterexample;  // empty on pass
};

// Checks the sparsifier property directly: the subgraph's edges appear in the
// host, |E| ≤ k·|V|, component counts agree under deletion of every S with
// |S| < k (exhaustive up to |V| ≤ 12, sampled beyond), and each removed edge
// uv still has flow*(u,v) ≥ k inside the subgraph. Throws
// std::invalid_argument when the vertex sets differ.
SparsifierCheck verify_sparsifier(const Graph& g, const Sparsifier& sp, int k);

}  // namespace klean
