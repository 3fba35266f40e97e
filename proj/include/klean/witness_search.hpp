#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "klean/bitset.hpp"
#include "klean/flow.hpp"
#include "klean/graph.hpp"
#include "klean/tree_decomposition.hpp"

namespace klean {

// A minimal non-k-lean-witness (A,B,t1,t2). Minimality is lexicographic:
// first the tree distance between t1 and t2, then |A ∩ B| among separators of
// (bag(t1) ∩ A, bag(t2) ∩ B), then the total tree distance from the t1-t2
// path to the separator vertices' nearest occurrences.
struct MinimalWitness {
  VertexCut cut;               // (A, B)
  int t1 = -1, t2 = -1;
  std::vector<int> separator;  // A ∩ B, sorted
  int order = 0;               // |A ∩ B|
  int dist = 0;                // tree distance between t1 and t2
};

// d_{t1,t2}(v) for every graph vertex: the distance in the decomposition tree
// from the t1-t2 path to the nearest node whose bag contains v (0 when some
// occurrence lies on the path). Vertices in no bag get node_count() as an
// unreachable sentinel.
std::vector<int> path_distance_metric(const Graph& g, const TreeDecomposition& td, int t1,
                                      int t2);

// Witness search engine for one (graph, k) pair. Construction precomputes the
// all-pairs flow* table (capped at k, skipped where a common-neighbor bound
// already certifies >= k), so one instance serves every refinement iteration
// on the same graph. find() is exact: it returns NONE iff the decomposition
// is k-lean, scanning node pairs by ascending tree distance and certifying
// each pair either by anchored min-cuts, by bounded bag-subset flows, or by
// an exhaustive separator scan.
class WitnessSearch {
 public:
  WitnessSearch(const Graph& g, int k);

  // The chosen witness is deterministic: smallest tree distance, ties broken
  // by BFS index of (t1, t2), separator minimalized as documented above.
  // Throws std::invalid_argument on an invalid decomposition and (distinctly)
  // when its adhesion size is not below k.
  std::optional<MinimalWitness> find(const TreeDecomposition& td);

  // Smallest flow* over non-adjacent vertex pairs, capped at min(k, n); no
  // decomposition of g admits a witness when this reaches k.
  int kappa0() const { return kappa0_; }

 private:
  struct PairScan;  // per-find() state

  void ensure_anchor_level(int c);
  std::optional<MinimalWitness> scan_pair(PairScan& ps, int t1, int t2, int dist);
  std::optional<VertexCut> probe_anchors(PairScan& ps, int t1, int t2, int c);
  std::optional<VertexCut> subset_scan(PairScan& ps, int t1, int t2, int c);
  std::optional<VertexCut> separator_scan(PairScan& ps, int t1, int t2, int c);
  MinimalWitness minimalize(PairScan& ps, int t1, int t2, int dist, const VertexCut& cut);

  const Graph* g_;
  int k_;
  int n_;
  int cap_limit_;  // min(k, n): flow* values are only compared below this
  int kappa0_;
  VertexSplitNetwork net_;
  std::vector<std::vector<uint16_t>> fstar_;  // min(flow*, cap_limit); 0xffff = adjacent/self
  std::vector<std::vector<Bitset>> anchors_le_;  // [c][u] = {v : fstar(u,v) <= c}, lazy
};

// One-shot convenience over WitnessSearch.
std::optional<MinimalWitness> find_minimal_witness(const Graph& g, const TreeDecomposition& td,
                                                   int k);

}  // namespace klean
