#pragma once

#include <string>
#include <vector>

#include "klean/graph.hpp"
#include "klean/tree_decomposition.hpp"
#include "klean/witness_search.hpp"

namespace klean {

// Φ(T) = Σ over bags of 4^{4k}·(|bag|−3k) when |bag| > 3k, else 4^{|bag|}.
// Every refinement strictly decreases it, which bounds the iteration count.
// 4^{4k} needs 8k bits, so the accounting supports k <= 15.
unsigned __int128 potential(const TreeDecomposition& td, int k);
std::string potential_to_string(unsigned __int128 v);

// Repeatedly contracts, rooted at r: a non-root node whose bag is contained
// in its parent's bag merges into the parent, and the root merges into a
// child whose bag contains the root bag (smallest node id first). Surviving
// nodes keep their bags and are renumbered ascending; the result's root is
// the survivor that absorbed r.
TreeDecomposition simplify(const TreeDecomposition& td, int r);

// One refinement step: split td along the witness cut, pull separator
// occurrences up toward the opposite witness node on each side, join the two
// halves through a fresh separator bag, and simplify from there. Rejects
// anything that is not a minimal witness for td. Adhesions never exceed
// max(adhsize(td), k-1), and no bag grows.
TreeDecomposition refine(const Graph& g, const TreeDecomposition& td, const MinimalWitness& w,
                         int k);

struct RefinementStep {
  int iter = 0;  // 1-based
  unsigned __int128 phi_before = 0, phi_after = 0;  // 0 when k > 15
  int t1 = -1, t2 = -1;
  int dist = 0, order = 0;
};

// Iterated refinement to a k-lean decomposition, starting from one bag per
// connected component (chained in order of smallest member). The result is
// not size-reduced; callers wanting ‖T‖ <= (k+1)·|V| follow up with
// reduce_total_size. The empty graph yields the empty decomposition.
TreeDecomposition k_lean_td(const Graph& g, int k,
                            std::vector<RefinementStep>* trace = nullptr);

// Same loop started from a caller-supplied decomposition (valid, adhesion
// size below k), for callers that already hold something close to lean.
TreeDecomposition k_lean_td_from(const Graph& g, int k, const TreeDecomposition& hint,
                                 std::vector<RefinementStep>* trace = nullptr);

}  // namespace klean
