#pragma once

#include <optional>
#include <vector>

#include "klean/graph.hpp"
#include "klean/tree_decomposition.hpp"

namespace klean {

// The fast path for graphs that no small cut can split into two large parts.
// Star decompositions (every non-root node a leaf on the root) use the plain
// TreeDecomposition type; everything built here keeps node 0 as the root and
// the leaves at 1..ℓ.

// Searches for a well-structured witness against the root bag that contains
// the low-degree vertex v. Well-structured means the cut (A,B) additionally
// satisfies, with L the vertices of degree < s: |A| < s, A∖B is a nonempty
// subset of L with N(A∖B) = A∩B, G[A∩L] is connected, and G[A∖B] has at most
// k components. Returns C = A∖B — the witness is then (N[C], V∖C) — or
// nothing when no such witness contains v. Branches over candidates for
// (A∩L, A∩B∩L); the first hit in the fixed branching order wins.
std::optional<std::vector<int>> well_structured_witness(const Graph& g,
                                                        const TreeDecomposition& star,
                                                        int v, int s, int k);

// A witness in linked form: the cut is (A, V∖(A∖S)) with S = A∩B, and
// flow(S, A ∩ root bag) = |S|. Linkedness is what keeps every adhesion
// below k after a refinement.
struct LinkedWitness {
  std::vector<int> a;  // sorted
  std::vector<int> s;  // sorted, S ⊆ A
};

// Tightens the witness (N[C], V∖C) into linked form: one minimum cut between
// the root-bag occupants of N[C] and N(C), computed inside G[N[C]] with the
// edges among N(C) dropped. Rejects C whose cut is not a witness.
LinkedWitness a_linked(const Graph& g, const TreeDecomposition& star,
                       const std::vector<int>& c, int k);

// One refinement: the root bag drops A∖S, every leaf bag is intersected with
// V∖(A∖S), and a new leaf with bag A is appended. The root bag shrinks
// strictly and adhesions stay below k. Rejects witnesses that are not
// linked, since the adhesion bound depends on it.
TreeDecomposition star_refine(const Graph& g, const TreeDecomposition& star,
                              const LinkedWitness& w, int k);

// Queue-driven refinement from the one-bag star: every vertex of degree ≤ s
// is queued, the front vertex is searched for a witness (with the size bound
// widened by one so that structures touching exactly s vertices still split
// off), hits are linked and refined, and the vertex is popped only once it
// admits nothing. Leaves whose bags add nothing over the root bag are
// dropped at the end. At most |V| refinements happen, each shrinking the
// root bag.
TreeDecomposition big_star_lean(const Graph& g, int s, int k);

// Splices per-leaf decompositions into the star: leaf_tds[i] must be a
// k-lean decomposition of the clique-filled side graph of leaf i+1 (in that
// side graph's local vertex ids) and is attached at its node whose bag
// contains the adhesion.
TreeDecomposition merge_into_lean(const Graph& g, const TreeDecomposition& star,
                                  const std::vector<TreeDecomposition>& leaf_tds);

// k-lean decomposition through the dispatch: graphs below (2s)^{k+2}
// vertices go to k_lean_td directly, larger ones through big_star_lean,
// per-leaf k_lean_td on the clique-filled sides, and merge_into_lean.
// Unbreakability of g is the caller's promise; a broken promise surfaces as
// a non-lean result, never as a crash.
TreeDecomposition unbreakable_k_lean(const Graph& g, int s, int k);

}  // namespace klean
