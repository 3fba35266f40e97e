#include "klean/unbreakable.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "klean/bitset.hpp"
#include "klean/check.hpp"
#include "klean/flow.hpp"
#include "klean/lean.hpp"

namespace klean {

namespace {

// Shared entry validation: a valid decomposition whose every non-root node
// hangs directly off the root, with adhesions below k.
void require_star(const Graph& g, const TreeDecomposition& star, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  TdValidation val = validate(g, star);
  if (!val.pass) throw std::invalid_argument("invalid tree decomposition: " + val.violation);
  int root = default_root(star);
  for (auto [x, y] : star.edges)
    if (x != root && y != root)
      throw std::invalid_argument("decomposition is not a star");
  if (adhesion_size(g, star) >= k)
    throw std::invalid_argument("adhesion size must stay below k");
}

std::vector<int> sorted_union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

// Candidate pair (D, R) of the branching search, kept sorted and tiny.
struct Candidate {
  std::vector<int> d, r;
};

// State shared across one well_structured_witness run.
struct WitnessSearchCtx {
  const Graph* g;
  Bitset in_l;        // degree < s
  Bitset root_bag;    // membership in bag(root)
  int root_bag_size;
  int s, k;
  std::optional<std::vector<int>> hit;
};

bool contains(const std::vector<int>& v, int x) {
  return std::binary_search(v.begin(), v.end(), x);
}

int components_within(const Graph& g, const std::vector<int>& verts) {
  int n = int(verts.size());
  if (n == 0) return 0;
  std::vector<int> comp(n, -1);
  int cc = 0;
  for (int i = 0; i < n; i++) {
    if (comp[i] >= 0) continue;
    comp[i] = cc;
    std::vector<int> stack{i};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : g.neighbors(verts[x])) {
        auto it = std::lower_bound(verts.begin(), verts.end(), y);
        if (it == verts.end() || *it != y) continue;
        int j = int(it - verts.begin());
        if (comp[j] < 0) {
          comp[j] = cc;
          stack.push_back(j);
        }
      }
    }
    cc++;
  }
  return cc;
}

std::vector<int> set_difference(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> bits_to_vector(const Bitset& bs) {
  std::vector<int> out;
  for (int i = bs.first(); i != -1; i = bs.next(i + 1)) out.push_back(i);
  return out;
}

// Emission test: does (D, R) reconstruct to a well-structured witness? The
// branching already guarantees G[D] connected, ≤ k components of G[D∖R], and
// no D∖R edge into L∖D, so only the residual conditions are checked here.
bool candidate_is_witness(WitnessSearchCtx& ctx, const Candidate& cand) {
  const Graph& g = *ctx.g;
  std::vector<int> c = set_difference(cand.d, cand.r);
  if (c.empty()) return false;  // A∖B must be nonempty
  // N(C), then A = D ∪ N(C) and A∩B = R ∪ (N(C)∖D).
  Bitset nc(g.vertex_count());
  for (int v : c) nc |= g.neighbor_bits(v);
  for (int v : c) nc.reset(v);
  for (int v : cand.r)
    if (!nc.test(v)) return false;  // N(A∖B) = A∩B needs R ⊆ N(C)
  std::vector<int> ncv = bits_to_vector(nc);
  std::vector<int> a = sorted_union(cand.d, ncv);
  if (int(a.size()) >= ctx.s) return false;
  std::vector<int> sep = sorted_union(cand.r, set_difference(ncv, cand.d));
  int order = int(sep.size());
  if (order >= ctx.k) return false;
  int a_in_bag = 0;
  for (int v : a) a_in_bag += ctx.root_bag.test(v);
  if (a_in_bag <= order) return false;
  // |B ∩ bag| = |bag| − |bag ∩ (A∖B)| with A∖B = C.
  int c_in_bag = 0;
  for (int v : c) c_in_bag += ctx.root_bag.test(v);
  if (ctx.root_bag_size - c_in_bag <= order) return false;
  ctx.hit = c;
  return true;
}

// The recursive branching over (D, R): forced growth while some D∖R vertex
// has a low-degree neighbor outside D, emission otherwise, then optional
// growth through N(D)∩L. First hit wins; the recursion stops immediately.
void branch(WitnessSearchCtx& ctx, const Candidate& cand) {
  if (ctx.hit) return;
  if (int(cand.d.size()) >= ctx.s || int(cand.r.size()) >= ctx.k) return;
  std::vector<int> c = set_difference(cand.d, cand.r);
  // Forced branching: the smallest such u, then its smallest such w.
  for (int u : c) {
    for (int w : ctx.g->neighbors(u)) {
      if (!ctx.in_l.test(w) || contains(cand.d, w)) continue;
      Candidate grown{sorted_union(cand.d, {w}), cand.r};
      branch(ctx, grown);
      if (ctx.hit) return;
      grown.r = sorted_union(cand.r, {w});
      branch(ctx, grown);
      return;
    }
  }
  if (candidate_is_witness(ctx, cand)) return;
  // Optional growth. With k components in G[D∖R] already, a new vertex may
  // only enter R: otherwise it starts component k+1 (it can touch only R,
  // or the forced branching would have fired).
  int ncc = components_within(*ctx.g, c);
  Bitset nd(ctx.g->vertex_count());
  for (int v : cand.d) nd |= ctx.g->neighbor_bits(v);
  for (int v : cand.d) nd.reset(v);
  for (int w : bits_to_vector(nd)) {
    if (!ctx.in_l.test(w)) continue;
    Candidate grown{sorted_union(cand.d, {w}), cand.r};
    if (ncc < ctx.k) {
      branch(ctx, grown);
      if (ctx.hit) return;
    }
    grown.r = sorted_union(cand.r, {w});
    branch(ctx, grown);
    if (ctx.hit) return;
  }
}

}  // namespace

std::optional<std::vector<int>> well_structured_witness(const Graph& g,
                                                        const TreeDecomposition& star,
                                                        int v, int s, int k) {
  require_star(g, star, k);
  if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("witness vertex out of range");
  if (s < 1) throw std::invalid_argument("s must be at least 1");
  if (g.degree(v) >= s)
    throw std::invalid_argument("query vertex degree must stay below s");

  WitnessSearchCtx ctx;
  ctx.g = &g;
  ctx.in_l = Bitset(g.vertex_count());
  for (int u = 0; u < g.vertex_count(); u++)
    if (g.degree(u) < s) ctx.in_l.set(u);
  int root = default_root(star);
  ctx.root_bag = Bitset(g.vertex_count());
  for (int u : star.bags[root]) ctx.root_bag.set(u);
  ctx.root_bag_size = int(star.bags[root].size());
  ctx.s = s;
  ctx.k = k;

  branch(ctx, Candidate{{v}, {}});
  if (!ctx.hit) branch(ctx, Candidate{{v}, {v}});
  return ctx.hit;
}

LinkedWitness a_linked(const Graph& g, const TreeDecomposition& star,
                       const std::vector<int>& c, int k) {
  require_star(g, star, k);
  for (int v : c)
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("witness vertex out of range");
  std::vector<int> cs = c;
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());

  // The claimed witness is (N[C], V∖C); check it before linking.
  Bitset nc(g.vertex_count());
  for (int v : cs) nc |= g.neighbor_bits(v);
  for (int v : cs) nc.reset(v);
  std::vector<int> boundary = bits_to_vector(nc);  // N(C) = A∩B
  int order = int(boundary.size());
  int root = default_root(star);
  const std::vector<int>& bag = star.bags[root];
  int a_in_bag = 0, c_in_bag = 0;
  for (int v : cs) {
    a_in_bag += contains(bag, v);
    c_in_bag += contains(bag, v);
  }
  for (int v : boundary) a_in_bag += contains(bag, v);
  if (order >= k || a_in_bag <= order || int(bag.size()) - c_in_bag <= order)
    throw std::invalid_argument("input is not a witness");

  std::vector<int> closed = sorted_union(cs, boundary);  // N[C]
  if (boundary.empty()) return {closed, {}};

  // Minimum cut inside G[N[C]] between the bag occupants and N(C); edges
  // among N(C) never cross it, so they are dropped.
  InducedSubgraph sub = induced_subgraph(g, closed);
  std::vector<std::pair<int, int>> kept;
  std::vector<int> local_boundary, local_sources;
  std::vector<char> is_boundary(closed.size(), 0);
  for (size_t i = 0; i < closed.size(); i++)
    if (nc.test(closed[i])) {
      is_boundary[i] = 1;
      local_boundary.push_back(int(i));
    }
  for (auto [u, w] : sub.graph.edges())
    if (!is_boundary[u] || !is_boundary[w]) kept.emplace_back(u, w);
  Graph h = Graph::from_edges(sub.graph.vertex_count(), kept);
  for (size_t i = 0; i < closed.size(); i++)
    if (contains(bag, closed[i])) local_sources.push_back(int(i));

  SeparatorResult cut = flow_sets(h, local_sources, local_boundary);
  internal_check(cut.value <= order, "linking cannot raise the order");
  LinkedWitness out;
  for (int v : cut.cut.a) out.a.push_back(closed[v]);
  for (int v : cut.separator) out.s.push_back(closed[v]);
  return out;
}

TreeDecomposition star_refine(const Graph& g, const TreeDecomposition& star,
                              const LinkedWitness& w, int k) {
  require_star(g, star, k);
  for (int v : w.a)
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("witness vertex out of range");
  if (!std::is_sorted(w.a.begin(), w.a.end()) || !std::is_sorted(w.s.begin(), w.s.end()))
    throw std::invalid_argument("witness sets must be sorted");
  if (!std::includes(w.a.begin(), w.a.end(), w.s.begin(), w.s.end()))
    throw std::invalid_argument("witness separator must lie inside its side");

  int root = default_root(star);
  const std::vector<int>& bag = star.bags[root];
  std::vector<int> c = set_difference(w.a, w.s);  // A∖B
  int order = int(w.s.size());

  // Witness check for (A, V∖(A∖S)): order, both bag conditions, and the cut
  // itself (no edge may leave A∖B except into S).
  int a_in_bag = 0, c_in_bag = 0;
  for (int v : w.a) a_in_bag += contains(bag, v);
  for (int v : c) c_in_bag += contains(bag, v);
  if (order >= k) throw std::invalid_argument("witness order must stay below k");
  if (a_in_bag <= order || int(bag.size()) - c_in_bag <= order)
    throw std::invalid_argument("witness bag conditions fail");
  for (int v : c)
    for (int u : g.neighbors(v))
      if (!contains(w.a, u))
        throw std::invalid_argument("witness separator disagrees with its cut");

  // Linkedness: flow(S, A ∩ bag) must use up all of S.
  std::vector<int> a_bag;
  for (int v : w.a)
    if (contains(bag, v)) a_bag.push_back(v);
  if (order > 0 && flow_sets(g, w.s, a_bag).value < order)
    throw std::invalid_argument("witness is not linked");

  TreeDecomposition out;
  out.root = 0;
  Bitset drop(g.vertex_count());
  for (int v : c) drop.set(v);
  std::vector<int> root_bag;
  for (int v : bag)
    if (!drop.test(v)) root_bag.push_back(v);
  root_bag = sorted_union(root_bag, w.s);
  out.bags.push_back(root_bag);
  internal_check(int(root_bag.size()) < int(bag.size()), "root bag must shrink");
  for (int x = 0; x < star.node_count(); x++) {
    if (x == root) continue;
    std::vector<int> leaf;
    for (int v : star.bags[x])
      if (!drop.test(v)) leaf.push_back(v);
    out.bags.push_back(leaf);
    out.edges.emplace_back(0, int(out.bags.size()) - 1);
  }
  out.bags.push_back(w.a);
  out.edges.emplace_back(0, int(out.bags.size()) - 1);
  return out;
}

TreeDecomposition big_star_lean(const Graph& g, int s, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (s < 1) throw std::invalid_argument("s must be at least 1");
  int n = g.vertex_count();
  if (n == 0) return {};

  TreeDecomposition star;
  star.root = 0;
  star.bags.emplace_back();
  for (int v = 0; v < n; v++) star.bags[0].push_back(v);

  // The search bound is widened by one: a pendant structure on s−1 vertices
  // plus its attachment point touches exactly s, and must still split off.
  std::deque<int> queue;
  for (int v = 0; v < n; v++)
    if (g.degree(v) <= s) queue.push_back(v);

  int refinements = 0;
  while (!queue.empty()) {
    int v = queue.front();
    auto c = well_structured_witness(g, star, v, s + 1, k);
    if (!c) {
      queue.pop_front();
      continue;
    }
    LinkedWitness w = a_linked(g, star, *c, k);
    star = star_refine(g, star, w, k);
    for (int u : w.a)
      if (g.degree(u) <= s) queue.push_back(u);
    internal_check(++refinements <= n, "every refinement shrinks the root bag");
  }

  // Leaves whose bags add nothing over the root are noise from later
  // refinements shrinking earlier leaves; everything they cover, the root
  // covers too.
  TreeDecomposition pruned;
  pruned.root = 0;
  pruned.bags.push_back(star.bags[0]);
  for (int x = 1; x < star.node_count(); x++) {
    if (set_difference(star.bags[x], star.bags[0]).empty()) continue;
    pruned.bags.push_back(star.bags[x]);
    pruned.edges.emplace_back(0, int(pruned.bags.size()) - 1);
  }
  return pruned;
}

TreeDecomposition merge_into_lean(const Graph& g, const TreeDecomposition& star,
                                  const std::vector<TreeDecomposition>& leaf_tds) {
  int n = g.vertex_count();
  if (n == 0 && star.node_count() == 0 && leaf_tds.empty()) return {};
  TdValidation val = validate(g, star);
  if (!val.pass) throw std::invalid_argument("invalid tree decomposition: " + val.violation);
  int root = default_root(star);
  for (auto [x, y] : star.edges)
    if (x != root && y != root) throw std::invalid_argument("decomposition is not a star");
  if (leaf_tds.size() + 1 != size_t(star.node_count()))
    throw std::invalid_argument("one leaf decomposition per star leaf required");

  TreeDecomposition out;
  out.root = 0;
  out.bags.push_back(star.bags[root]);

  size_t next_leaf = 0;
  for (int x = 0; x < star.node_count(); x++) {
    if (x == root) continue;
    const TreeDecomposition& ltd = leaf_tds[next_leaf++];
    const std::vector<int>& side = star.bags[x];  // C_i, sorted = local id map
    std::vector<int> adh;
    std::set_intersection(side.begin(), side.end(), star.bags[root].begin(),
                          star.bags[root].end(), std::back_inserter(adh));
    // Rebuild the clique-filled side graph to validate and to place rⁱ.
    VertexCut cut;
    cut.a = side;
    cut.b = set_difference([&] {
      std::vector<int> all(n);
      for (int v = 0; v < n; v++) all[v] = v;
      return all;
    }(), side);
    cut.b = sorted_union(cut.b, adh);
    InducedSubgraph local = clique_fill_side(g, cut);
    std::vector<int> local_adh;
    for (size_t i = 0; i < local.vertices.size(); i++)
      if (contains(adh, local.vertices[i])) local_adh.push_back(int(i));
    // The designated node must exist before anything else makes sense; check
    // containment by hand so its absence is reported even when the input is
    // broken in other ways too.
    bool have_attach = false;
    for (const auto& lb : ltd.bags)
      have_attach |= std::includes(lb.begin(), lb.end(), local_adh.begin(), local_adh.end());
    if (!have_attach)
      throw std::invalid_argument("no bag contains the requested set");
    TdValidation lval = validate(local.graph, ltd);
    if (!lval.pass)
      throw std::invalid_argument("invalid leaf decomposition: " + lval.violation);
    int attach = locate_bag(local.graph, ltd, local_adh);

    int offset = int(out.bags.size());
    for (const auto& lb : ltd.bags) {
      std::vector<int> mapped;
      for (int v : lb) mapped.push_back(local.vertices[v]);
      std::sort(mapped.begin(), mapped.end());
      out.bags.push_back(mapped);
    }
    for (auto [a, b] : ltd.edges) out.edges.emplace_back(offset + a, offset + b);
    out.edges.emplace_back(0, offset + attach);
  }
  return out;
}

TreeDecomposition unbreakable_k_lean(const Graph& g, int s, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (s < k) throw std::invalid_argument("s must be at least k");
  // (2s)^{k+2} with saturation; anything beyond the vertex count behaves the
  // same, so the cap is harmless.
  unsigned long long threshold = 1;
  for (int i = 0; i < k + 2; i++) {
    threshold *= (unsigned long long)(2 * s);
    if (threshold > (1ull << 40)) {
      threshold = 1ull << 40;
      break;
    }
  }
  if ((unsigned long long)(g.vertex_count()) < threshold) return k_lean_td(g, k);

  TreeDecomposition star = big_star_lean(g, s, k);
  int root = default_root(star);
  std::vector<TreeDecomposition> leaf_tds;
  for (int x = 0; x < star.node_count(); x++) {
    if (x == root) continue;
    const std::vector<int>& side = star.bags[x];
    std::vector<int> adh;
    std::set_intersection(side.begin(), side.end(), star.bags[root].begin(),
                          star.bags[root].end(), std::back_inserter(adh));
    VertexCut cut;
    cut.a = side;
    std::vector<int> rest;
    for (int v = 0; v < g.vertex_count(); v++)
      if (!contains(side, v)) rest.push_back(v);
    cut.b = sorted_union(rest, adh);
    InducedSubgraph local = clique_fill_side(g, cut);
    TreeDecomposition ltd = k_lean_td(local.graph, k);
    leaf_tds.push_back(reduce_total_size(local.graph, ltd, k));
  }
  return merge_into_lean(g, star, leaf_tds);
}

}  // namespace klean
