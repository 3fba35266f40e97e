#include "klean/lean.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <utility>

#include "klean/check.hpp"
#include "klean/flow.hpp"

namespace klean {

namespace {

// sorted-range containment: every element of inner appears in outer
bool bag_subset(const std::vector<int>& inner, const std::vector<int>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace

unsigned __int128 potential(const TreeDecomposition& td, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (k > 15) throw std::invalid_argument("potential accounting supports k <= 15 only");
  unsigned __int128 total = 0;
  for (const auto& bag : td.bags) {
    int b = int(bag.size());
    if (b > 3 * k)
      total += ((unsigned __int128)1 << (8 * k)) * (unsigned __int128)(b - 3 * k);
    else
      total += (unsigned __int128)1 << (2 * b);
  }
  return total;
}

std::string potential_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(char('0' + int(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

TreeDecomposition simplify(const TreeDecomposition& td, int r) {
  int nodes = td.node_count();
  if (r < 0 || r >= nodes) throw std::invalid_argument("root out of range");
  if (int(td.edges.size()) != nodes - 1)
    throw std::invalid_argument("edge count does not match a tree");
  std::vector<std::vector<int>> nadj(nodes);
  for (auto [s, t] : td.edges) {
    if (s < 0 || s >= nodes || t < 0 || t >= nodes || s == t)
      throw std::invalid_argument("tree edge endpoints invalid");
    nadj[s].push_back(t);
    nadj[t].push_back(s);
  }

  std::vector<char> alive(nodes, 1);
  std::vector<int> parent(nodes, -1);
  {
    std::vector<char> seen(nodes, 0);
    std::vector<int> queue{r};
    seen[r] = 1;
    for (size_t h = 0; h < queue.size(); h++)
      for (int y : nadj[queue[h]])
        if (!seen[y]) {
          seen[y] = 1;
          parent[y] = queue[h];
          queue.push_back(y);
        }
    if (int(queue.size()) != nodes) throw std::invalid_argument("tree is not connected");
  }

  int root = r;
  while (true) {
    // BFS order over the surviving structure (parents precede children), then
    // one contraction sweep; re-derived each round because absorption at the
    // root reattaches subtrees.
    std::vector<std::vector<int>> children(nodes);
    for (int t = 0; t < nodes; t++)
      if (alive[t] && t != root) children[parent[t]].push_back(t);
    std::vector<int> order{root};
    for (size_t h = 0; h < order.size(); h++)
      for (int c : children[order[h]]) order.push_back(c);

    bool changed = false;
    for (int t : order) {
      if (t == root || !alive[t]) continue;
      if (!bag_subset(td.bags[t], td.bags[parent[t]])) continue;
      alive[t] = 0;
      for (int c = 0; c < nodes; c++)
        if (alive[c] && parent[c] == t) parent[c] = parent[t];
      changed = true;
    }
    if (changed) continue;

    // Root absorption: the root bag may sit inside a child's bag (the fresh
    // separator bag of a refinement usually does); merge downward then rescan.
    int best = -1;
    for (int c = 0; c < nodes && best < 0; c++)
      if (alive[c] && c != root && parent[c] == root && bag_subset(td.bags[root], td.bags[c]))
        best = c;
    if (best < 0) break;
    alive[root] = 0;
    for (int c = 0; c < nodes; c++)
      if (alive[c] && c != best && parent[c] == root) parent[c] = best;
    parent[best] = -1;
    root = best;
  }

  // survivors renumbered ascending by original id
  std::vector<int> to_new(nodes, -1);
  TreeDecomposition out;
  for (int t = 0; t < nodes; t++) {
    if (!alive[t]) continue;
    to_new[t] = out.node_count();
    out.bags.push_back(td.bags[t]);
  }
  for (int t = 0; t < nodes; t++)
    if (alive[t] && t != root) out.edges.push_back({to_new[parent[t]], to_new[t]});
  out.root = to_new[root];
  return out;
}

TreeDecomposition refine(const Graph& g, const TreeDecomposition& td, const MinimalWitness& w,
                         int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  TdValidation val = validate(g, td);
  if (!val.pass) throw std::invalid_argument("invalid tree decomposition: " + val.violation);
  int nodes = td.node_count();
  if (w.t1 < 0 || w.t1 >= nodes || w.t2 < 0 || w.t2 >= nodes)
    throw std::invalid_argument("witness node out of range");
  validate_cut(g, w.cut);
  std::vector<int> sep = cut_intersection(w.cut);
  if (sep != w.separator || w.order != int(sep.size()))
    throw std::invalid_argument("witness separator disagrees with its cut");
  if (w.order >= k) throw std::invalid_argument("witness order must stay below k");

  const auto& c1 = w.cut.a;
  const auto& c2 = w.cut.b;
  std::vector<int> x1, x2;
  std::set_intersection(td.bags[w.t1].begin(), td.bags[w.t1].end(), c1.begin(), c1.end(),
                        std::back_inserter(x1));
  std::set_intersection(td.bags[w.t2].begin(), td.bags[w.t2].end(), c2.begin(), c2.end(),
                        std::back_inserter(x2));
  if (int(x1.size()) <= w.order || int(x2.size()) <= w.order)
    throw std::invalid_argument("witness bag conditions fail");

  // every adhesion between t1 and t2 must exceed the order
  auto adh = adhesions(g, td);
  {
    std::vector<std::vector<std::pair<int, int>>> nadj(nodes);
    for (int e = 0; e < int(td.edges.size()); e++) {
      auto [s, t] = td.edges[e];
      nadj[s].push_back({t, e});
      nadj[t].push_back({s, e});
    }
    std::vector<int> par(nodes, -2), pedge(nodes, -1);
    par[w.t1] = -1;
    std::vector<int> queue{w.t1};
    for (size_t h = 0; h < queue.size(); h++)
      for (auto [y, e] : nadj[queue[h]])
        if (par[y] == -2) {
          par[y] = queue[h];
          pedge[y] = e;
          queue.push_back(y);
        }
    for (int x = w.t2; par[x] != -1; x = par[x])
      if (int(adh[pedge[x]].size()) <= w.order)
        throw std::invalid_argument("witness path adhesion does not exceed the order");
  }

  // Minimality of the separator (size, then total path-distance weight) is
  // load-bearing for the potential decrease, so reject anything weaker.
  {
    std::vector<int> dv = path_distance_metric(g, td, w.t1, w.t2);
    int64_t base = int64_t(nodes) * int64_t(std::max(g.vertex_count(), 1));
    std::vector<int64_t> weights(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); v++) weights[v] = base + dv[v];
    SeparatorResult best = min_weight_separator(g, x1, x2, weights);
    int64_t got = 0, opt = 0;
    for (int v : w.separator) got += weights[v];
    for (int v : best.separator) opt += weights[v];
    if (got != opt) throw std::invalid_argument("witness is not minimal");
  }

  // T^i: restrict every bag to side i, then pull each separator vertex into
  // all strict ancestors of its forget node, with the tree rooted at the
  // witness node of the *other* side.
  auto build_side = [&](int root_at, const std::vector<int>& side) {
    RootedView rv = root_decomposition(g, td, root_at);
    std::vector<std::vector<int>> pulled(nodes);
    for (int v : sep)
      for (int t = rv.parent[rv.forget[v]]; t != -1; t = rv.parent[t]) pulled[t].push_back(v);
    std::vector<std::vector<int>> bags(nodes);
    for (int t = 0; t < nodes; t++) {
      std::vector<int> in_side;
      std::set_intersection(td.bags[t].begin(), td.bags[t].end(), side.begin(), side.end(),
                            std::back_inserter(in_side));
      std::sort(pulled[t].begin(), pulled[t].end());
      std::set_union(in_side.begin(), in_side.end(), pulled[t].begin(), pulled[t].end(),
                     std::back_inserter(bags[t]));
      internal_check(bags[t].size() <= td.bags[t].size(), "refined bag must not grow");
    }
    return bags;
  };
  std::vector<std::vector<int>> side1 = build_side(w.t2, c1);
  std::vector<std::vector<int>> side2 = build_side(w.t1, c2);

  // pre-refinement: both halves joined through a fresh separator bag sitting
  // between the copy of t2 on side 1 and the copy of t1 on side 2
  TreeDecomposition pre;
  pre.bags = std::move(side1);
  pre.bags.insert(pre.bags.end(), side2.begin(), side2.end());
  pre.bags.push_back(sep);
  pre.edges = td.edges;
  for (auto [s, t] : td.edges) pre.edges.push_back({s + nodes, t + nodes});
  int rnode = 2 * nodes;
  pre.edges.push_back({w.t2, rnode});
  pre.edges.push_back({rnode, nodes + w.t1});
  pre.root = rnode;
  internal_check(validate(g, pre).pass, "pre-refinement is not a tree decomposition");

  TreeDecomposition out = simplify(pre, rnode);
  internal_check(validate(g, out).pass, "refinement broke the decomposition");
  internal_check(adhesion_size(g, out) <= std::max(adhesion_size(g, td), k - 1),
                 "refinement grew an adhesion");
  return out;
}

namespace {

TreeDecomposition improve_to_lean(const Graph& g, int k, TreeDecomposition td,
                                  std::vector<RefinementStep>* trace) {
  if (trace) trace->clear();
  WitnessSearch search(g, k);
  bool track_phi = k <= 15;
  unsigned __int128 budget = track_phi ? potential(td, k) : 0;
  unsigned __int128 before = budget;
  int iter = 0;
  while (true) {
    auto w = search.find(td);
    if (!w) break;
    iter++;
    td = refine(g, td, *w, k);
    unsigned __int128 after = track_phi ? potential(td, k) : 0;
    if (track_phi) {
      internal_check(after < before, "refinement must decrease the potential");
      internal_check((unsigned __int128)iter <= budget,
                     "refinement count exceeded the potential budget");
    }
    if (trace) trace->push_back({iter, before, after, w->t1, w->t2, w->dist, w->order});
    before = after;
  }
  return td;
}

}  // namespace

TreeDecomposition k_lean_td(const Graph& g, int k, std::vector<RefinementStep>* trace) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  TreeDecomposition td;
  for (const auto& comp : connected_components(g)) td.bags.push_back(comp);
  for (int i = 1; i < td.node_count(); i++) td.edges.push_back({i - 1, i});
  td.root = td.node_count() == 0 ? -1 : 0;
  return improve_to_lean(g, k, std::move(td), trace);
}

TreeDecomposition k_lean_td_from(const Graph& g, int k, const TreeDecomposition& hint,
                                 std::vector<RefinementStep>* trace) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  TdValidation val = validate(g, hint);
  if (!val.pass) throw std::invalid_argument("invalid tree decomposition: " + val.violation);
  if (adhesion_size(g, hint) >= k)
    throw std::invalid_argument("adhesion size must stay below k");
  return improve_to_lean(g, k, hint, trace);
}

}  // namespace klean
