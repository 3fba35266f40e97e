#include "klean/tree_decomposition.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"
#include "klean/check.hpp"

namespace klean {

namespace {

// Checks the tree shape alone (ids in range, |E| = |V|-1, connected) so both
// validate() and root_decomposition() agree on what counts as a tree.
std::string tree_shape_violation(const TreeDecomposition& td) {
  int nodes = td.node_count();
  if (nodes == 0) return td.edges.empty() ? "" : "tree edges without nodes";
  if (int(td.edges.size()) != nodes - 1) return "edge count does not match a tree";
  std::vector<std::vector<int>> adj(nodes);
  for (auto [s, t] : td.edges) {
    if (s < 0 || s >= nodes || t < 0 || t >= nodes || s == t)
      return "tree edge endpoints invalid";
    adj[s].push_back(t);
    adj[t].push_back(s);
  }
  std::vector<char> seen(nodes, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int cnt = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        cnt++;
        stack.push_back(y);
      }
  }
  if (cnt != nodes) return "tree is not connected";
  if (td.root < -1 || td.root >= nodes) return "root out of range";
  return "";
}

bool bag_contains(const std::vector<int>& bag, int v) {
  return std::binary_search(bag.begin(), bag.end(), v);
}

}  // namespace

TdValidation validate(const Graph& g, const TreeDecomposition& td) {
  std::string shape = tree_shape_violation(td);
  if (!shape.empty()) return {false, shape};
  int n = g.vertex_count();
  for (const auto& bag : td.bags) {
    for (int v : bag)
      if (v < 0 || v >= n) return {false, "bag contains an out-of-range vertex"};
    if (!std::is_sorted(bag.begin(), bag.end()) ||
        std::adjacent_find(bag.begin(), bag.end()) != bag.end())
      return {false, "bag not sorted or has duplicates"};
  }
  // edge condition
  std::vector<std::vector<int>> occ(n);  // vertex -> nodes whose bag holds it
  for (int t = 0; t < td.node_count(); t++)
    for (int v : td.bags[t]) occ[v].push_back(t);
  for (auto [u, v] : g.edges()) {
    bool covered = false;
    const auto& cand = occ[u].size() <= occ[v].size() ? occ[u] : occ[v];
    int other = occ[u].size() <= occ[v].size() ? v : u;
    for (int t : cand)
      if (bag_contains(td.bags[t], other)) {
        covered = true;
        break;
      }
    if (!covered)
      return {false, "edge condition: edge " + std::to_string(u) + "-" +
                         std::to_string(v) + " lies in no bag"};
  }
  // vertex condition: occurrence subtrees are nonempty and connected; in a
  // tree, #components = #occurrence nodes - #edges joining two occurrences
  std::vector<int> shared(n, 0);
  for (auto [s, t] : td.edges)
    for (int v : td.bags[s])
      if (bag_contains(td.bags[t], v)) shared[v]++;
  for (int v = 0; v < n; v++) {
    if (occ[v].empty())
      return {false, "vertex condition: vertex " + std::to_string(v) + " in no bag"};
    if (int(occ[v].size()) - shared[v] != 1)
      return {false, "vertex condition: occurrences of vertex " + std::to_string(v) +
                         " are disconnected"};
  }
  return {true, ""};
}

int default_root(const TreeDecomposition& td) {
  if (td.root >= 0) return td.root;
  if (td.node_count() == 0) return -1;
  for (int t = 0; t < td.node_count(); t++)
    if (!td.bags[t].empty()) return t;
  return 0;
}

RootedView root_decomposition(const Graph& g, const TreeDecomposition& td, int root) {
  int nodes = td.node_count();
  if (root < 0 || root >= nodes) throw std::invalid_argument("root out of range");
  std::string shape = tree_shape_violation(td);
  if (!shape.empty()) throw std::invalid_argument(shape);

  RootedView rv;
  rv.root = root;
  rv.parent.assign(nodes, -1);
  rv.parent_edge.assign(nodes, -1);
  rv.children.assign(nodes, {});
  rv.depth.assign(nodes, 0);
  rv.forget.assign(g.vertex_count(), -1);

  std::vector<std::vector<std::pair<int, int>>> adj(nodes);  // (neighbor, edge idx)
  for (int i = 0; i < int(td.edges.size()); i++) {
    auto [s, t] = td.edges[i];
    adj[s].emplace_back(t, i);
    adj[t].emplace_back(s, i);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  rv.order.reserve(nodes);
  rv.order.push_back(root);
  std::vector<char> seen(nodes, 0);
  seen[root] = 1;
  for (size_t head = 0; head < rv.order.size(); head++) {
    int x = rv.order[head];
    for (auto [y, e] : adj[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      rv.parent[y] = x;
      rv.parent_edge[y] = e;
      rv.depth[y] = rv.depth[x] + 1;
      rv.children[x].push_back(y);
      rv.order.push_back(y);
    }
  }

  // BFS order visits shallower nodes first, so the first occurrence seen is
  // the one closest to the root.
  std::vector<int> occ(g.vertex_count(), 0), shared(g.vertex_count(), 0);
  for (int t : rv.order)
    for (int v : td.bags[t]) {
      occ[v]++;
      if (rv.forget[v] == -1) rv.forget[v] = t;
    }
  for (auto [s, t] : td.edges)
    for (int v : td.bags[s])
      if (bag_contains(td.bags[t], v)) shared[v]++;
  for (int v = 0; v < g.vertex_count(); v++) {
    if (occ[v] == 0)
      throw std::invalid_argument("vertex " + std::to_string(v) + " occurs in no bag");
    if (occ[v] - shared[v] != 1)
      throw std::invalid_argument("occurrences of vertex " + std::to_string(v) +
                                  " are disconnected");
  }
  return rv;
}

std::vector<std::vector<int>> adhesions(const Graph& g, const TreeDecomposition& td) {
  std::vector<std::vector<int>> out(td.edges.size());
  if (td.node_count() == 0 || td.edges.empty()) return out;
  RootedView rv = root_decomposition(g, td, default_root(td));
  for (int t : rv.order) {
    if (t == rv.root) continue;
    auto& adh = out[rv.parent_edge[t]];
    for (int v : td.bags[t])
      if (rv.forget[v] != t) adh.push_back(v);
  }
  return out;
}

int adhesion_size(const Graph& g, const TreeDecomposition& td) {
  int best = 0;
  for (const auto& adh : adhesions(g, td)) best = std::max(best, int(adh.size()));
  return best;
}

int locate_bag(const Graph& g, const TreeDecomposition& td, const std::vector<int>& w) {
  if (td.node_count() == 0) throw std::invalid_argument("empty decomposition");
  int root = default_root(td);
  if (w.empty()) return root;
  RootedView rv = root_decomposition(g, td, root);
  int t = -1;
  for (int v : w) {
    if (v < 0 || v >= g.vertex_count() || rv.forget[v] == -1)
      throw std::invalid_argument("no bag contains the requested set");
    int f = rv.forget[v];
    if (t == -1 || rv.depth[f] > rv.depth[t]) t = f;
  }
  for (int v : w)
    if (!bag_contains(td.bags[t], v))
      throw std::invalid_argument("no bag contains the requested set");
  return t;
}

TreeDecomposition reduce_total_size(const Graph& g, const TreeDecomposition& td, int k) {
  if (td.node_count() == 0) return td;
  if (adhesion_size(g, td) >= k)
    throw std::invalid_argument("adhesion size must stay below k");
  RootedView rv = root_decomposition(g, td, default_root(td));

  int nodes = td.node_count();
  // A node folds into its parent when its bag adds nothing. Bags never
  // change, so one marking pass reaches the fixpoint: a survivor contained
  // in its new (ancestor) parent would, by the vertex condition, already be
  // contained in its old one.
  std::vector<char> gone(nodes, 0);
  for (int t : rv.order) {
    if (t == rv.root) continue;
    const auto& bag = td.bags[t];
    const auto& pbag = td.bags[rv.parent[t]];
    gone[t] = std::includes(pbag.begin(), pbag.end(), bag.begin(), bag.end());
  }
  if (std::none_of(gone.begin(), gone.end(), [](char c) { return c != 0; })) return td;

  std::vector<int> anchor(nodes, -1);  // nearest surviving ancestor-or-self
  std::vector<int> to_new(nodes, -1);
  TreeDecomposition out;
  for (int t = 0; t < nodes; t++)
    if (!gone[t]) {
      to_new[t] = int(out.bags.size());
      out.bags.push_back(td.bags[t]);
    }
  for (int t : rv.order)
    anchor[t] = !gone[t] ? t : anchor[rv.parent[t]];
  for (int t : rv.order) {
    if (gone[t] || t == rv.root) continue;
    int p = anchor[rv.parent[t]];
    out.edges.emplace_back(to_new[p], to_new[t]);
  }
  out.root = td.root >= 0 ? to_new[anchor[td.root]] : -1;

  internal_check(out.total_size() <= int64_t(k + 1) * g.vertex_count() + 1,
                 "reduced decomposition exceeds the size bound");
  return out;
}

std::string td_to_json(const TreeDecomposition& td) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (int t = 0; t < td.node_count(); t++)
    j["nodes"].push_back({{"id", t}, {"bag", td.bags[t]}});
  j["edges"] = nlohmann::json::array();
  for (auto [s, t] : td.edges) j["edges"].push_back({s, t});
  j["root"] = td.root;
  return j.dump();
}

TreeDecomposition td_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("json parse error: ") + e.what());
  }
  try {
    TreeDecomposition td;
    const auto& nodes = j.at("nodes");
    td.bags.resize(nodes.size());
    std::vector<char> seen(nodes.size(), 0);
    for (const auto& node : nodes) {
      int id = node.at("id").get<int>();
      if (id < 0 || id >= int(nodes.size()) || seen[id])
        throw std::invalid_argument("node ids must be exactly 0..N-1");
      seen[id] = 1;
      td.bags[id] = node.at("bag").get<std::vector<int>>();
      std::sort(td.bags[id].begin(), td.bags[id].end());
      if (std::adjacent_find(td.bags[id].begin(), td.bags[id].end()) !=
          td.bags[id].end())
        throw std::invalid_argument("bag has duplicate vertices");
    }
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("edges must be [a,b] pairs");
      td.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    if (j.contains("root")) td.root = j["root"].get<int>();
    return td;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("malformed decomposition json: ") +
                                e.what());
  }
}

}  // namespace klean
