#include "klean/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "klean/check.hpp"
#include "klean/flow.hpp"

namespace klean {

std::vector<std::vector<int>> oracle_kecc(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  int n = g.vertex_count();
  EdgeCutNetwork net(g);
  // relation u ~ v iff every edge cut separating them has size >= k
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (int u = 0; u < n; u++) {
    rel[u][u] = 1;
    for (int v = u + 1; v < n; v++)
      rel[u][v] = rel[v][u] = net.query(u, v, k).value >= k;
  }
  // the relation is an equivalence; confirm transitivity rather than trust it
  for (int a = 0; a < n; a++)
    for (int b = 0; b < n; b++)
      for (int c = 0; c < n; c++)
        internal_check(!(rel[a][b] && rel[b][c]) || rel[a][c],
                       "k-edge-connectivity relation is not transitive");
  std::vector<char> placed(n, 0);
  std::vector<std::vector<int>> classes;
  for (int u = 0; u < n; u++) {
    if (placed[u]) continue;
    std::vector<int> cls;
    for (int v = u; v < n; v++)
      if (rel[u][v]) {
        placed[v] = 1;
        cls.push_back(v);
      }
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::optional<int> oracle_vertex_connectivity(const Graph& g) {
  int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("connectivity needs at least 2 vertices");
  // try separator sizes in ascending order; subsets as bitmasks (n is small)
  for (int size = 0; size <= n - 2; size++) {
    // enumerate all vertex subsets of the given size
    std::vector<int> pick(size);
    for (int i = 0; i < size; i++) pick[i] = i;
    while (true) {
      std::vector<char> removed(n, 0);
      for (int v : pick) removed[v] = 1;
      // count components of G minus the subset
      int comps = 0;
      std::vector<char> seen(n, 0);
      std::vector<int> stack;
      for (int s = 0; s < n; s++) {
        if (removed[s] || seen[s]) continue;
        comps++;
        seen[s] = 1;
        stack.assign(1, s);
        while (!stack.empty()) {
          int v = stack.back();
          stack.pop_back();
          for (int w : g.neighbors(v))
            if (!removed[w] && !seen[w]) {
              seen[w] = 1;
              stack.push_back(w);
            }
        }
      }
      if (comps >= 2) return size;
      // next combination
      int i = size - 1;
      while (i >= 0 && pick[i] == n - size + i) i--;
      if (i < 0) break;
      pick[i]++;
      for (int j = i + 1; j < size; j++) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;  // complete graph
}

namespace {

// Does removing the elements leave a and b in different components?
bool elements_separate(const Graph& g, const CutElements& cut, int a, int b) {
  int n = g.vertex_count();
  std::vector<char> vgone(n, 0);
  for (int v : cut.vertices) vgone[v] = 1;
  std::set<std::pair<int, int>> egone(cut.edges.begin(), cut.edges.end());
  if (vgone[a] || vgone[b]) return false;  // terminals never belong to the cut
  std::vector<char> seen(n, 0);
  std::vector<int> stack{a};
  seen[a] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(v)) {
      if (vgone[w] || seen[w]) continue;
      if (egone.count(std::minmax(v, w))) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  return !seen[b];
}

}  // namespace

GhVerification verify_gomory_hu(const Graph& g, const std::vector<int>& u_set, int k,
                                const GomoryHuTree& gh) {
  int n = g.vertex_count();
  int nodes = gh.node_count;
  // structural checks: these throw, they are not counterexamples
  if (int(gh.gamma.size()) != n)
    throw std::invalid_argument("gamma is not defined on the whole vertex range");
  std::vector<char> in_u(n, 0);
  for (int v : u_set) {
    if (v < 0 || v >= n) throw std::invalid_argument("terminal out of range");
    in_u[v] = 1;
  }
  for (int v = 0; v < n; v++) {
    if (in_u[v] && (gh.gamma[v] < 0 || gh.gamma[v] >= nodes))
      throw std::invalid_argument("gamma not total on the terminal set");
    if (!in_u[v] && gh.gamma[v] != -1)
      throw std::invalid_argument("gamma assigned outside the terminal set");
  }
  if (int(gh.alpha.size()) != int(gh.tree_edges.size()))
    throw std::invalid_argument("alpha is not parallel to the tree edges");
  if (nodes > 0 && int(gh.tree_edges.size()) != nodes - 1)
    throw std::invalid_argument("edge count does not match a tree");
  // connectivity of the tree + adjacency lists
  std::vector<std::vector<std::pair<int, int>>> tadj(nodes);  // (neighbor, edge idx)
  for (int e = 0; e < int(gh.tree_edges.size()); e++) {
    auto [a, b] = gh.tree_edges[e];
    if (a < 0 || a >= nodes || b < 0 || b >= nodes || a == b)
      throw std::invalid_argument("tree edge endpoints invalid");
    tadj[a].push_back({b, e});
    tadj[b].push_back({a, e});
  }
  if (nodes > 0) {
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [w, e] : tadj[v])
        if (!seen[w]) {
          seen[w] = 1;
          cnt++;
          stack.push_back(w);
        }
    }
    if (cnt != nodes) throw std::invalid_argument("tree is not connected");
  }
  for (const CutElements& ce : gh.alpha) {
    for (int v : ce.vertices) {
      if (v < 0 || v >= n) throw std::invalid_argument("alpha vertex out of range");
      if (in_u[v]) throw std::invalid_argument("alpha contains a terminal vertex");
    }
    for (auto e : ce.edges)
      if (!g.has_edge(e.first, e.second))
        throw std::invalid_argument("alpha contains a non-edge");
  }

  GhVerification res;
  auto fail = [&](const std::string& msg) {
    res.pass = false;
    res.counterexample = msg;
    return res;
  };

  // side-of-edge bipartition per tree edge, by BFS avoiding that edge
  std::vector<std::vector<char>> side(gh.tree_edges.size());
  for (int e = 0; e < int(gh.tree_edges.size()); e++) {
    side[e].assign(nodes, 0);
    std::vector<int> stack{gh.tree_edges[e].first};
    side[e][gh.tree_edges[e].first] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [w, f] : tadj[v])
        if (f != e && !side[e][w]) {
          side[e][w] = 1;
          stack.push_back(w);
        }
    }
  }

  std::vector<int> terms = u_set;
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  ElementNetwork oracle_net(g, terms);

  // condition 1: every α(e) really disconnects every pair it separates, at size < k
  for (int e = 0; e < int(gh.tree_edges.size()); e++) {
    if (gh.alpha[e].size() >= k)
      return fail("alpha of tree edge " + std::to_string(e) + " has size " +
                  std::to_string(gh.alpha[e].size()) + " >= k");
    for (int u : terms)
      for (int v : terms) {
        if (u >= v) continue;
        if (side[e][gh.gamma[u]] == side[e][gh.gamma[v]]) continue;
        if (!elements_separate(g, gh.alpha[e], u, v))
          return fail("alpha of tree edge " + std::to_string(e) +
                      " does not separate the terminal pair " + std::to_string(u) + "," +
                      std::to_string(v));
      }
  }

  // condition 2: pairs with element connectivity < k see the exact minimum on
  // their gamma path
  for (size_t i = 0; i < terms.size(); i++)
    for (size_t j = i + 1; j < terms.size(); j++) {
      int u = terms[i], v = terms[j];
      int conn = oracle_net.query(u, v, k).value;
      if (conn >= k) continue;
      // walk the gamma path, track the smallest alpha
      int tu = gh.gamma[u], tv = gh.gamma[v];
      int best = -1;
      for (int e = 0; e < int(gh.tree_edges.size()); e++)
        if (side[e][tu] != side[e][tv])
          if (best == -1 || gh.alpha[e].size() < gh.alpha[best].size()) best = e;
      if (best == -1)
        return fail("terminals " + std::to_string(u) + "," + std::to_string(v) +
                    " share a node but have element connectivity " + std::to_string(conn) +
                    " < k");
      if (gh.alpha[best].size() != conn)
        return fail("gamma path of " + std::to_string(u) + "," + std::to_string(v) +
                    " bottoms out at " + std::to_string(gh.alpha[best].size()) +
                    " but element connectivity is " + std::to_string(conn));
    }

  res.pass = true;
  return res;
}

}  // namespace klean
