#include "klean/sparsifier.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "klean/flow.hpp"

namespace klean {

namespace {

std::string name_set(const std::vector<int>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); i++) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

// Component count of g minus the blocked vertices.
int cc_minus(const Graph& g, const std::vector<char>& blocked) {
  int n = g.vertex_count(), count = 0;
  std::vector<char> seen(n, 0);
  std::vector<int> queue;
  for (int r = 0; r < n; r++) {
    if (blocked[r] || seen[r]) continue;
    count++;
    seen[r] = 1;
    queue.assign(1, r);
    for (size_t h = 0; h < queue.size(); h++)
      for (int y : g.neighbors(queue[h]))
        if (!blocked[y] && !seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
  }
  return count;
}

}  // namespace

Sparsifier ni_sparsify(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  int n = g.vertex_count();

  // Per-vertex (neighbor, edge id) lists, ascending by neighbor because the
  // adjacency lists are sorted.
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  const auto& edges = g.edges();
  for (int e = 0; e < int(edges.size()); e++) {
    auto [u, v] = edges[e];
    adj[u].push_back({v, e});
    adj[v].push_back({u, e});
  }

  std::vector<int> taken(edges.size(), 0);  // forest number, 0 = not selected
  std::vector<char> visited(n, 0);
  std::vector<int> queue;
  for (int forest = 1; forest <= k; forest++) {
    std::fill(visited.begin(), visited.end(), 0);
    for (int root = 0; root < n; root++) {
      if (visited[root]) continue;
      visited[root] = 1;
      queue.assign(1, root);
      for (size_t h = 0; h < queue.size(); h++) {
        int x = queue[h];
        for (auto [y, e] : adj[x])
          if (!taken[e] && !visited[y]) {
            taken[e] = forest;
            visited[y] = 1;
            queue.push_back(y);
          }
      }
    }
  }

  std::vector<std::pair<int, int>> kept;
  Sparsifier sp;
  for (int e = 0; e < int(edges.size()); e++)
    if (taken[e]) {
      kept.push_back(edges[e]);
      sp.forest_index.push_back(taken[e]);
    }
  sp.subgraph = Graph::from_edges(n, kept);  // already in lexicographic order
  return sp;
}

SparsifierCheck verify_sparsifier(const Graph& g, const Sparsifier& sp, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  int n = g.vertex_count();
  if (sp.subgraph.vertex_count() != n) throw std::invalid_argument("vertex sets differ");

  // The ≤ k·n size bound is a promise of ni_sparsify, not part of the
  // k-sparsifier property; an identity subgraph passes for any k.
  for (auto [u, v] : sp.subgraph.edges())
    if (!g.has_edge(u, v))
      return {false, "edge " + std::to_string(u) + "-" + std::to_string(v) +
                         " is not a host edge"};

  // Component counts must agree under deletion of every small vertex set.
  std::vector<char> blocked(n, 0);
  auto check_set = [&](const std::vector<int>& s) -> bool {
    for (int v : s) blocked[v] = 1;
    int host = cc_minus(g, blocked);
    int sub = cc_minus(sp.subgraph, blocked);
    for (int v : s) blocked[v] = 0;
    return host == sub;
  };
  SparsifierCheck fail;
  auto report = [&](const std::vector<int>& s) {
    for (int v : s) blocked[v] = 1;
    fail.counterexample = "deleting S=" + name_set(s) + " leaves " +
                          std::to_string(cc_minus(g, blocked)) + " host vs " +
                          std::to_string(cc_minus(sp.subgraph, blocked)) +
                          " sparsifier components";
    for (int v : s) blocked[v] = 0;
  };

  if (n <= 12) {
    // all subsets of size < k, by size then lexicographically
    for (int size = 0; size < k && size <= n; size++) {
      std::vector<int> ix(size);
      for (int i = 0; i < size; i++) ix[i] = i;
      while (true) {
        if (!check_set(ix)) {
          report(ix);
          return fail;
        }
        if (size == 0) break;
        int i = size - 1;
        while (i >= 0 && ix[i] == n - size + i) i--;
        if (i < 0) break;
        ix[i]++;
        for (int j = i + 1; j < size; j++) ix[j] = ix[j - 1] + 1;
      }
    }
  } else {
    if (!check_set({})) {
      report({});
      return fail;
    }
    std::mt19937 rng(0x5eed);
    std::vector<int> all(n);
    for (int i = 0; i < n; i++) all[i] = i;
    for (int size = 1; size < k && size <= n; size++)
      for (int rep = 0; rep < 2000; rep++) {
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<int> s(all.begin(), all.begin() + size);
        std::sort(s.begin(), s.end());
        if (!check_set(s)) {
          report(s);
          return fail;
        }
      }
  }

  // Removed edges must stay k-connected inside the subgraph.
  if (g.edge_count() != sp.subgraph.edge_count()) {
    VertexSplitNetwork net(sp.subgraph);
    for (auto [u, v] : g.edges())
      if (!sp.subgraph.has_edge(u, v)) {
        int f = net.flow_star(u, v, k);
        if (f < k)
          return {false, "removed edge " + std::to_string(u) + "-" + std::to_string(v) +
                             " has flow* " + std::to_string(f) + " < k"};
      }
  }
  return {true, ""};
}

}  // namespace klean
