#include "klean/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace klean {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  Graph g(n);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                  " has an endpoint outside 0.." + std::to_string(n - 1));
    if (u == v)
      throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    auto e = std::minmax(u, v);
    if (!seen.insert(e).second)
      throw std::invalid_argument("duplicate edge " + std::to_string(e.first) + "-" +
                                  std::to_string(e.second));
  }
  for (auto e : seen) {
    g.edges_.push_back(e);
    g.adj_[e.first].push_back(e.second);
    g.adj_[e.second].push_back(e.first);
    g.nbr_[e.first].set(e.second);
    g.nbr_[e.second].set(e.first);
  }
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
  return g;
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1, m = -1;
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;

  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    lineno++;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank line
    if (tag == "c") continue;    // comment
    if (tag == "p") {
      if (n >= 0) fail("repeated header");
      std::string rest;
      if (!(ls >> n >> m) || n < 0 || m < 0 || (ls >> rest))
        fail("malformed header, expected `p <n> <m>`");
      continue;
    }
    if (tag == "e") {
      if (n < 0) fail("edge before header");
      int u, v;
      std::string rest;
      if (!(ls >> u >> v) || (ls >> rest)) fail("malformed edge line, expected `e <u> <v>`");
      if (u < 0 || u >= n || v < 0 || v >= n)
        fail("vertex id out of range 0.." + std::to_string(n - 1));
      if (u == v) fail("self-loop at vertex " + std::to_string(u));
      auto e = std::minmax(u, v);
      if (!seen.insert(e).second)
        fail("duplicate edge " + std::to_string(e.first) + "-" + std::to_string(e.second));
      edges.push_back(e);
      continue;
    }
    fail("unknown line tag `" + tag + "`");
  }
  if (n < 0) throw std::invalid_argument("missing `p <n> <m>` header");
  if (int(edges.size()) != m)
    throw std::invalid_argument("header announced " + std::to_string(m) + " edges, found " +
                                std::to_string(edges.size()));
  return Graph::from_edges(n, edges);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "p " << g.vertex_count() << " " << g.edge_count() << "\n";
  for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
  return out.str();
}

std::vector<int> cut_intersection(const VertexCut& cut) {
  std::vector<int> s;
  std::set_intersection(cut.a.begin(), cut.a.end(), cut.b.begin(), cut.b.end(),
                        std::back_inserter(s));
  return s;
}

void validate_cut(const Graph& g, const VertexCut& cut) {
  int n = g.vertex_count();
  std::vector<char> in_a(n, 0), in_b(n, 0);
  for (int v : cut.a) {
    if (v < 0 || v >= n) throw std::invalid_argument("cut side A contains invalid vertex");
    in_a[v] = 1;
  }
  for (int v : cut.b) {
    if (v < 0 || v >= n) throw std::invalid_argument("cut side B contains invalid vertex");
    in_b[v] = 1;
  }
  for (int v = 0; v < n; v++)
    if (!in_a[v] && !in_b[v])
      throw std::invalid_argument("cut does not cover vertex " + std::to_string(v));
  for (auto [u, v] : g.edges()) {
    bool strict_au = in_a[u] && !in_b[u], strict_bu = in_b[u] && !in_a[u];
    bool strict_av = in_a[v] && !in_b[v], strict_bv = in_b[v] && !in_a[v];
    if ((strict_au && strict_bv) || (strict_bu && strict_av))
      throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                  " crosses the cut");
  }
}

ContractionResult contract_matching(const Graph& g,
                                    const std::vector<std::pair<int, int>>& matching) {
  int n = g.vertex_count();
  std::vector<int> partner(n, -1);
  for (auto [u, v] : matching) {
    if (!g.has_edge(u, v))
      throw std::invalid_argument("matching pair " + std::to_string(u) + "-" +
                                  std::to_string(v) + " is not an edge");
    if (partner[u] != -1 || partner[v] != -1)
      throw std::invalid_argument("matching edges share endpoint");
    partner[u] = v;
    partner[v] = u;
  }
  // Representative of a matched pair is its smaller endpoint; survivors are
  // renumbered by ascending representative.
  std::vector<int> old_to_new(n, -1);
  int next = 0;
  for (int v = 0; v < n; v++) {
    if (partner[v] != -1 && partner[v] < v)
      old_to_new[v] = old_to_new[partner[v]];
    else
      old_to_new[v] = next++;
  }
  std::set<std::pair<int, int>> new_edges;
  for (auto [u, v] : g.edges()) {
    int nu = old_to_new[u], nv = old_to_new[v];
    if (nu != nv) new_edges.insert(std::minmax(nu, nv));
  }
  ContractionResult res;
  res.graph = Graph::from_edges(next, {new_edges.begin(), new_edges.end()});
  res.old_to_new = std::move(old_to_new);
  return res;
}

EliminationResult eliminate(const Graph& g, const std::vector<int>& x) {
  int n = g.vertex_count();
  std::vector<char> gone(n, 0);
  for (int v : x) {
    if (v < 0 || v >= n) throw std::invalid_argument("eliminate: vertex out of range");
    if (gone[v]) throw std::invalid_argument("eliminate: repeated vertex " + std::to_string(v));
    gone[v] = 1;
  }
  for (int v : x)
    for (int u : g.neighbors(v))
      if (gone[u])
        throw std::invalid_argument("eliminate: set is not independent, edge " +
                                    std::to_string(std::min(u, v)) + "-" +
                                    std::to_string(std::max(u, v)));
  std::vector<int> old_to_new(n, -1);
  int next = 0;
  for (int v = 0; v < n; v++)
    if (!gone[v]) old_to_new[v] = next++;
  std::set<std::pair<int, int>> new_edges;
  for (auto [u, v] : g.edges())
    if (!gone[u] && !gone[v]) new_edges.insert({old_to_new[u], old_to_new[v]});
  // Independence keeps every N(v) inside the surviving vertices, so the fill
  // cliques can be added in one pass without tracking elimination order.
  for (int v : x)
    for (size_t i = 0; i < g.neighbors(v).size(); i++)
      for (size_t j = i + 1; j < g.neighbors(v).size(); j++) {
        int a = old_to_new[g.neighbors(v)[i]], b = old_to_new[g.neighbors(v)[j]];
        new_edges.insert(std::minmax(a, b));
      }
  EliminationResult res;
  res.graph = Graph::from_edges(next, {new_edges.begin(), new_edges.end()});
  res.old_to_new = std::move(old_to_new);
  return res;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& x) {
  int n = g.vertex_count();
  std::vector<int> verts = x;
  std::sort(verts.begin(), verts.end());
  if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
    throw std::invalid_argument("induced_subgraph: repeated vertex");
  std::vector<int> old_to_new(n, -1);
  for (size_t i = 0; i < verts.size(); i++) {
    if (verts[i] < 0 || verts[i] >= n)
      throw std::invalid_argument("induced_subgraph: vertex out of range");
    old_to_new[verts[i]] = int(i);
  }
  std::vector<std::pair<int, int>> new_edges;
  for (auto [u, v] : g.edges())
    if (old_to_new[u] != -1 && old_to_new[v] != -1)
      new_edges.push_back(std::minmax(old_to_new[u], old_to_new[v]));
  InducedSubgraph res;
  res.graph = Graph::from_edges(int(verts.size()), new_edges);
  res.vertices = std::move(verts);
  return res;
}

InducedSubgraph clique_fill_side(const Graph& g, const VertexCut& cut) {
  validate_cut(g, cut);
  InducedSubgraph res = induced_subgraph(g, cut.a);
  std::vector<int> sep = cut_intersection(cut);
  std::set<std::pair<int, int>> edges(res.graph.edges().begin(), res.graph.edges().end());
  std::vector<int> old_to_new(g.vertex_count(), -1);
  for (size_t i = 0; i < res.vertices.size(); i++) old_to_new[res.vertices[i]] = int(i);
  for (size_t i = 0; i < sep.size(); i++)
    for (size_t j = i + 1; j < sep.size(); j++)
      edges.insert(std::minmax(old_to_new[sep[i]], old_to_new[sep[j]]));
  res.graph = Graph::from_edges(int(res.vertices.size()), {edges.begin(), edges.end()});
  return res;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  int n = g.vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  std::vector<int> queue;
  for (int s = 0; s < n; s++) {
    if (comp[s] != -1) continue;
    int id = int(out.size());
    out.emplace_back();
    comp[s] = id;
    queue.assign(1, s);
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      out[id].push_back(v);
      for (int u : g.neighbors(v))
        if (comp[u] == -1) {
          comp[u] = id;
          queue.push_back(u);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

}  // namespace klean
