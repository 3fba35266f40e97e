#include "klean/flow.hpp"

#include <algorithm>
#include <stdexcept>

#include "klean/check.hpp"

namespace klean {

int FlowNetwork::add_arc(int from, int to, int64_t cap) {
  int i = int(arcs_.size());
  arcs_.push_back({from, to, cap});
  arcs_.push_back({to, from, 0});
  cap0_.push_back(cap);
  cap0_.push_back(0);
  is_touched_.push_back(0);
  is_touched_.push_back(0);
  out_[from].push_back(i);
  out_[to].push_back(i + 1);
  return i;
}

int FlowNetwork::add_undirected_arc(int a, int b, int64_t cap) {
  int i = add_arc(a, b, cap);
  arcs_[i + 1].cap = cap;
  cap0_[i + 1] = cap;
  return i;
}

void FlowNetwork::touch(int arc) {
  if (!is_touched_[arc]) {
    is_touched_[arc] = 1;
    touched_.push_back(arc);
  }
}

void FlowNetwork::override_cap(int arc, int64_t cap) {
  touch(arc);
  arcs_[arc].cap = cap;
}

void FlowNetwork::truncate_arcs(int count) {
  internal_check(touched_.empty(), "truncate_arcs before reset_flow");
  // Arcs were appended in index order, so the highest index is always the
  // last entry of its endpoint lists.
  for (int i = int(arcs_.size()) - 1; i >= count; i--) {
    out_[arcs_[i].from].pop_back();
    arcs_.pop_back();
    cap0_.pop_back();
    is_touched_.pop_back();
  }
}

void FlowNetwork::reset_flow() {
  for (int i : touched_) {
    arcs_[i].cap = cap0_[i];
    is_touched_[i] = 0;
  }
  touched_.clear();
}

int64_t FlowNetwork::maxflow(int s, int t, int64_t abort_at) {
  int n = node_count();
  if (int(seen_.size()) < n) {
    seen_.resize(n, 0);
    par_.resize(n, -1);
  }
  int64_t flow = 0;
  while (abort_at < 0 || flow < abort_at) {
    stamp_++;
    bfs_queue_.clear();
    bfs_queue_.push_back(s);
    seen_[s] = stamp_;
    bool found = false;
    for (size_t qi = 0; qi < bfs_queue_.size() && !found; qi++) {
      int v = bfs_queue_[qi];
      for (int a : out_[v]) {
        if (arcs_[a].cap <= 0) continue;
        int w = arcs_[a].to;
        if (seen_[w] == stamp_) continue;
        seen_[w] = stamp_;
        par_[w] = a;
        if (w == t) {
          found = true;
          break;
        }
        bfs_queue_.push_back(w);
      }
    }
    if (!found) break;
    int64_t push = INF;
    for (int v = t; v != s; v = arcs_[par_[v]].from)
      push = std::min(push, arcs_[par_[v]].cap);
    for (int v = t; v != s; v = arcs_[par_[v]].from) {
      int a = par_[v];
      touch(a);
      touch(a ^ 1);
      arcs_[a].cap -= push;
      arcs_[a ^ 1].cap += push;
    }
    flow += push;
  }
  return flow;
}

std::vector<char> FlowNetwork::reachable_from(int s) const {
  std::vector<char> r(node_count(), 0);
  std::vector<int> q{s};
  r[s] = 1;
  while (!q.empty()) {
    int v = q.back();
    q.pop_back();
    for (int a : out_[v])
      if (arcs_[a].cap > 0 && !r[arcs_[a].to]) {
        r[arcs_[a].to] = 1;
        q.push_back(arcs_[a].to);
      }
  }
  return r;
}

std::vector<char> FlowNetwork::reachable_to(int t) const {
  std::vector<char> r(node_count(), 0);
  std::vector<int> q{t};
  r[t] = 1;
  while (!q.empty()) {
    int v = q.back();
    q.pop_back();
    // arcs into v are exactly the reverses of arcs out of v
    for (int a : out_[v]) {
      int w = arcs_[a].to;
      if (arcs_[a ^ 1].cap > 0 && !r[w]) {
        r[w] = 1;
        q.push_back(w);
      }
    }
  }
  return r;
}

// --- vertex-split network ---------------------------------------------------

VertexSplitNetwork::VertexSplitNetwork(const Graph& g) : g_(&g) {
  int n = g.vertex_count();
  // node layout: v_in = 2v, v_out = 2v+1, then the two super-terminals
  for (int i = 0; i < 2 * n + 2; i++) net_.add_node();
  src_ = 2 * n;
  snk_ = 2 * n + 1;
  cap_arc_.resize(n);
  for (int v = 0; v < n; v++) cap_arc_[v] = net_.add_arc(2 * v, 2 * v + 1, 1);
  edge_arc_.reserve(g.edge_count());
  for (auto [u, v] : g.edges()) {
    int i = net_.add_arc(2 * u + 1, 2 * v, FlowNetwork::INF);
    net_.add_arc(2 * v + 1, 2 * u, FlowNetwork::INF);
    edge_arc_.push_back(i);
  }
  base_arcs_ = net_.arc_count();
}

SeparatorResult VertexSplitNetwork::run_set_query(const std::vector<int>& x1,
                                                  const std::vector<int>& x2, int abort_at) {
  if (x1.empty() || x2.empty())
    throw std::invalid_argument("flow query with an empty terminal side");
  for (int x : x1)
    if (x < 0 || x >= g_->vertex_count())
      throw std::invalid_argument("flow terminal out of range");
  for (int y : x2)
    if (y < 0 || y >= g_->vertex_count())
      throw std::invalid_argument("flow terminal out of range");
  for (int x : x1) net_.add_arc(src_, 2 * x, FlowNetwork::INF);
  for (int y : x2) net_.add_arc(2 * y + 1, snk_, FlowNetwork::INF);
  int64_t flow = net_.maxflow(src_, snk_, abort_at);

  SeparatorResult res;
  if (abort_at >= 0 && flow >= abort_at) {
    res.value = int(flow);
  } else {
    // minimum reached: read the closest-to-X1 cut off residual reachability
    std::vector<char> r = net_.reachable_from(src_);
    int n = g_->vertex_count();
    for (int v = 0; v < n; v++) {
      bool in_r = r[2 * v], out_r = r[2 * v + 1];
      if (in_r) res.cut.a.push_back(v);
      if (!in_r || !out_r) res.cut.b.push_back(v);
      if (in_r && !out_r) res.separator.push_back(v);
    }
    res.value = int(res.separator.size());
  }
  net_.reset_flow();
  net_.truncate_arcs(base_arcs_);
  return res;
}

SeparatorResult VertexSplitNetwork::flow_sets(const std::vector<int>& x1,
                                              const std::vector<int>& x2, int abort_at) {
  SeparatorResult res = run_set_query(x1, x2, abort_at);
  internal_check(abort_at >= 0 || res.value == int(res.separator.size()),
                 "flow value disagrees with separator size");
  return res;
}

int VertexSplitNetwork::flow_star(int u, int v, int abort_at) {
  if (u == v) throw std::invalid_argument("flow_star needs distinct endpoints");
  if (u < 0 || u >= g_->vertex_count() || v < 0 || v >= g_->vertex_count())
    throw std::invalid_argument("flow_star endpoint out of range");
  int base = 0;
  if (g_->has_edge(u, v)) {
    // The direct edge is exactly one path; count it separately and block its
    // arcs so the flow computation works in G minus uv.
    base = 1;
    const auto& es = g_->edges();
    std::pair<int, int> key(std::min(u, v), std::max(u, v));
    int ei = int(std::lower_bound(es.begin(), es.end(), key) - es.begin());
    net_.override_cap(edge_arc_[ei], 0);
    net_.override_cap(edge_arc_[ei] + 2, 0);
  }
  int64_t inner_abort = abort_at < 0 ? -1 : std::max(0, abort_at - base);
  int64_t flow = net_.maxflow(2 * u + 1, 2 * v, inner_abort);
  net_.reset_flow();
  return base + int(flow);
}

SeparatorResult VertexSplitNetwork::proper_separator(int u, int v, int abort_at) {
  if (u == v) throw std::invalid_argument("proper separator needs distinct endpoints");
  if (u < 0 || u >= g_->vertex_count() || v < 0 || v >= g_->vertex_count())
    throw std::invalid_argument("proper separator endpoint out of range");
  if (g_->has_edge(u, v))
    throw std::invalid_argument("proper separator needs non-adjacent endpoints");
  // Infinite endpoint capacities keep u and v out of the separator; the
  // extraction in run_set_query is otherwise unchanged.
  net_.override_cap(cap_arc_[u], FlowNetwork::INF);
  net_.override_cap(cap_arc_[v], FlowNetwork::INF);
  return run_set_query({u}, {v}, abort_at);
}

SeparatorResult VertexSplitNetwork::min_weight_separator(const std::vector<int>& x1,
                                                         const std::vector<int>& x2,
                                                         const std::vector<int64_t>& weight) {
  int n = g_->vertex_count();
  if (int(weight.size()) != n)
    throw std::invalid_argument("weight vector size differs from vertex count");
  for (int v = 0; v < n; v++) {
    if (weight[v] <= 0) throw std::invalid_argument("vertex weights must be positive");
    net_.override_cap(cap_arc_[v], weight[v]);
  }
  return run_set_query(x1, x2, -1);
}

// --- element network ---------------------------------------------------------

ElementNetwork::ElementNetwork(const Graph& g, const std::vector<int>& u_set)
    : g_(&g), in_u_(g.vertex_count(), 0) {
  for (int v : u_set) {
    if (v < 0 || v >= g.vertex_count())
      throw std::invalid_argument("terminal set contains an invalid vertex");
    in_u_[v] = 1;
  }
  int n = g.vertex_count();
  // v_in = 2v, v_out = 2v+1, then edge nodes: e_in = 2n+2e, e_out = 2n+2e+1
  for (int i = 0; i < 2 * n + 2 * g.edge_count(); i++) net_.add_node();
  for (int v = 0; v < n; v++)
    net_.add_arc(2 * v, 2 * v + 1, in_u_[v] ? FlowNetwork::INF : 1);
  for (int e = 0; e < g.edge_count(); e++) {
    auto [u, v] = g.edges()[e];
    int ein = 2 * n + 2 * e, eout = ein + 1;
    net_.add_arc(ein, eout, 1);
    net_.add_arc(2 * u + 1, ein, FlowNetwork::INF);
    net_.add_arc(eout, 2 * v, FlowNetwork::INF);
    net_.add_arc(2 * v + 1, ein, FlowNetwork::INF);
    net_.add_arc(eout, 2 * u, FlowNetwork::INF);
  }
}

ElementCutResult ElementNetwork::query(int a, int b, int abort_at) {
  if (a == b) throw std::invalid_argument("element cut needs distinct terminals");
  if (a < 0 || a >= g_->vertex_count() || b < 0 || b >= g_->vertex_count() || !in_u_[a] ||
      !in_u_[b])
    throw std::invalid_argument("element cut terminals must belong to the terminal set");
  int64_t flow = net_.maxflow(2 * a + 1, 2 * b, abort_at);
  ElementCutResult res;
  res.value = int(flow);
  if (abort_at < 0 || flow < abort_at) {
    std::vector<char> r = net_.reachable_from(2 * a + 1);
    int n = g_->vertex_count();
    std::vector<char> taken(n, 0);
    for (int v = 0; v < n; v++)
      if (!in_u_[v] && r[2 * v] && !r[2 * v + 1]) {
        res.elements.vertices.push_back(v);
        taken[v] = 1;
      }
    // Canonical form: a cut edge with a deletable endpoint is replaced by
    // that endpoint (smaller one first). Deleting the vertex removes the
    // edge too, so the set stays a cutset of the same size; minimality rules
    // out two edges claiming the same vertex.
    for (int e = 0; e < g_->edge_count(); e++) {
      if (!r[2 * n + 2 * e] || r[2 * n + 2 * e + 1]) continue;
      auto [u, v] = g_->edges()[e];
      int w = !in_u_[u] ? u : !in_u_[v] ? v : -1;
      if (w < 0) {
        res.elements.edges.push_back(g_->edges()[e]);
      } else {
        internal_check(!taken[w], "redundant element in a minimum cut");
        taken[w] = 1;
        res.elements.vertices.push_back(w);
      }
    }
    std::sort(res.elements.vertices.begin(), res.elements.vertices.end());
    internal_check(res.elements.size() == res.value,
                   "element cut size disagrees with flow value");
  }
  net_.reset_flow();
  return res;
}

// --- edge-cut network ---------------------------------------------------------

EdgeCutNetwork::EdgeCutNetwork(const Graph& g) : g_(&g) {
  for (int i = 0; i < g.vertex_count(); i++) net_.add_node();
  for (auto [u, v] : g.edges()) net_.add_undirected_arc(u, v, 1);
}

EdgeCutResult EdgeCutNetwork::query(int u, int v, int abort_at) {
  if (u == v) throw std::invalid_argument("edge cut needs distinct endpoints");
  if (u < 0 || u >= g_->vertex_count() || v < 0 || v >= g_->vertex_count())
    throw std::invalid_argument("edge cut endpoint out of range");
  int64_t flow = net_.maxflow(u, v, abort_at);
  EdgeCutResult res;
  res.value = int(flow);
  if (abort_at < 0 || flow < abort_at) {
    std::vector<char> r = net_.reachable_from(u);
    for (int w = 0; w < g_->vertex_count(); w++)
      (r[w] ? res.side_a : res.side_b).push_back(w);
    for (auto e : g_->edges())
      if (r[e.first] != r[e.second]) res.cutset.push_back(e);
    internal_check(int(res.cutset.size()) == res.value,
                   "edge cutset size disagrees with flow value");
  }
  net_.reset_flow();
  return res;
}

// --- one-shot wrappers ---------------------------------------------------------

SeparatorResult flow_sets(const Graph& g, const std::vector<int>& x1,
                          const std::vector<int>& x2) {
  VertexSplitNetwork net(g);
  return net.flow_sets(x1, x2);
}

int flow_star(const Graph& g, int u, int v) {
  VertexSplitNetwork net(g);
  return net.flow_star(u, v);
}

SeparatorResult min_weight_separator(const Graph& g, const std::vector<int>& x1,
                                     const std::vector<int>& x2,
                                     const std::vector<int64_t>& weight) {
  VertexSplitNetwork net(g);
  return net.min_weight_separator(x1, x2, weight);
}

EdgeCutResult min_edge_cutset(const Graph& g, int u, int v) {
  EdgeCutNetwork net(g);
  return net.query(u, v);
}

ElementCutResult element_cutset(const Graph& g, const std::vector<int>& u_set, int a, int b) {
  ElementNetwork net(g, u_set);
  return net.query(a, b);
}

}  // namespace klean
