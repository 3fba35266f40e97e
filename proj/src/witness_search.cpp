#include "klean/witness_search.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "klean/check.hpp"

namespace klean {

namespace {

constexpr uint16_t kNever = 0xffff;  // adjacent or identical pair: never an anchor
constexpr int kProbeCap = 32;        // anchored min-cut probes per (pair, level)
constexpr int64_t kSubsetBudget = 20000;  // max flow calls for a bag-subset scan

Bitset to_bits(const std::vector<int>& xs, int n) {
  Bitset b(n);
  for (int x : xs) b.set(x);
  return b;
}

// C(m, r), saturating to cap + 1.
int64_t comb_capped(int m, int r, int64_t cap) {
  if (r < 0 || r > m) return 0;
  int64_t x = 1;
  for (int i = 1; i <= r; i++) {
    x = x * (m - r + i) / i;
    if (x > cap) return cap + 1;
  }
  return x;
}

// Calls fn with every r-subset of items in lexicographic index order until fn
// returns true. Returns whether the walk was stopped.
template <class F>
bool for_each_combo(const std::vector<int>& items, int r, F&& fn) {
  int m = int(items.size());
  if (r > m) return false;
  std::vector<int> ix(r), pick(r);
  std::iota(ix.begin(), ix.end(), 0);
  while (true) {
    for (int i = 0; i < r; i++) pick[i] = items[ix[i]];
    if (fn(pick)) return true;
    int i = r - 1;
    while (i >= 0 && ix[i] == m - r + i) i--;
    if (i < 0) return false;
    ix[i]++;
    for (int j = i + 1; j < r; j++) ix[j] = ix[j - 1] + 1;
  }
}

}  // namespace

// Everything find() derives from the current decomposition: rooted structure,
// bag bitsets, and the all-pairs (tree distance, smallest path adhesion)
// tables computed with one tree BFS per node.
struct WitnessSearch::PairScan {
  const TreeDecomposition* td = nullptr;
  RootedView rv;
  std::vector<Bitset> bagbits;
  std::vector<std::vector<int>> dist;
  std::vector<std::vector<int>> alpha;  // INT_MAX on the diagonal (empty path)
};

WitnessSearch::WitnessSearch(const Graph& g, int k)
    : g_(&g), k_(k), n_(g.vertex_count()), net_(g) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (n_ >= int(kNever)) throw std::invalid_argument("graph too large for witness search");
  // flow* values only ever face thresholds below min(k, n), so the table is
  // capped there and a common-neighbor count certifies "at least the cap"
  // without running a flow.
  cap_limit_ = std::min(k_, std::max(n_, 1));
  kappa0_ = cap_limit_;
  fstar_.assign(n_, std::vector<uint16_t>(n_, kNever));
  for (int u = 0; u < n_; u++) {
    for (int v = u + 1; v < n_; v++) {
      if (g.has_edge(u, v)) continue;
      int cn = g.neighbor_bits(u).and_count(g.neighbor_bits(v));
      int fs = cn >= cap_limit_ ? cap_limit_ : net_.flow_star(u, v, cap_limit_);
      fstar_[u][v] = fstar_[v][u] = uint16_t(fs);
      kappa0_ = std::min(kappa0_, fs);
    }
  }
}

void WitnessSearch::ensure_anchor_level(int c) {
  while (int(anchors_le_.size()) <= c) {
    int lvl = int(anchors_le_.size());
    std::vector<Bitset> cur =
        lvl == 0 ? std::vector<Bitset>(n_, Bitset(n_)) : anchors_le_.back();
    for (int u = 0; u < n_; u++)
      for (int v = 0; v < n_; v++)
        if (fstar_[u][v] == lvl) cur[u].set(v);
    anchors_le_.push_back(std::move(cur));
  }
}

std::optional<MinimalWitness> WitnessSearch::find(const TreeDecomposition& td) {
  TdValidation val = validate(*g_, td);
  if (!val.pass) throw std::invalid_argument("invalid tree decomposition: " + val.violation);
  if (adhesion_size(*g_, td) >= k_)
    throw std::invalid_argument("adhesion size must stay below k");
  int nodes = td.node_count();
  if (nodes == 0 || kappa0_ >= k_) return std::nullopt;

  PairScan ps;
  ps.td = &td;
  ps.rv = root_decomposition(*g_, td, default_root(td));
  ps.bagbits.assign(nodes, Bitset(n_));
  for (int t = 0; t < nodes; t++)
    for (int v : td.bags[t]) ps.bagbits[t].set(v);

  auto adh = adhesions(*g_, td);
  std::vector<int> asz(adh.size());
  for (size_t e = 0; e < adh.size(); e++) asz[e] = int(adh[e].size());
  std::vector<std::vector<std::pair<int, int>>> nadj(nodes);
  for (int e = 0; e < int(td.edges.size()); e++) {
    auto [s, t] = td.edges[e];
    nadj[s].push_back({t, e});
    nadj[t].push_back({s, e});
  }

  ps.dist.assign(nodes, std::vector<int>(nodes, 0));
  ps.alpha.assign(nodes, std::vector<int>(nodes, INT_MAX));
  std::vector<char> seen(nodes);
  std::vector<int> queue;
  for (int s = 0; s < nodes; s++) {
    std::fill(seen.begin(), seen.end(), 0);
    queue.assign(1, s);
    seen[s] = 1;
    for (size_t h = 0; h < queue.size(); h++) {
      int x = queue[h];
      for (auto [y, e] : nadj[x]) {
        if (seen[y]) continue;
        seen[y] = 1;
        ps.dist[s][y] = ps.dist[s][x] + 1;
        ps.alpha[s][y] = std::min(ps.alpha[s][x], asz[e]);
        queue.push_back(y);
      }
    }
  }

  // Node pairs by ascending (tree distance, BFS index, BFS index): the first
  // pair that admits a witness realizes the smallest possible distance.
  struct Cand {
    int d, i1, i2;
  };
  std::vector<Cand> pairs;
  pairs.reserve(size_t(nodes) * (nodes + 1) / 2);
  for (int i1 = 0; i1 < nodes; i1++)
    for (int i2 = i1; i2 < nodes; i2++)
      pairs.push_back({ps.dist[ps.rv.order[i1]][ps.rv.order[i2]], i1, i2});
  std::sort(pairs.begin(), pairs.end(), [](const Cand& a, const Cand& b) {
    return std::tie(a.d, a.i1, a.i2) < std::tie(b.d, b.i1, b.i2);
  });
  for (const Cand& c : pairs) {
    auto w = scan_pair(ps, ps.rv.order[c.i1], ps.rv.order[c.i2], c.d);
    if (w) return w;
  }
  return std::nullopt;
}

// Exact per-pair detection, levels c ascending. A witness of order c for
// (t1,t2) forces, on each side, a bag vertex strictly inside that side; the
// two are non-adjacent with flow* <= c. So anchor pairs gate the level, and
// either the bounded subset scan (all violating (X1,X2) with an anchor pair
// forced in) or the exhaustive separator scan settles it exactly.
std::optional<MinimalWitness> WitnessSearch::scan_pair(PairScan& ps, int t1, int t2,
                                                       int dist) {
  int b1 = int(ps.td->bags[t1].size());
  int b2 = int(ps.td->bags[t2].size());
  int al = t1 == t2 ? INT_MAX : ps.alpha[t1][t2];
  int cmax = std::min(k_ - 1, std::min(b1, b2) - 1);
  if (al != INT_MAX) cmax = std::min(cmax, al - 1);
  for (int c = 0; c <= cmax; c++) {
    ensure_anchor_level(c);
    int64_t ap = 0;
    for (int u : ps.td->bags[t1]) ap += anchors_le_[c][u].and_count(ps.bagbits[t2]);
    if (ap == 0) continue;
    if (auto cut = probe_anchors(ps, t1, t2, c)) return minimalize(ps, t1, t2, dist, *cut);
    int64_t c1 = comb_capped(b1 - 1, c, kSubsetBudget);
    int64_t c2 = comb_capped(b2 - 1, c, kSubsetBudget);
    bool bounded = c1 <= kSubsetBudget && c2 <= kSubsetBudget && ap * c1 * c2 <= kSubsetBudget;
    auto cut = bounded ? subset_scan(ps, t1, t2, c) : separator_scan(ps, t1, t2, c);
    if (cut) return minimalize(ps, t1, t2, dist, *cut);
  }
  return std::nullopt;
}

// Cheap first tier: the two endpoint-minimal minimum cuts of a few anchor
// pairs often certify the witness outright (pendant-like structure always
// resolves here). Misses are harmless — the exact tiers follow.
std::optional<VertexCut> WitnessSearch::probe_anchors(PairScan& ps, int t1, int t2, int c) {
  int probes = 0;
  for (int u : ps.td->bags[t1]) {
    if (probes >= kProbeCap) break;
    Bitset cand = anchors_le_[c][u];
    cand &= ps.bagbits[t2];
    if (c > 0) cand.subtract(anchors_le_[c - 1][u]);  // lower levels already probed
    for (int v = cand.first(); v >= 0 && probes < kProbeCap; v = cand.next(v + 1)) {
      probes++;
      for (int side = 0; side < 2; side++) {
        SeparatorResult r = net_.proper_separator(side ? v : u, side ? u : v);
        internal_check(r.value <= c, "anchored cut exceeds its level");
        Bitset ab = to_bits(r.cut.a, n_);
        Bitset bb = to_bits(r.cut.b, n_);
        if (ab.and_count(ps.bagbits[t1]) > r.value && bb.and_count(ps.bagbits[t2]) > r.value)
          return std::move(r.cut);
        if (bb.and_count(ps.bagbits[t1]) > r.value && ab.and_count(ps.bagbits[t2]) > r.value)
          return VertexCut{std::move(r.cut.b), std::move(r.cut.a)};
      }
    }
  }
  return std::nullopt;
}

std::optional<VertexCut> WitnessSearch::subset_scan(PairScan& ps, int t1, int t2, int c) {
  const auto& bag1 = ps.td->bags[t1];
  const auto& bag2 = ps.td->bags[t2];
  std::optional<VertexCut> hit;
  std::vector<int> x1(c + 1), x2(c + 1), rest1, rest2;
  for (int u : bag1) {
    Bitset cand = anchors_le_[c][u];
    cand &= ps.bagbits[t2];
    for (int v = cand.first(); v >= 0; v = cand.next(v + 1)) {
      rest1.clear();
      rest2.clear();
      for (int x : bag1)
        if (x != u) rest1.push_back(x);
      for (int x : bag2)
        if (x != v) rest2.push_back(x);
      x1[0] = u;
      x2[0] = v;
      for_each_combo(rest1, c, [&](const std::vector<int>& p1) {
        std::copy(p1.begin(), p1.end(), x1.begin() + 1);
        return for_each_combo(rest2, c, [&](const std::vector<int>& p2) {
          std::copy(p2.begin(), p2.end(), x2.begin() + 1);
          SeparatorResult r = net_.flow_sets(x1, x2, c + 1);
          if (r.value <= c) {
            hit = std::move(r.cut);
            return true;
          }
          return false;
        });
      });
      if (hit) return hit;
    }
  }
  return std::nullopt;
}

// Last tier: every vertex set S of size exactly c in lexicographic order. The
// components of G - S go to one side each; a witness exists iff some
// assignment covers both bag conditions, which a small subset-sum table over
// (|P ∩ bag1|, |P ∩ bag2|) decides.
std::optional<VertexCut> WitnessSearch::separator_scan(PairScan& ps, int t1, int t2, int c) {
  std::vector<int> all(n_);
  std::iota(all.begin(), all.end(), 0);
  std::optional<VertexCut> hit;
  std::vector<char> blocked(n_);
  std::vector<int> queue;
  for_each_combo(all, c, [&](const std::vector<int>& s) {
    std::fill(blocked.begin(), blocked.end(), 0);
    int sb1 = 0, sb2 = 0;
    for (int v : s) {
      blocked[v] = 1;
      if (ps.bagbits[t1].test(v)) sb1++;
      if (ps.bagbits[t2].test(v)) sb2++;
    }
    int need1 = c + 1 - sb1;  // >= 1: |S ∩ bag| <= |S| = c < c + 1
    int need2 = c + 1 - sb2;
    std::vector<std::vector<int>> comps;
    std::vector<int> a, b;
    for (int start = 0; start < n_; start++) {
      if (blocked[start]) continue;
      queue.assign(1, start);
      blocked[start] = 1;
      int ca = 0, cb = 0;
      for (size_t h = 0; h < queue.size(); h++) {
        int x = queue[h];
        if (ps.bagbits[t1].test(x)) ca++;
        if (ps.bagbits[t2].test(x)) cb++;
        for (int y : g_->neighbors(x)) {
          if (blocked[y]) continue;
          blocked[y] = 1;
          queue.push_back(y);
        }
      }
      comps.push_back(queue);
      a.push_back(ca);
      b.push_back(cb);
    }
    int m = int(comps.size());
    // val[i][j]: processing the first i components with capped A-side bag1
    // coverage j, the largest achievable B-side bag2 coverage.
    std::vector<std::vector<int64_t>> val(m + 1, std::vector<int64_t>(need1 + 1, -1));
    val[0][0] = 0;
    for (int i = 0; i < m; i++)
      for (int j = 0; j <= need1; j++) {
        if (val[i][j] < 0) continue;
        int jc = std::min(need1, j + a[i]);
        val[i + 1][jc] = std::max(val[i + 1][jc], val[i][j]);
        val[i + 1][j] = std::max(val[i + 1][j], val[i][j] + b[i]);
      }
    if (val[m][need1] < need2) return false;
    std::vector<char> chosen(m, 0);
    int j = need1;
    int64_t cv = val[m][need1];
    for (int i = m; i > 0; i--) {
      int i0 = i - 1;
      if (val[i0][j] >= 0 && val[i0][j] + b[i0] == cv) {
        cv -= b[i0];
        continue;
      }
      bool found = false;
      for (int j0 = 0; j0 <= need1 && !found; j0++)
        if (val[i0][j0] == cv && std::min(need1, j0 + a[i0]) == j) {
          chosen[i0] = 1;
          j = j0;
          found = true;
        }
      internal_check(found, "separator scan backtrack lost its path");
    }
    VertexCut cut;
    std::vector<char> ina(n_, 0), inb(n_, 0);
    for (int v : s) ina[v] = inb[v] = 1;
    for (int i = 0; i < m; i++)
      for (int v : comps[i]) (chosen[i] ? ina : inb)[v] = 1;
    for (int v = 0; v < n_; v++) {
      if (ina[v]) cut.a.push_back(v);
      if (inb[v]) cut.b.push_back(v);
    }
    hit = std::move(cut);
    return true;
  });
  return hit;
}

// Conditions (2) and (3) of minimality in one weighted flow: the huge uniform
// base makes any smaller separator cheaper than any larger one, and the
// d_{t1,t2} offsets order equal-size separators by their total path distance.
MinimalWitness WitnessSearch::minimalize(PairScan& ps, int t1, int t2, int dist,
                                         const VertexCut& cut) {
  const auto& bag1 = ps.td->bags[t1];
  const auto& bag2 = ps.td->bags[t2];
  std::vector<int> x1, x2;
  std::set_intersection(bag1.begin(), bag1.end(), cut.a.begin(), cut.a.end(),
                        std::back_inserter(x1));
  std::set_intersection(bag2.begin(), bag2.end(), cut.b.begin(), cut.b.end(),
                        std::back_inserter(x2));
  int ord0 = cut_order(cut);
  internal_check(int(x1.size()) > ord0 && int(x2.size()) > ord0,
                 "witness candidate misses a bag condition");
  std::vector<int> dv = path_distance_metric(*g_, *ps.td, t1, t2);
  int64_t base = int64_t(ps.td->node_count()) * int64_t(std::max(n_, 1));
  std::vector<int64_t> weights(n_);
  for (int v = 0; v < n_; v++) weights[v] = base + dv[v];
  SeparatorResult r = net_.min_weight_separator(x1, x2, weights);
  internal_check(r.value <= ord0, "minimalization grew the separator");
  internal_check(r.value < k_, "witness order must stay below k");
  Bitset ab = to_bits(r.cut.a, n_);
  Bitset bb = to_bits(r.cut.b, n_);
  internal_check(ab.and_count(ps.bagbits[t1]) > r.value &&
                     bb.and_count(ps.bagbits[t2]) > r.value,
                 "minimalized witness lost a bag condition");
  MinimalWitness w;
  w.cut = std::move(r.cut);
  w.t1 = t1;
  w.t2 = t2;
  w.separator = std::move(r.separator);
  w.order = r.value;
  w.dist = dist;
  return w;
}

std::vector<int> path_distance_metric(const Graph& g, const TreeDecomposition& td, int t1,
                                      int t2) {
  int nodes = td.node_count();
  if (t1 < 0 || t1 >= nodes || t2 < 0 || t2 >= nodes)
    throw std::invalid_argument("witness node out of range");
  std::vector<std::vector<int>> nadj(nodes);
  for (auto [s, t] : td.edges) {
    nadj[s].push_back(t);
    nadj[t].push_back(s);
  }
  std::vector<int> par(nodes, -2);
  par[t1] = -1;
  std::vector<int> queue{t1};
  for (size_t h = 0; h < queue.size(); h++)
    for (int y : nadj[queue[h]])
      if (par[y] == -2) {
        par[y] = queue[h];
        queue.push_back(y);
      }
  if (par[t2] == -2) throw std::invalid_argument("witness nodes lie in different trees");
  std::vector<int> nd(nodes, -1);
  queue.clear();
  for (int x = t2; x != -1; x = par[x]) {
    nd[x] = 0;
    queue.push_back(x);
  }
  for (size_t h = 0; h < queue.size(); h++)
    for (int y : nadj[queue[h]])
      if (nd[y] < 0) {
        nd[y] = nd[queue[h]] + 1;
        queue.push_back(y);
      }
  std::vector<int> dv(g.vertex_count(), nodes);
  for (int t = 0; t < nodes; t++) {
    if (nd[t] < 0) continue;  // disconnected shapes only arise pre-validation
    for (int v : td.bags[t]) dv[v] = std::min(dv[v], nd[t]);
  }
  return dv;
}

std::optional<MinimalWitness> find_minimal_witness(const Graph& g, const TreeDecomposition& td,
                                                   int k) {
  WitnessSearch ws(g, k);
  return ws.find(td);
}

std::optional<NonLeanWitness> find_non_lean_witness(const Graph& g,
                                                    const TreeDecomposition& td, int k) {
  WitnessSearch ws(g, k);
  auto w = ws.find(td);
  if (!w) return std::nullopt;
  NonLeanWitness r;
  r.cut = std::move(w->cut);
  r.t1 = w->t1;
  r.t2 = w->t2;
  r.separator = std::move(w->separator);
  r.order = w->order;
  return r;
}

}  // namespace klean
