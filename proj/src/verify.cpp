#include "kwig/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace kwig {

namespace {

using WordVec = std::vector<std::uint64_t>;

void clear_bit(WordVec& w, std::uint64_t v) { w[v >> 6] &= ~(std::uint64_t(1) << (v & 63)); }
void set_bit(WordVec& w, std::uint64_t v) { w[v >> 6] |= std::uint64_t(1) << (v & 63); }
bool test_bit(const WordVec& w, std::uint64_t v) { return (w[v >> 6] >> (v & 63)) & 1; }

bool any_word(const WordVec& w) {
  for (std::uint64_t x : w) {
    if (x) return true;
  }
  return false;
}

int first_bit(const WordVec& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i]) return static_cast<int>(i * 64 + std::countr_zero(w[i]));
  }
  return -1;
}

template <typename Fn>
void for_each_bit(const std::uint64_t* words, std::size_t nwords, Fn fn) {
  for (std::size_t i = 0; i < nwords; ++i) {
    std::uint64_t x = words[i];
    while (x) {
      fn(i * 64 + std::countr_zero(x));
      x &= x - 1;
    }
  }
}

}  // namespace

// --- connectivity ---------------------------------------------------------

Components components(const ExplicitGraph& g) {
  const std::uint64_t n = g.n();
  const std::size_t w = g.row_words();
  Components out;
  out.label.assign(n, 0);
  WordVec seen(w, 0);
  std::vector<std::uint32_t> stack;
  std::uint32_t comp = 0;
  for (std::uint64_t start = 0; start < n; ++start) {
    if (test_bit(seen, start)) continue;
    set_bit(seen, start);
    out.label[start] = comp;
    stack.assign(1, static_cast<std::uint32_t>(start));
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      const std::uint64_t* row = g.row(v);
      for (std::size_t i = 0; i < w; ++i) {
        std::uint64_t fresh = row[i] & ~seen[i];
        seen[i] |= fresh;
        while (fresh) {
          const std::uint32_t u = static_cast<std::uint32_t>(i * 64 + std::countr_zero(fresh));
          fresh &= fresh - 1;
          out.label[u] = comp;
          stack.push_back(u);
        }
      }
    }
    ++comp;
  }
  out.count = comp;
  return out;
}

bool connected(const ExplicitGraph& g) { return components(g).count <= 1; }

namespace {

// Unit-capacity Dinic on the vertex-split graph: in(v) = 2v, out(v) = 2v+1.
struct SplitFlow {
  int nodes = 0;
  std::vector<int> head, nxt, to, cap, cap0;
  std::vector<int> level, it;
  std::vector<std::uint32_t> bfs_queue;

  explicit SplitFlow(const ExplicitGraph& g) {
    const int n = static_cast<int>(g.n());
    nodes = 2 * n;
    head.assign(nodes, -1);
    const int big = n;  // effectively infinite for vertex cuts
    for (int v = 0; v < n; ++v) add_pair(2 * v, 2 * v + 1, 1);
    for (int v = 0; v < n; ++v) {
      const std::uint64_t* row = g.row(v);
      for_each_bit(row, g.row_words(), [&](std::uint64_t u) {
        if (static_cast<int>(u) > v) {
          add_pair(2 * v + 1, 2 * static_cast<int>(u), big);
          add_pair(2 * static_cast<int>(u) + 1, 2 * v, big);
        }
      });
    }
    cap0 = cap;
    level.assign(nodes, -1);
    it.assign(nodes, -1);
  }

  void add_pair(int a, int b, int c) {
    to.push_back(b);
    cap.push_back(c);
    nxt.push_back(head[a]);
    head[a] = static_cast<int>(to.size()) - 1;
    to.push_back(a);
    cap.push_back(0);
    nxt.push_back(head[b]);
    head[b] = static_cast<int>(to.size()) - 1;
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    level[s] = 0;
    bfs_queue.assign(1, static_cast<std::uint32_t>(s));
    for (std::size_t qi = 0; qi < bfs_queue.size(); ++qi) {
      const int v = static_cast<int>(bfs_queue[qi]);
      for (int a = head[v]; a != -1; a = nxt[a]) {
        if (cap[a] > 0 && level[to[a]] == -1) {
          level[to[a]] = level[v] + 1;
          bfs_queue.push_back(static_cast<std::uint32_t>(to[a]));
        }
      }
    }
    return level[t] != -1;
  }

  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (int& a = it[v]; a != -1; a = nxt[a]) {
      if (cap[a] > 0 && level[to[a]] == level[v] + 1) {
        const int d = dfs(to[a], t, std::min(f, cap[a]));
        if (d > 0) {
          cap[a] -= d;
          cap[a ^ 1] += d;
          return d;
        }
      }
    }
    return 0;
  }

  // Max flow from out(s) to in(t), aborting once `stop_at` is reached.
  int maxflow(int s, int t, int stop_at) {
    std::memcpy(cap.data(), cap0.data(), cap.size() * sizeof(int));
    const int src = 2 * s + 1, dst = 2 * t;
    int flow = 0;
    while (flow < stop_at && bfs(src, dst)) {
      std::copy(head.begin(), head.end(), it.begin());
      while (flow < stop_at) {
        const int f = dfs(src, dst, stop_at - flow);
        if (f == 0) break;
        flow += f;
      }
    }
    return flow;
  }

  // After an unaborted maxflow(s, t, big): vertices whose split arc crosses
  // the residual cut.
  std::vector<std::uint32_t> cut_separator(int s) {
    const int src = 2 * s + 1;
    std::vector<char> reach(nodes, 0);
    reach[src] = 1;
    bfs_queue.assign(1, static_cast<std::uint32_t>(src));
    for (std::size_t qi = 0; qi < bfs_queue.size(); ++qi) {
      const int v = static_cast<int>(bfs_queue[qi]);
      for (int a = head[v]; a != -1; a = nxt[a]) {
        if (cap[a] > 0 && !reach[to[a]]) {
          reach[to[a]] = 1;
          bfs_queue.push_back(static_cast<std::uint32_t>(to[a]));
        }
      }
    }
    std::vector<std::uint32_t> sep;
    for (int v = 0; v * 2 < nodes; ++v) {
      if (reach[2 * v] && !reach[2 * v + 1]) sep.push_back(static_cast<std::uint32_t>(v));
    }
    return sep;
  }
};

}  // namespace

ConnectivityResult vertex_connectivity(const ExplicitGraph& g) {
  const std::uint64_t n = g.n();
  if (n > 4096) throw std::length_error("vertex connectivity supports at most 4096 vertices");
  ConnectivityResult out;
  if (n < 2) {
    out.complete = true;
    return out;
  }
  if (components(g).count > 1) return out;  // kappa 0, empty separator

  std::uint32_t s = 0;
  std::uint64_t min_deg = g.degree(0);
  for (std::uint64_t v = 1; v < n; ++v) {
    const std::uint64_t d = g.degree(v);
    if (d < min_deg) {
      min_deg = d;
      s = static_cast<std::uint32_t>(v);
    }
  }

  int best = static_cast<int>(min_deg);
  int best_s = -1, best_t = -1;
  SplitFlow net(g);
  auto probe = [&](int a, int b) {
    if (best <= 1) return;  // cannot improve: connected means kappa >= 1
    const int f = net.maxflow(a, b, best);
    if (f < best) {
      best = f;
      best_s = a;
      best_t = b;
    }
  };

  std::vector<std::uint32_t> nbrs;
  for (std::uint64_t v = 0; v < n; ++v) {
    if (v == s) continue;
    if (g.edge(s, v)) {
      nbrs.push_back(static_cast<std::uint32_t>(v));
    } else {
      probe(static_cast<int>(s), static_cast<int>(v));
    }
  }
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      if (!g.edge(nbrs[i], nbrs[j])) probe(static_cast<int>(nbrs[i]), static_cast<int>(nbrs[j]));
    }
  }

  out.kappa = static_cast<std::uint32_t>(best);
  out.complete = (out.kappa == n - 1);
  if (best_s >= 0) {
    net.maxflow(best_s, best_t, static_cast<int>(n));
    out.separator = net.cut_separator(best_s);
  } else {
    out.separator = nbrs;  // the neighborhood of the minimum-degree vertex
  }
  return out;
}

bool verify_separator(const ExplicitGraph& g, const std::vector<std::uint32_t>& separator) {
  const std::uint64_t n = g.n();
  std::vector<char> removed(n, 0);
  for (std::uint32_t v : separator) {
    if (v >= n || removed[v]) return false;
    removed[v] = 1;
  }
  // BFS over the surviving vertices.
  std::uint32_t start = n;
  std::uint64_t remaining = 0;
  for (std::uint64_t v = 0; v < n; ++v) {
    if (!removed[v]) {
      ++remaining;
      if (start == n) start = static_cast<std::uint32_t>(v);
    }
  }
  if (remaining <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> stack{start};
  seen[start] = 1;
  std::uint64_t visited = 1;
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    for_each_bit(g.row(v), g.row_words(), [&](std::uint64_t u) {
      if (!removed[u] && !seen[u]) {
        seen[u] = 1;
        ++visited;
        stack.push_back(static_cast<std::uint32_t>(u));
      }
    });
  }
  return visited < remaining;
}

// --- matching -------------------------------------------------------------

namespace {

// Classic O(V^3) blossom-contraction augmenting search.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(const ExplicitGraph& g) : n_(static_cast<int>(g.n())), adj_(n_) {
    for (int v = 0; v < n_; ++v) {
      for_each_bit(g.row(v), g.row_words(), [&](std::uint64_t u) {
        adj_[v].push_back(static_cast<int>(u));
      });
    }
    match_.assign(n_, -1);
  }

  std::vector<std::int32_t> solve() {
    // Greedy warm start.
    for (int v = 0; v < n_; ++v) {
      if (match_[v] != -1) continue;
      for (int u : adj_[v]) {
        if (match_[u] == -1) {
          match_[v] = u;
          match_[u] = v;
          break;
        }
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (match_[v] == -1) {
        const int leaf = find_path(v);
        if (leaf != -1) augment(leaf);
      }
    }
    std::vector<std::int32_t> out(n_);
    for (int v = 0; v < n_; ++v) out[v] = match_[v];
    return out;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> mark(n_, 0);
    for (;;) {
      a = base_[a];
      mark[a] = 1;
      if (match_[a] == -1) break;
      a = p_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (mark[b]) return b;
      b = p_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = 1;
      in_blossom_[base_[match_[v]]] = 1;
      p_[v] = child;
      child = match_[v];
      v = p_[match_[v]];
    }
  }

  int find_path(int root) {
    used_.assign(n_, 0);
    p_.assign(n_, -1);
    base_.resize(n_);
    std::iota(base_.begin(), base_.end(), 0);
    used_[root] = 1;
    std::vector<int> q{root};
    for (std::size_t qi = 0; qi < q.size(); ++qi) {
      const int v = q[qi];
      for (int u : adj_[v]) {
        if (base_[v] == base_[u] || match_[v] == u) continue;
        if (u == root || (match_[u] != -1 && p_[match_[u]] != -1)) {
          const int b = lca(v, u);
          in_blossom_.assign(n_, 0);
          mark_path(v, b, u);
          mark_path(u, b, v);
          for (int i = 0; i < n_; ++i) {
            if (in_blossom_[base_[i]]) {
              base_[i] = b;
              if (!used_[i]) {
                used_[i] = 1;
                q.push_back(i);
              }
            }
          }
        } else if (p_[u] == -1) {
          p_[u] = v;
          if (match_[u] == -1) return u;
          used_[match_[u]] = 1;
          q.push_back(match_[u]);
        }
      }
    }
    return -1;
  }

  void augment(int v) {
    while (v != -1) {
      const int pv = p_[v];
      const int next = match_[pv];
      match_[v] = pv;
      match_[pv] = v;
      v = next;
    }
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_, p_, base_;
  std::vector<char> used_, in_blossom_;
};

}  // namespace

std::vector<std::int32_t> max_matching(const ExplicitGraph& g) {
  if (g.n() > 8192) throw std::length_error("matching supports at most 8192 vertices");
  return BlossomMatcher(g).solve();
}

std::uint64_t matching_size(const std::vector<std::int32_t>& mate) {
  std::uint64_t matched = 0;
  for (std::int32_t m : mate) matched += (m >= 0);
  return matched / 2;
}

bool has_perfect_matching(const ExplicitGraph& g) {
  const std::vector<std::int32_t> mate = max_matching(g);
  return g.n() % 2 == 0 && matching_size(mate) * 2 == g.n();
}

bool verify_matching(const ExplicitGraph& g, const std::vector<std::int32_t>& mate) {
  if (mate.size() != g.n()) return false;
  for (std::uint64_t v = 0; v < g.n(); ++v) {
    const std::int32_t m = mate[v];
    if (m < 0) continue;
    if (static_cast<std::uint64_t>(m) >= g.n()) return false;
    if (mate[m] != static_cast<std::int32_t>(v)) return false;
    if (!g.edge(v, m)) return false;
  }
  return true;
}

// --- hamiltonicity --------------------------------------------------------

bool verify_hamilton_cycle(const ExplicitGraph& g, const std::vector<std::uint32_t>& cycle) {
  const std::uint64_t n = g.n();
  if (n < 3 || cycle.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (std::uint32_t v : cycle) {
    if (v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.edge(cycle[i], cycle[(i + 1) % n])) return false;
  }
  return true;
}

namespace {

HamiltonResult hamilton_exact(const ExplicitGraph& g) {
  const int n = static_cast<int>(g.n());
  HamiltonResult out;
  if (n < 3) {
    out.status = HamiltonResult::Status::exact_absent;
    return out;
  }
  std::vector<std::uint32_t> adj(n, 0);
  for (int v = 0; v < n; ++v) {
    for_each_bit(g.row(v), g.row_words(), [&](std::uint64_t u) { adj[v] |= 1u << u; });
  }
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  // dp[mask] = endpoints of simple paths that start at 0 and cover mask.
  std::vector<std::uint32_t> dp(std::size_t(1) << n, 0);
  dp[1] = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (!(mask & 1)) continue;
    const std::uint32_t ends = dp[mask];
    if (!ends) continue;
    std::uint32_t cand = full & ~mask;
    while (cand) {
      const int v = std::countr_zero(cand);
      cand &= cand - 1;
      if (adj[v] & ends) dp[mask | (1u << v)] |= 1u << v;
    }
  }
  std::uint32_t closers = dp[full] & adj[0];
  if (!closers) {
    out.status = HamiltonResult::Status::exact_absent;
    return out;
  }
  std::uint32_t mask = full;
  std::uint32_t cur = static_cast<std::uint32_t>(std::countr_zero(closers));
  std::vector<std::uint32_t> rev;
  while (mask != 1) {
    rev.push_back(cur);
    const std::uint32_t rest = mask ^ (1u << cur);
    const std::uint32_t prevs = dp[rest] & adj[cur];
    cur = static_cast<std::uint32_t>(std::countr_zero(prevs));
    mask = rest;
  }
  rev.push_back(0);
  out.cycle.assign(rev.rbegin(), rev.rend());
  out.status = HamiltonResult::Status::found;
  return out;
}

HamiltonResult hamilton_rotate(const ExplicitGraph& g, std::uint32_t restarts, Rng& rng) {
  const int n = static_cast<int>(g.n());
  HamiltonResult out;
  if (g.min_degree() < 2 || !connected(g)) {
    out.status = HamiltonResult::Status::exact_absent;  // degree/connectivity obstruction
    return out;
  }
  const std::size_t w = g.row_words();
  std::vector<int> pos(n);
  std::vector<std::uint32_t> path;
  WordVec on_path(w);
  std::vector<std::uint32_t> cand;

  for (std::uint32_t r = 0; r < restarts; ++r) {
    Rng rr = rng.derive(r);
    std::fill(pos.begin(), pos.end(), -1);
    std::fill(on_path.begin(), on_path.end(), 0);
    path.clear();
    const std::uint32_t start = static_cast<std::uint32_t>(rr.next_below(n));
    path.push_back(start);
    pos[start] = 0;
    set_bit(on_path, start);

    const std::uint64_t max_steps = 64ull * n;
    for (std::uint64_t step = 0; step < max_steps; ++step) {
      const std::uint32_t e = path.back();
      // Prefer extending with an unvisited neighbor, chosen at random.
      cand.clear();
      const std::uint64_t* row = g.row(e);
      for (std::size_t i = 0; i < w; ++i) {
        std::uint64_t fresh = row[i] & ~on_path[i];
        while (fresh) {
          cand.push_back(static_cast<std::uint32_t>(i * 64 + std::countr_zero(fresh)));
          fresh &= fresh - 1;
        }
      }
      if (!cand.empty()) {
        const std::uint32_t v = cand[rr.next_below(cand.size())];
        pos[v] = static_cast<int>(path.size());
        path.push_back(v);
        set_bit(on_path, v);
        continue;
      }
      if (path.size() == static_cast<std::size_t>(n) && g.edge(e, path[0])) {
        out.status = HamiltonResult::Status::found;
        out.cycle = path;
        if (verify_hamilton_cycle(g, out.cycle)) return out;
        out = HamiltonResult{};  // should not happen; fall through to restart
        break;
      }
      // Rotate: pick a random neighbor u = path[i] and reverse the suffix
      // after it, making path[i+1] the new endpoint.
      cand.clear();
      for_each_bit(row, w, [&](std::uint64_t u) {
        const int i = pos[u];
        if (i >= 0 && i + 1 < static_cast<int>(path.size())) cand.push_back(static_cast<std::uint32_t>(i));
      });
      if (cand.empty()) break;  // isolated dead end; restart
      const std::uint32_t i = cand[rr.next_below(cand.size())];
      std::reverse(path.begin() + i + 1, path.end());
      for (std::size_t j = i + 1; j < path.size(); ++j) pos[path[j]] = static_cast<int>(j);
    }
  }
  out.status = HamiltonResult::Status::not_found;
  return out;
}

}  // namespace

HamiltonResult hamiltonian_certificate(const ExplicitGraph& g, std::uint32_t restarts, Rng rng) {
  if (g.n() <= 22) return hamilton_exact(g);
  return hamilton_rotate(g, restarts, rng);
}

// --- cliques and independent sets -----------------------------------------

namespace {

std::uint32_t greedy_coloring_count(const ExplicitGraph& g) {
  const std::uint64_t n = g.n();
  // Smallest-last (degeneracy) order.
  std::vector<std::uint32_t> deg(n), order;
  std::vector<char> gone(n, 0);
  for (std::uint64_t v = 0; v < n; ++v) deg[v] = static_cast<std::uint32_t>(g.degree(v));
  order.reserve(n);
  for (std::uint64_t round = 0; round < n; ++round) {
    std::uint32_t best = 0, bestdeg = ~0u;
    for (std::uint64_t v = 0; v < n; ++v) {
      if (!gone[v] && deg[v] < bestdeg) {
        bestdeg = deg[v];
        best = static_cast<std::uint32_t>(v);
      }
    }
    gone[best] = 1;
    order.push_back(best);
    for_each_bit(g.row(best), g.row_words(), [&](std::uint64_t u) {
      if (!gone[u]) --deg[u];
    });
  }
  std::reverse(order.begin(), order.end());
  std::vector<std::int32_t> color(n, -1);
  std::uint32_t used = 0;
  std::vector<char> taken;
  for (std::uint32_t v : order) {
    taken.assign(used + 1, 0);
    for_each_bit(g.row(v), g.row_words(), [&](std::uint64_t u) {
      if (color[u] >= 0 && color[u] <= static_cast<std::int32_t>(used)) taken[color[u]] = 1;
    });
    std::uint32_t c = 0;
    while (c < taken.size() && taken[c]) ++c;
    color[v] = static_cast<std::int32_t>(c);
    used = std::max(used, c + 1);
  }
  return used;
}

// Branch-and-bound maximum clique with greedy-coloring bounds.
class CliqueSearch {
 public:
  CliqueSearch(const ExplicitGraph& g, std::uint64_t budget)
      : n_(static_cast<int>(g.n())), w_((n_ + 63) / 64), budget_(budget) {
    adj_.assign(std::size_t(n_) * w_, 0);
    for (int v = 0; v < n_; ++v) {
      for_each_bit(g.row(v), g.row_words(), [&](std::uint64_t u) {
        adj_[std::size_t(v) * w_ + (u >> 6)] |= std::uint64_t(1) << (u & 63);
      });
    }
    // One scratch slot per recursion level (depth <= n + 1), allocated once
    // so references stay valid across recursive calls.
    pool_order_.resize(n_ + 2);
    pool_colors_.resize(n_ + 2);
  }

  SearchResult run(const ExplicitGraph& g) {
    WordVec all(w_, 0);
    for (int v = 0; v < n_; ++v) set_bit(all, v);
    expand(all);
    SearchResult out;
    out.lower = best_;
    out.exact = !aborted_;
    out.upper = aborted_ ? std::max(best_, greedy_coloring_count(g)) : best_;
    out.witness = best_set_;
    out.nodes = nodes_;
    return out;
  }

 private:
  const std::uint64_t* row(int v) const { return adj_.data() + std::size_t(v) * w_; }

  void expand(WordVec& P) {
    ++nodes_;
    if (nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    // Greedy color classes over P; vertices listed in ascending color.
    std::vector<std::uint32_t>& order = pool_order_[depth_];
    std::vector<std::uint32_t>& colors = pool_colors_[depth_];
    ++depth_;
    order.clear();
    colors.clear();
    WordVec rest = P;
    std::uint32_t c = 0;
    WordVec avail(w_);
    while (any_word(rest)) {
      ++c;
      avail = rest;
      while (true) {
        const int v = first_bit(avail);
        if (v < 0) break;
        order.push_back(static_cast<std::uint32_t>(v));
        colors.push_back(c);
        clear_bit(rest, v);
        clear_bit(avail, v);
        const std::uint64_t* rv = row(v);
        for (std::size_t i = 0; i < avail.size(); ++i) avail[i] &= ~rv[i];
      }
    }
    WordVec child(w_);
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (static_cast<std::uint32_t>(current_.size()) + colors[idx] <= best_) break;
      const std::uint32_t v = order[idx];
      clear_bit(P, v);
      const std::uint64_t* rv = row(v);
      bool empty = true;
      for (std::size_t i = 0; i < child.size(); ++i) {
        child[i] = P[i] & rv[i];
        empty &= (child[i] == 0);
      }
      current_.push_back(v);
      if (empty) {
        if (current_.size() > best_) {
          best_ = static_cast<std::uint32_t>(current_.size());
          best_set_ = current_;
        }
      } else {
        WordVec sub = child;
        expand(sub);
      }
      current_.pop_back();
      if (aborted_) break;
    }
    --depth_;
  }

  int n_;
  std::size_t w_;
  std::uint64_t budget_;
  WordVec adj_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::uint32_t best_ = 0;
  std::vector<std::uint32_t> current_, best_set_;
  std::vector<std::vector<std::uint32_t>> pool_order_, pool_colors_;
  std::size_t depth_ = 0;
};

}  // namespace

SearchResult clique_number(const ExplicitGraph& g, std::uint64_t node_budget) {
  if (g.n() > 4096) throw std::length_error("clique search supports at most 4096 vertices");
  return CliqueSearch(g, node_budget).run(g);
}

SearchResult independence_number(const ExplicitGraph& g, std::uint64_t node_budget) {
  if (g.n() > 4096) throw std::length_error("independence search supports at most 4096 vertices");
  return clique_number(g.complement(), node_budget);
}

bool verify_clique(const ExplicitGraph& g, const std::vector<std::uint32_t>& verts) {
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (verts[i] >= g.n()) return false;
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (verts[i] == verts[j] || !g.edge(verts[i], verts[j])) return false;
    }
  }
  return true;
}

bool verify_independent_set(const ExplicitGraph& g, const std::vector<std::uint32_t>& verts) {
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (verts[i] >= g.n()) return false;
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (verts[i] == verts[j] || g.edge(verts[i], verts[j])) return false;
    }
  }
  return true;
}

bool verify_independent_set_oracle(
    const std::function<bool(std::uint64_t, std::uint64_t)>& has_edge,
    const std::vector<std::uint64_t>& verts) {
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (verts[i] == verts[j] || has_edge(verts[i], verts[j])) return false;
    }
  }
  return true;
}

ChromaticBoundsResult chromatic_bounds(const ExplicitGraph& g, std::uint64_t node_budget) {
  const SearchResult clq = clique_number(g, node_budget);
  const SearchResult ind = independence_number(g, node_budget);
  ChromaticBoundsResult out;
  const std::uint64_t n = g.n();
  const std::uint32_t via_alpha =
      ind.upper == 0 ? 0 : static_cast<std::uint32_t>((n + ind.upper - 1) / ind.upper);
  out.lower = std::max(clq.lower, via_alpha);
  out.upper = std::max(out.lower, greedy_coloring_count(g));
  return out;
}

// --- spectral / regularity -------------------------------------------------

SpectralResult spectral_radius_shifted(const ExplicitGraph& g, DyadicProb p, double tol,
                                       std::uint32_t max_iterations, Rng rng) {
  const std::uint64_t n = g.n();
  SpectralResult out;
  if (n < 2) {
    out.converged = true;
    return out;
  }
  const auto edges = g.edge_list();
  const double pd = static_cast<double>(p.value());
  std::vector<double> x(n), y(n), z(n);

  auto apply = [&](const std::vector<double>& in, std::vector<double>& dst) {
    std::fill(dst.begin(), dst.end(), 0.0);
    for (const auto& [u, v] : edges) {
      dst[u] += in[v];
      dst[v] += in[u];
    }
    double sum = 0.0;
    for (double t : in) sum += t;
    const double shift = pd * sum;
    for (double& t : dst) t -= shift;
  };
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double t : v) s += t * t;
    return std::sqrt(s);
  };

  for (std::uint64_t i = 0; i < n; ++i) x[i] = rng.next_unit() - 0.5;
  double nx = norm(x);
  for (double& t : x) t /= nx;

  for (std::uint32_t it = 1; it <= max_iterations; ++it) {
    apply(x, y);
    apply(y, z);  // z = B^2 x
    double theta = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) theta += x[i] * z[i];
    double rn = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      const double r = z[i] - theta * x[i];
      rn += r * r;
    }
    rn = std::sqrt(rn);
    out.iterations = it;
    if (theta <= 0.0) {  // numerically null operator
      out.lambda = 0.0;
      out.converged = true;
      return out;
    }
    if (rn <= tol * theta) {
      out.lambda = std::sqrt(theta);
      out.converged = true;
      return out;
    }
    const double nz = norm(z);
    if (nz < 1e-300) {
      out.lambda = 0.0;
      out.converged = true;
      return out;
    }
    for (std::uint64_t i = 0; i < n; ++i) x[i] = z[i] / nz;
    out.lambda = std::sqrt(theta);
  }
  return out;  // converged == false; lambda is the last Rayleigh estimate
}

VertexSet make_vertex_set(const ExplicitGraph& g, const std::vector<std::uint32_t>& verts) {
  VertexSet s;
  s.words.assign(g.row_words(), 0);
  for (std::uint32_t v : verts) {
    if (v >= g.n()) throw std::out_of_range("vertex label out of range");
    if (!test_bit(s.words, v)) {
      set_bit(s.words, v);
      ++s.count;
    }
  }
  return s;
}

std::uint64_t edges_between(const ExplicitGraph& g, const VertexSet& a, const VertexSet& b) {
  std::uint64_t total = 0;
  for_each_bit(a.words.data(), a.words.size(), [&](std::uint64_t u) {
    const std::uint64_t* row = g.row(u);
    for (std::size_t i = 0; i < b.words.size(); ++i) total += std::popcount(row[i] & b.words[i]);
  });
  return total;
}

JumblednessReport jumbledness_check(const ExplicitGraph& g, DyadicProb p, long double alpha,
                                    std::uint64_t sample_budget, Rng rng) {
  const std::uint64_t n = g.n();
  const std::size_t w = g.row_words();
  const long double pv = p.value();
  JumblednessReport rep;
  const Components comps = components(g);

  auto random_subset = [&](std::uint64_t size) {
    VertexSet s;
    s.words.assign(w, 0);
    size = std::min(size, n);
    if (size == 0) size = 1;
    while (s.count < size) {
      const std::uint64_t v = rng.next_below(n);
      if (!test_bit(s.words, v)) {
        set_bit(s.words, v);
        ++s.count;
      }
    }
    return s;
  };
  auto full_set = [&]() {
    VertexSet s;
    s.words.assign(w, ~std::uint64_t(0));
    if (n % 64) s.words.back() = (std::uint64_t(1) << (n % 64)) - 1;
    s.count = n;
    return s;
  };
  auto check = [&](const VertexSet& a, const VertexSet& b) {
    if (a.count == 0 || b.count == 0) return;
    const std::uint64_t e = edges_between(g, a, b);
    const long double expect = pv * static_cast<long double>(a.count) * static_cast<long double>(b.count);
    const long double dev = fabsl(static_cast<long double>(e) - expect) /
                            sqrtl(static_cast<long double>(a.count) * static_cast<long double>(b.count));
    ++rep.pairs_checked;
    if (dev > rep.worst_dev) {
      rep.worst_dev = dev;
      rep.worst_u_size = a.count;
      rep.worst_v_size = b.count;
    }
  };

  const std::uint32_t log2n = std::max<std::uint32_t>(1, std::bit_width(n) - 1);
  for (std::uint64_t i = 0; rep.pairs_checked < sample_budget; ++i) {
    switch (i % 6) {
      case 0: {
        const std::uint64_t su = std::uint64_t(1) << rng.next_below(log2n + 1);
        const std::uint64_t sv = std::uint64_t(1) << rng.next_below(log2n + 1);
        check(random_subset(su), random_subset(sv));
        break;
      }
      case 1: {
        const std::uint64_t v = rng.next_below(n);
        std::vector<std::uint32_t> nb;
        for_each_bit(g.row(v), w, [&](std::uint64_t u) { nb.push_back(static_cast<std::uint32_t>(u)); });
        if (!nb.empty()) check(make_vertex_set(g, nb), random_subset(1 + rng.next_below(n)));
        break;
      }
      case 2:
        check(full_set(), full_set());
        break;
      case 3: {
        const VertexSet u = random_subset(1 + rng.next_below(n));
        VertexSet comp;
        comp.words.assign(w, 0);
        const VertexSet whole = full_set();
        for (std::size_t j = 0; j < w; ++j) comp.words[j] = whole.words[j] & ~u.words[j];
        comp.count = n - u.count;
        if (comp.count) check(u, comp);
        break;
      }
      case 4: {
        const std::uint32_t target = static_cast<std::uint32_t>(rng.next_below(comps.count));
        std::vector<std::uint32_t> members;
        for (std::uint64_t v = 0; v < n; ++v) {
          if (comps.label[v] == target) members.push_back(static_cast<std::uint32_t>(v));
        }
        check(make_vertex_set(g, members), full_set());
        break;
      }
      default: {
        std::vector<std::uint32_t> a{static_cast<std::uint32_t>(rng.next_below(n))};
        std::vector<std::uint32_t> b{static_cast<std::uint32_t>(rng.next_below(n))};
        check(make_vertex_set(g, a), make_vertex_set(g, b));
        break;
      }
    }
  }
  rep.within = rep.worst_dev <= alpha * (1.0L + 1e-6L) + 1e-9L;
  return rep;
}

DegreeProfile degree_codegree_profile(const ExplicitGraph& g, DyadicProb p) {
  const std::uint64_t n = g.n();
  if (n < 3) throw std::invalid_argument("profile needs at least 3 vertices");
  const std::size_t w = g.row_words();
  const long double pv = p.value();
  DegreeProfile out;
  out.min_degree = g.min_degree();
  out.max_degree = g.max_degree();
  const long double deg_target = pv * static_cast<long double>(n - 1);
  for (std::uint64_t v = 0; v < n; ++v) {
    const long double dev = fabsl(static_cast<long double>(g.degree(v)) / deg_target - 1.0L);
    out.eps_obs = std::max(out.eps_obs, dev);
  }
  const long double codeg_target = pv * pv * static_cast<long double>(n - 2);
  for (std::uint64_t v = 1; v < n; ++v) {
    const std::uint64_t* rv = g.row(v);
    for (std::uint64_t u = 0; u < v; ++u) {
      const std::uint64_t* ru = g.row(u);
      std::uint64_t codeg = 0;
      for (std::size_t i = 0; i < w; ++i) codeg += std::popcount(rv[i] & ru[i]);
      const long double dev = fabsl(static_cast<long double>(codeg) / codeg_target - 1.0L);
      out.gamma_obs = std::max(out.gamma_obs, dev);
    }
  }
  for (std::uint64_t v = 0; v < n; ++v) {
    const std::uint64_t* rv = g.row(v);
    std::uint64_t twice = 0;
    for_each_bit(rv, w, [&](std::uint64_t u) {
      const std::uint64_t* ru = g.row(u);
      for (std::size_t i = 0; i < w; ++i) twice += std::popcount(ru[i] & rv[i]);
    });
    out.max_neighborhood_edges = std::max(out.max_neighborhood_edges, twice / 2);
  }
  return out;
}

// --- small subgraphs -------------------------------------------------------

namespace {

// Injective map search: can pattern vertices (in `ord` order) be assigned to
// the subset slots so that pattern edges (and, if induced, non-edges) match?
bool map_exists(const ExplicitGraph& g, const PatternGraph& h,
                const std::vector<std::uint32_t>& verts, const std::vector<std::uint32_t>& ord,
                bool induced) {
  const std::uint32_t hs = h.s;
  std::vector<std::int32_t> slot_of(hs, -1);
  std::vector<char> used(hs, 0);
  std::vector<std::uint32_t> stack_slot(hs, 0);
  std::uint32_t depth = 0;
  while (true) {
    if (depth == hs) return true;
    const std::uint32_t pv = ord[depth];
    std::uint32_t s = stack_slot[depth];
    bool advanced = false;
    for (; s < hs; ++s) {
      if (used[s]) continue;
      bool ok = true;
      for (std::uint32_t d = 0; d < depth && ok; ++d) {
        const std::uint32_t qv = ord[d];
        const bool need = h.has_edge(pv, qv);
        const bool have = g.edge(verts[s], verts[slot_of[qv]]);
        ok = induced ? (need == have) : (!need || have);
      }
      if (ok) {
        slot_of[pv] = static_cast<std::int32_t>(s);
        used[s] = 1;
        stack_slot[depth] = s + 1;
        ++depth;
        if (depth < hs) stack_slot[depth] = 0;
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      if (depth == 0) return false;
      --depth;
      const std::uint32_t prev = ord[depth];
      used[slot_of[prev]] = 0;
      slot_of[prev] = -1;
    }
  }
}

std::vector<std::uint32_t> pattern_order(const PatternGraph& h) {
  std::vector<std::uint32_t> deg(h.s, 0);
  for (const auto& [u, v] : h.edges) {
    ++deg[u];
    ++deg[v];
  }
  std::vector<std::uint32_t> ord(h.s);
  std::iota(ord.begin(), ord.end(), 0);
  std::stable_sort(ord.begin(), ord.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return deg[a] > deg[b]; });
  return ord;
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (r > (std::uint64_t(1) << 62) / n) return ~std::uint64_t(0);
    r = r * (n - k + i) / i;
  }
  return r;
}

template <typename Fn>
void for_each_subset(std::uint64_t n, std::uint32_t size, Fn fn) {
  std::vector<std::uint32_t> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  if (size == 0 || size > n) return;
  while (true) {
    fn(idx);
    std::int32_t i = static_cast<std::int32_t>(size) - 1;
    while (i >= 0 && idx[i] == n - size + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (std::uint32_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::uint64_t count_spanning_copies(const ExplicitGraph& g, const PatternGraph& h,
                                    std::uint64_t subset_budget) {
  if (h.s > 6) throw std::length_error("subgraph counting supports patterns on at most 6 vertices");
  if (binom(g.n(), h.s) > subset_budget) {
    throw std::length_error("subset enumeration exceeds the given budget");
  }
  const std::vector<std::uint32_t> ord = pattern_order(h);
  std::uint64_t count = 0;
  for_each_subset(g.n(), h.s, [&](const std::vector<std::uint32_t>& verts) {
    if (map_exists(g, h, verts, ord, false)) ++count;
  });
  return count;
}

InducedSearchResult find_induced_copy(const ExplicitGraph& g, const PatternGraph& h,
                                      std::uint64_t subset_budget) {
  if (h.s > 6) throw std::length_error("subgraph search supports patterns on at most 6 vertices");
  if (binom(g.n(), h.s) > subset_budget) {
    throw std::length_error("subset enumeration exceeds the given budget");
  }
  const std::vector<std::uint32_t> ord = pattern_order(h);
  InducedSearchResult out;
  for_each_subset(g.n(), h.s, [&](const std::vector<std::uint32_t>& verts) {
    if (!out.found && map_exists(g, h, verts, ord, true)) {
      out.found = true;
      out.witness = verts;
    }
  });
  return out;
}

bool verify_pattern_copy(const std::function<bool(std::uint64_t, std::uint64_t)>& has_edge,
                         const PatternGraph& h, const std::vector<std::uint64_t>& verts,
                         bool induced) {
  if (verts.size() != h.s) return false;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (verts[i] == verts[j]) return false;
      const bool need = h.has_edge(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
      const bool have = has_edge(verts[i], verts[j]);
      if (induced ? (need != have) : (need && !have)) return false;
    }
  }
  return true;
}

bool has_triangle(const ExplicitGraph& g) {
  const std::size_t w = g.row_words();
  for (std::uint64_t v = 0; v < g.n(); ++v) {
    const std::uint64_t* rv = g.row(v);
    bool hit = false;
    for_each_bit(rv, w, [&](std::uint64_t u) {
      if (hit || u <= v) return;
      const std::uint64_t* ru = g.row(u);
      for (std::size_t i = 0; i < w; ++i) {
        if (ru[i] & rv[i]) {
          hit = true;
          return;
        }
      }
    });
    if (hit) return true;
  }
  return false;
}

// --- expansion probe -------------------------------------------------------

HksReport hks_conditions_probe(const ExplicitGraph& g, std::uint64_t budget, Rng rng) {
  const std::uint64_t n = g.n();
  const std::size_t w = g.row_words();
  HksReport rep;
  const std::uint32_t log2n = std::max<std::uint32_t>(1, std::bit_width(n) - 1);
  rep.split_size = static_cast<std::uint32_t>((n + log2n - 1) / log2n);
  const std::uint64_t max_small = std::max<std::uint64_t>(1, n / 170);

  auto boundary_size = [&](const std::vector<std::uint32_t>& verts) {
    WordVec in_set(w, 0), nbr(w, 0);
    for (std::uint32_t v : verts) set_bit(in_set, v);
    for (std::uint32_t v : verts) {
      const std::uint64_t* row = g.row(v);
      for (std::size_t i = 0; i < w; ++i) nbr[i] |= row[i];
    }
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < w; ++i) c += std::popcount(nbr[i] & ~in_set[i]);
    return c;
  };
  auto consider_small = [&](const std::vector<std::uint32_t>& verts) {
    if (verts.empty() || verts.size() > max_small || rep.expansion_violation) return;
    ++rep.candidates_checked;
    const std::uint64_t b = boundary_size(verts);
    if (b < 12 * verts.size()) {
      rep.expansion_violation = true;
      rep.bad_set = verts;
      rep.observed_boundary = b;
    }
  };

  // Condition (i): all singletons first (cheap: boundary is the degree).
  for (std::uint64_t v = 0; v < n && !rep.expansion_violation; ++v) {
    ++rep.candidates_checked;
    if (g.degree(v) < 12) {
      rep.expansion_violation = true;
      rep.bad_set = {static_cast<std::uint32_t>(v)};
      rep.observed_boundary = g.degree(v);
    }
  }
  // Random and BFS-grown small sets.
  for (std::uint64_t i = 0; i < budget && !rep.expansion_violation; ++i) {
    const std::uint64_t size = 1 + rng.next_below(max_small);
    std::vector<std::uint32_t> verts;
    if (i % 2 == 0) {
      WordVec mask(w, 0);
      while (verts.size() < size) {
        const std::uint64_t v = rng.next_below(n);
        if (!test_bit(mask, v)) {
          set_bit(mask, v);
          verts.push_back(static_cast<std::uint32_t>(v));
        }
      }
    } else {
      // Grow along edges from a random start; stalls stay partial.
      WordVec mask(w, 0);
      std::uint64_t v = rng.next_below(n);
      set_bit(mask, v);
      verts.push_back(static_cast<std::uint32_t>(v));
      while (verts.size() < size) {
        const std::uint32_t from = verts[rng.next_below(verts.size())];
        std::vector<std::uint32_t> fresh;
        for_each_bit(g.row(from), w, [&](std::uint64_t u) {
          if (!test_bit(mask, u)) fresh.push_back(static_cast<std::uint32_t>(u));
        });
        if (fresh.empty()) break;
        const std::uint32_t pick = fresh[rng.next_below(fresh.size())];
        set_bit(mask, pick);
        verts.push_back(pick);
      }
    }
    consider_small(verts);
  }

  // Condition (ii): disjoint equal-size parts with no crossing edge.  A
  // random part U plus the set of vertices with no neighbor in U finds any
  // bipartition-style failure quickly.
  const std::uint32_t m = rep.split_size;
  auto no_edge_partner = [&](const std::vector<std::uint32_t>& u_verts) {
    WordVec u_mask(w, 0);
    for (std::uint32_t v : u_verts) set_bit(u_mask, v);
    std::vector<std::uint32_t> wv;
    for (std::uint64_t v = 0; v < n && wv.size() < m; ++v) {
      if (test_bit(u_mask, v)) continue;
      const std::uint64_t* row = g.row(v);
      bool touches = false;
      for (std::size_t i = 0; i < w && !touches; ++i) touches = (row[i] & u_mask[i]) != 0;
      if (!touches) wv.push_back(static_cast<std::uint32_t>(v));
    }
    return wv;
  };
  auto consider_split = [&](const std::vector<std::uint32_t>& u_verts) {
    if (rep.split_violation || u_verts.size() < m) return;
    std::vector<std::uint32_t> u(u_verts.begin(), u_verts.begin() + m);
    ++rep.candidates_checked;
    const std::vector<std::uint32_t> wv = no_edge_partner(u);
    if (wv.size() >= m) {
      const VertexSet a = make_vertex_set(g, u);
      const VertexSet b = make_vertex_set(g, wv);
      if (edges_between(g, a, b) == 0) {
        rep.split_violation = true;
        rep.part_u = u;
        rep.part_w = wv;
      }
    }
  };
  if (m >= 1 && m <= n) {
    const Components comps = components(g);
    std::vector<std::vector<std::uint32_t>> groups(comps.count);
    for (std::uint64_t v = 0; v < n; ++v) groups[comps.label[v]].push_back(static_cast<std::uint32_t>(v));
    for (const auto& grp : groups) consider_split(grp);
    for (std::uint64_t i = 0; i < budget && !rep.split_violation; ++i) {
      WordVec mask(w, 0);
      std::vector<std::uint32_t> u;
      while (u.size() < m) {
        const std::uint64_t v = rng.next_below(n);
        if (!test_bit(mask, v)) {
          set_bit(mask, v);
          u.push_back(static_cast<std::uint32_t>(v));
        }
      }
      consider_split(u);
    }
  }
  return rep;
}

}  // namespace kwig
