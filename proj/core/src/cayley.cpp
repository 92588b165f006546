#include "grrlab/cayley.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "grrlab/autgrp.hpp"

namespace grr {

void validate_cubic(const CubicGraph& g) {
  const std::uint32_t n = g.n();
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto& nb = g.adj[v];
    if (!(nb[0] < nb[1] && nb[1] < nb[2]))
      throw std::invalid_argument("validate_cubic: neighbors must be sorted and distinct");
    for (std::uint32_t w : nb) {
      if (w >= n) throw std::invalid_argument("validate_cubic: neighbor out of range");
      if (w == v) throw std::invalid_argument("validate_cubic: self loop");
      const auto& back = g.adj[w];
      if (std::find(back.begin(), back.end(), v) == back.end())
        throw std::invalid_argument("validate_cubic: adjacency not symmetric");
    }
  }
}

bool is_connected(const CubicGraph& g) {
  if (g.n() == 0) return false;
  std::vector<std::uint8_t> seen(g.n(), 0);
  std::vector<std::uint32_t> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (std::uint32_t w : g.adj[queue[head]])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push_back(w);
      }
  return reached == g.n();
}

CayleyGraph build_cayley(const GroupTable& T, std::span<const std::uint32_t> S) {
  if (S.size() != 3) throw std::invalid_argument("build_cayley: |S| must be 3");
  std::array<std::uint32_t, 3> s{S[0], S[1], S[2]};
  std::sort(s.begin(), s.end());
  if (s[0] == s[1] || s[1] == s[2])
    throw std::invalid_argument("build_cayley: S must have 3 distinct elements");
  for (std::uint32_t si : s) {
    if (si == T.identity()) throw std::invalid_argument("build_cayley: identity in S");
    if (std::find(s.begin(), s.end(), T.inv(si)) == s.end())
      throw std::invalid_argument("build_cayley: S must be inverse-closed");
  }

  CayleyGraph cg;
  cg.s = s;
  cg.graph.adj.resize(T.size());
  for (std::uint32_t g = 0; g < T.size(); ++g) {
    std::array<std::uint32_t, 3> nb{T.mul(s[0], g), T.mul(s[1], g), T.mul(s[2], g)};
    std::sort(nb.begin(), nb.end());
    cg.graph.adj[g] = nb;
  }
  validate_cubic(cg.graph);
  return cg;
}

long long vertex_stabilizer_size(const CubicGraph& g, std::uint32_t v0, long long cap) {
  validate_cubic(g);
  const std::uint32_t n = g.n();
  if (v0 >= n) throw std::invalid_argument("vertex_stabilizer_size: bad root");

  // BFS layering from v0; doubles as the connectivity check. Any
  // automorphism fixing v0 preserves these layers.
  constexpr std::uint32_t kNone = 0xffffffffu;
  std::vector<std::uint32_t> layer(n, kNone);
  {
    std::vector<std::uint32_t> queue{v0};
    layer[v0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t u = queue[head];
      for (std::uint32_t w : g.adj[u])
        if (layer[w] == kNone) {
          layer[w] = layer[u] + 1;
          queue.push_back(w);
        }
    }
    if (queue.size() != n)
      throw std::invalid_argument("vertex_stabilizer_size: graph not connected");
  }

  std::vector<std::uint32_t> img(n, kNone), rev(n, kNone);
  std::vector<std::uint8_t> mapped_nbrs(n, 0);
  std::uint32_t nmapped = 0;
  long long count = 0;

  auto adjacent = [&](std::uint32_t u, std::uint32_t w) {
    const auto& nb = g.adj[u];
    return nb[0] == w || nb[1] == w || nb[2] == w;
  };
  auto assign = [&](std::uint32_t v, std::uint32_t c) {
    img[v] = c;
    rev[c] = v;
    ++nmapped;
    for (std::uint32_t w : g.adj[v]) ++mapped_nbrs[w];
  };
  auto unassign = [&](std::uint32_t v) {
    rev[img[v]] = kNone;
    img[v] = kNone;
    --nmapped;
    for (std::uint32_t w : g.adj[v]) --mapped_nbrs[w];
  };

  // Most-constrained-first backtracking: forced vertices (a single viable
  // image) are placed without branching; otherwise branch over the viable
  // images of the vertex with the most already-mapped neighbors.
  std::function<bool()> extend = [&]() -> bool {
    if (nmapped == n) {
      ++count;
      return count <= cap;
    }
    std::uint32_t v = kNone;
    int best = 0;
    for (std::uint32_t u = 0; u < n; ++u) {
      if (img[u] != kNone) continue;
      int m = mapped_nbrs[u];
      if (m > best) {
        best = m;
        v = u;
        if (m == 3) break;
      }
    }
    // Connectivity guarantees some unmapped vertex touches the mapped set.
    std::array<std::uint32_t, 3> cands{};
    int ncand = 0;
    std::uint32_t anchor = kNone;
    for (std::uint32_t w : g.adj[v])
      if (img[w] != kNone) {
        anchor = w;
        break;
      }
    for (std::uint32_t c : g.adj[img[anchor]]) {
      if (rev[c] != kNone || layer[c] != layer[v]) continue;
      bool ok = true;
      for (std::uint32_t w : g.adj[v]) {
        if (img[w] == kNone) continue;
        if (!adjacent(c, img[w])) {
          ok = false;
          break;
        }
      }
      if (ok) cands[ncand++] = c;
    }
    for (int i = 0; i < ncand; ++i) {
      assign(v, cands[i]);
      bool keep_going = extend();
      unassign(v);
      if (!keep_going) return false;
    }
    return true;
  };

  assign(v0, v0);
  extend();
  return count;
}

bool is_grr_direct(const GroupTable& T, std::span<const std::uint32_t> S) {
  CayleyGraph cg = build_cayley(T, S);
  if (!is_connected(cg.graph)) return false;
  return vertex_stabilizer_size(cg.graph, 0, 1) == 1;
}

bool is_grr_thm(const GroupTable& T, std::span<const std::uint32_t> S) {
  if (T.ctx().q() == 11)
    throw std::invalid_argument("is_grr_thm: criterion unavailable at q=11");
  if (S.size() != 3) throw std::invalid_argument("is_grr_thm: |S| must be 3");
  for (std::uint32_t si : S) {
    if (si == T.identity()) throw std::invalid_argument("is_grr_thm: identity in S");
    bool has_inv = false;
    for (std::uint32_t sj : S) has_inv = has_inv || sj == T.inv(si);
    if (!has_inv) throw std::invalid_argument("is_grr_thm: S must be inverse-closed");
  }
  if (closure(T, S).size() != T.size())
    throw std::invalid_argument("is_grr_thm: S must generate");
  return pair_stabilizer_fast(T, S).empty();
}

void write_adjacency(std::ostream& os, const CubicGraph& g) {
  os << g.n() << "\n";
  for (std::uint32_t v = 0; v < g.n(); ++v)
    os << v << ": " << g.adj[v][0] << " " << g.adj[v][1] << " " << g.adj[v][2] << "\n";
}

}  // namespace grr
