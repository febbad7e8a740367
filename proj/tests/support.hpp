#pragma once

// Independent oracles and generators shared by the unit and acceptance
// tests. Nothing here calls the library routine it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "krsym/groups.hpp"
#include "krsym/krmodel.hpp"
#include "krsym/rexpr.hpp"
#include "krsym/symmetry.hpp"
#include "krsym/treeact.hpp"

namespace krsym::testing {

using Edges = std::vector<std::pair<Point, Point>>;

// --- trees -----------------------------------------------------------------

inline std::vector<std::vector<Point>> adjacency(std::size_t n, const Edges& edges) {
  std::vector<std::vector<Point>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

// Rooted AHU code, written out independently of the library.
inline std::string rooted_code(const std::vector<std::vector<Point>>& adj, Point v, Point parent) {
  std::vector<std::string> kids;
  for (Point w : adj[v])
    if (w != parent) kids.push_back(rooted_code(adj, w, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

// Unrooted canonical code: the least rooted code over all roots.
inline std::string tree_code(std::size_t n, const Edges& edges) {
  const auto adj = adjacency(n, edges);
  std::string best;
  for (Point r = 0; r < n; ++r) {
    std::string c = rooted_code(adj, r, static_cast<Point>(n));
    if (best.empty() || c < best) best = c;
  }
  return best;
}

// All trees on n vertices up to isomorphism, grown leaf by leaf.
inline std::vector<Edges> trees_up_to_iso(std::size_t n) {
  std::vector<Edges> layer{{}};
  for (std::size_t size = 2; size <= n; ++size) {
    std::map<std::string, Edges> next;
    for (const auto& t : layer)
      for (Point v = 0; v + 1 < size; ++v) {
        Edges e = t;
        e.emplace_back(v, static_cast<Point>(size - 1));
        next.emplace(tree_code(size, e), e);
      }
    layer.clear();
    for (auto& [code, e] : next) layer.push_back(std::move(e));
  }
  return layer;
}

// Every automorphism, by backtracking over images with edge checks.
inline std::vector<std::vector<Point>> brute_automorphisms(std::size_t n, const Edges& edges) {
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [a, b] : edges) adj[a][b] = adj[b][a] = true;
  std::vector<std::vector<Point>> out;
  std::vector<Point> img(n);
  std::vector<bool> used(n, false);
  std::function<void(Point)> go = [&](Point v) {
    if (v == n) {
      out.push_back(img);
      return;
    }
    for (Point w = 0; w < n; ++w) {
      if (used[w]) continue;
      bool ok = true;
      for (Point u = 0; u < v && ok; ++u) ok = adj[u][v] == adj[img[u]][w];
      if (!ok) continue;
      used[w] = true;
      img[v] = w;
      go(v + 1);
      used[w] = false;
    }
  };
  go(0);
  return out;
}

// --- groups ----------------------------------------------------------------

// Closure by breadth-first multiplication, independent of close().
inline std::set<std::vector<Point>> bfs_closure(std::size_t degree, const std::vector<std::vector<Point>>& gens) {
  std::vector<Point> id(degree);
  std::iota(id.begin(), id.end(), Point{0});
  std::set<std::vector<Point>> seen{id};
  std::vector<std::vector<Point>> queue{id};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : gens) {
      std::vector<Point> h(degree);
      for (std::size_t i = 0; i < degree; ++i) h[i] = g[queue[head][i]];
      if (seen.insert(h).second) queue.push_back(h);
    }
  }
  return seen;
}

inline std::set<std::vector<Point>> as_set(const PermGroup& g) {
  std::set<std::vector<Point>> out;
  for (const auto& p : g.elements()) out.emplace(p.images().begin(), p.images().end());
  return out;
}

// --- expressions -----------------------------------------------------------

// Random normal-form cyclic expression with atoms Z2..Z6, nesting depth at
// most `depth` and order at most `max_order`.
class ExprGenerator {
 public:
  explicit ExprGenerator(std::uint32_t seed) : rng_(seed) {}

  GroupExpr next(int depth, std::uint64_t max_order) {
    while (true) {
      GroupExpr e = normal_form(raw(depth));
      std::uint64_t o = 0;
      try {
        o = order(e);
      } catch (...) {
        continue;
      }
      if (o <= max_order) return e;
    }
  }

 private:
  GroupExpr raw(int depth) {
    std::uniform_int_distribution<int> kind(0, depth <= 1 ? 0 : 2), atom(2, 6), arity(2, 3);
    switch (kind(rng_)) {
      case 0: return GroupExpr::cyclic(static_cast<std::uint32_t>(atom(rng_)));
      case 1: {
        std::vector<GroupExpr> f;
        for (int i = arity(rng_); i > 0; --i) f.push_back(raw(depth - 1));
        return GroupExpr::prod(std::move(f));
      }
      default: return GroupExpr::wr(raw(depth - 1), GroupExpr::cyclic(static_cast<std::uint32_t>(atom(rng_))));
    }
  }

  std::mt19937 rng_;
};

// Every normal-form expression over cyclic atoms with order <= bound,
// grown to a fixpoint under products and cyclic wreaths.
inline std::vector<GroupExpr> all_cyclic_expressions(std::uint64_t bound) {
  std::map<std::string, GroupExpr> found;
  auto add = [&](const GroupExpr& raw) {
    GroupExpr e = normal_form(raw);
    return found.emplace(pretty_print(e), e).second;
  };
  add(GroupExpr::triv());
  for (std::uint32_t n = 2; n <= bound; ++n) add(GroupExpr::cyclic(n));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<GroupExpr> current;
    for (const auto& [k, e] : found)
      if (!e.is_triv()) current.push_back(e);
    for (std::size_t i = 0; i < current.size(); ++i) {
      const std::uint64_t oi = order(current[i]);
      for (std::size_t j = i; j < current.size(); ++j)
        if (oi * order(current[j]) <= bound) grew |= add(GroupExpr::prod({current[i], current[j]}));
      for (std::uint32_t k = 2; k <= bound; ++k) {
        std::uint64_t o = k;
        bool small = true;
        for (std::uint32_t t = 0; t < k && small; ++t) small = (o *= oi) <= bound;
        if (!small) break;
        grew |= add(GroupExpr::wr(current[i], GroupExpr::cyclic(k)));
      }
    }
  }
  std::vector<GroupExpr> out;
  for (auto& [k, e] : found) out.push_back(e);
  return out;
}

// --- KR models ---------------------------------------------------------------

// Random plane tree model: boundary root with one child, integer heights,
// internal vertices saddles, leaves extremes (some degenerate).
inline KRModel random_model(std::mt19937& rng, std::size_t max_vertices, bool degenerate) {
  std::uniform_int_distribution<std::size_t> size_dist(3, max_vertices);
  const std::size_t n = size_dist(rng);
  std::vector<std::vector<VertexId>> kids(n);
  for (VertexId v = 2; v < n; ++v) {
    std::uniform_int_distribution<VertexId> parent(1, v - 1);
    kids[parent(rng)].push_back(v);
  }
  kids[0].push_back(1);
  std::vector<int> depth(n, 0);
  for (VertexId v = 0; v < n; ++v)
    for (VertexId c : kids[v]) depth[c] = depth[v] + 1;
  std::uniform_int_distribution<int> coin(0, 3);
  std::size_t expanded = n;  // phantom leaves must keep the oracle in range
  KRModel m;
  for (VertexId v = 0; v < n; ++v) {
    KRVertex x;
    x.id = v;
    // Heights mostly follow depth so that symmetric copies coincide, with
    // occasional jitter on leaves to break symmetry.
    int h = depth[v];
    if (kids[v].empty() && coin(rng) == 0) h += 100;
    x.height = std::to_string(h);
    if (v == 0)
      x.kind = VertexKind::Boundary;
    else if (!kids[v].empty())
      x.kind = VertexKind::Saddle;
    else if (degenerate && coin(rng) == 0 && expanded + 3 <= kOracleVertexLimit) {
      x.kind = VertexKind::DegExtreme;
      x.symmetry = 2 + static_cast<std::uint32_t>(coin(rng) % 2);
      expanded += x.symmetry;
    } else
      x.kind = VertexKind::Extreme;
    m.add_vertex(x);
  }
  for (VertexId v = 0; v < n; ++v) m.set_children(v, kids[v]);
  m.set_root(0);
  return m;
}

}  // namespace krsym::testing
