#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "krsym/error.hpp"
#include "krsym/reeb.hpp"
#include "reeb_sweep.hpp"

namespace krsym {

std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Min: return "min";
    case NodeKind::Max: return "max";
    case NodeKind::Saddle: return "saddle";
    case NodeKind::Boundary: return "boundary";
  }
  return "?";
}

namespace detail {

MeshEdge Sweep::next(const MeshEdge& e, std::uint32_t gap) const {
  const auto& tris = edge_triangles.at(edge_key(e.first, e.second));
  for (std::uint32_t t : tris) {
    const Triangle& tri = triangles[t];
    // The lone vertex is the one on the other side from its two partners.
    for (int i = 0; i < 3; ++i) {
      const std::uint32_t lone = tri[i], nxt = tri[(i + 1) % 3], prv = tri[(i + 2) % 3];
      if (below(lone, gap) == below(nxt, gap) || below(lone, gap) == below(prv, gap)) continue;
      MeshEdge entry = make_edge(lone, nxt), exit = make_edge(prv, lone);
      if (!below(lone, gap)) std::swap(entry, exit);
      if (entry == e) return exit;
    }
  }
  throw Error(ErrorKind::Malformed, "level walk lost its way");
}

std::vector<MeshEdge> Sweep::circle(const MeshEdge& seed, std::uint32_t gap) const {
  std::vector<MeshEdge> out{seed};
  for (MeshEdge e = next(seed, gap); e != seed; e = next(e, gap)) {
    out.push_back(e);
    if (out.size() > edge_triangles.size()) throw Error(ErrorKind::Malformed, "level walk does not close");
  }
  return out;
}

std::size_t Sweep::link_index(std::uint32_t v, std::uint32_t w) const {
  const auto& l = link[v];
  return static_cast<std::size_t>(std::find(l.begin(), l.end(), w) - l.begin());
}

}  // namespace detail

namespace {

using detail::edge_key;
using detail::make_edge;

std::shared_ptr<detail::Sweep> cone(const Mesh& mesh, const ScalarField& field) {
  const std::size_t nv = mesh.vertex_count();
  if (field.values.size() != nv || field.tokens.size() != nv)
    throw Error(ErrorKind::CountMismatch,
                std::to_string(field.values.size()) + " values for " + std::to_string(nv) + " vertices");
  auto s = std::make_shared<detail::Sweep>();
  s->mesh_vertices = nv;
  s->values = field.values;
  s->tokens = field.tokens;
  s->apex_loop.assign(nv, -1);
  s->triangles = mesh.triangles();
  std::vector<int> tier(nv, 0);

  const auto& loops = mesh.boundary_loops();
  std::vector<std::vector<std::uint32_t>> mesh_nbrs(nv);
  for (const auto& t : mesh.triangles())
    for (int i = 0; i < 3; ++i) mesh_nbrs[t[i]].push_back(t[(i + 1) % 3]), mesh_nbrs[t[(i + 1) % 3]].push_back(t[i]);

  for (std::size_t l = 0; l < loops.size(); ++l) {
    const auto& loop = loops[l];
    const std::string& token = field.tokens[loop.front()];
    for (auto v : loop)
      if (field.tokens[v] != token)
        throw Error(ErrorKind::Malformed, "field is not constant on boundary loop " + std::to_string(l));
    const std::set<std::uint32_t> on_loop(loop.begin(), loop.end());
    bool any_above = false, any_below = false;
    for (auto v : loop)
      for (auto w : mesh_nbrs[v]) {
        if (on_loop.count(w)) continue;
        if (field.tokens[w] == token)
          throw Error(ErrorKind::Malformed, "vertex " + std::to_string(w) + " next to boundary loop " +
                                                std::to_string(l) + " has the boundary value");
        (field.values[w] > field.values[v] ? any_above : any_below) = true;
      }
    if (any_above == any_below)
      throw Error(ErrorKind::Malformed, "field is not one-sided near boundary loop " + std::to_string(l));
    const auto apex = static_cast<std::uint32_t>(s->values.size());
    s->values.push_back(field.values[loop.front()]);
    s->tokens.push_back(token);
    s->apex_loop.push_back(static_cast<int>(l));
    tier.push_back(any_above ? -1 : 1);
    for (std::size_t i = 0; i < loop.size(); ++i)
      s->triangles.push_back({apex, loop[(i + 1) % loop.size()], loop[i]});
  }

  const std::size_t n = s->values.size();
  s->order.resize(n);
  std::iota(s->order.begin(), s->order.end(), 0u);
  std::sort(s->order.begin(), s->order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (s->values[a] != s->values[b]) return s->values[a] < s->values[b];
    if (tier[a] != tier[b]) return tier[a] < tier[b];
    return a < b;
  });
  s->rank.resize(n);
  for (std::uint32_t r = 0; r < n; ++r) s->rank[s->order[r]] = r;

  // Edge incidences and cyclic links.
  std::vector<std::map<std::uint32_t, std::uint32_t>> succ(n);
  for (std::uint32_t t = 0; t < s->triangles.size(); ++t) {
    const Triangle& tri = s->triangles[t];
    for (int i = 0; i < 3; ++i) {
      const std::uint32_t a = tri[i], b = tri[(i + 1) % 3], c = tri[(i + 2) % 3];
      auto [it, inserted] = s->edge_triangles.try_emplace(edge_key(a, b), std::array<std::uint32_t, 2>{t, t});
      if (!inserted) it->second[1] = t;
      succ[a][b] = c;
    }
  }
  s->link.resize(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    auto& l = s->link[v];
    const std::uint32_t start = succ[v].begin()->first;
    std::uint32_t w = start;
    do {
      l.push_back(w);
      auto it = succ[v].find(w);
      if (it == succ[v].end()) throw Error(ErrorKind::Malformed, "vertex " + std::to_string(v) + " has an open link");
      w = it->second;
    } while (w != start && l.size() <= succ[v].size());
    if (l.size() != succ[v].size())
      throw Error(ErrorKind::Malformed, "vertex " + std::to_string(v) + " is not a manifold point");
  }
  return s;
}

}  // namespace

std::vector<std::uint32_t> ReebGraph::incident(std::uint32_t node) const {
  std::vector<std::uint32_t> out;
  for (const auto& a : arcs_)
    if (a.lower == node || a.upper == node) out.push_back(a.id);
  return out;
}

bool ReebGraph::euler_consistent() const {
  if (!sweep_) return false;
  // The coned surface is closed: chi = V - E + F over all its cells.
  const auto& s = *sweep_;
  const long chi = static_cast<long>(s.vertex_count()) - static_cast<long>(s.edge_triangles.size()) +
                   static_cast<long>(s.triangles.size());
  return 2 * (static_cast<long>(nodes_.size()) - static_cast<long>(arcs_.size())) == chi;
}

ReebGraph compute_reeb(const Mesh& mesh, const ScalarField& field) {
  auto sweep = cone(mesh, field);
  auto& s = *sweep;
  ReebGraph g;
  s.node_of_vertex.assign(s.vertex_count(), -1);
  std::unordered_map<std::uint64_t, std::uint32_t> label;  // crossing edge -> arc

  for (std::uint32_t r = 0; r < s.order.size(); ++r) {
    const std::uint32_t v = s.order[r];
    const auto& l = s.link[v];
    const std::size_t k = l.size();
    std::size_t lower_count = 0, runs = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const bool lo = s.rank[l[i]] < r;
      lower_count += lo;
      if (lo && s.rank[l[(i + k - 1) % k]] > r) ++runs;
    }
    if (lower_count == k) runs = 1;

    if (lower_count > 0 && lower_count < k && runs == 1) {
      std::uint32_t arc = 0;
      for (auto w : l)
        if (s.rank[w] < r) {
          arc = label.at(edge_key(w, v));
          label.erase(edge_key(w, v));
        }
      for (auto w : l)
        if (s.rank[w] > r) label[edge_key(v, w)] = arc;
      continue;
    }

    ReebNode node;
    node.id = static_cast<std::uint32_t>(g.nodes_.size());
    node.vertex = v;
    node.value = s.values[v];
    node.token = s.tokens[v];
    node.boundary_loop = s.apex_loop[v];
    node.kind = node.boundary_loop >= 0 ? NodeKind::Boundary
                : lower_count == 0      ? NodeKind::Min
                : lower_count == k      ? NodeKind::Max
                                        : NodeKind::Saddle;
    s.node_of_vertex[v] = static_cast<int>(node.id);
    g.nodes_.push_back(node);

    for (auto w : l) {
      if (s.rank[w] > r) continue;
      const auto key = edge_key(w, v);
      const std::uint32_t arc = label.at(key);
      if (s.arc_top[arc] == MeshEdge{}) {
        g.arcs_[arc].upper = node.id;
        s.arc_top[arc] = make_edge(w, v);
      }
      label.erase(key);
    }
    const auto first_new = static_cast<std::uint32_t>(g.arcs_.size());
    for (auto w : l) {
      if (s.rank[w] < r) continue;
      const MeshEdge seed = make_edge(v, w);
      auto it = label.find(edge_key(v, w));
      if (it != label.end() && it->second >= first_new) continue;
      ReebArc arc;
      arc.id = static_cast<std::uint32_t>(g.arcs_.size());
      arc.lower = node.id;
      arc.sample_edge = seed;
      g.arcs_.push_back(arc);
      s.arc_bottom.push_back(seed);
      s.arc_top.push_back(MeshEdge{});
      for (const auto& e : s.circle(seed, r)) label[edge_key(e.first, e.second)] = arc.id;
    }
  }
  if (!label.empty()) throw Error(ErrorKind::Malformed, "sweep left open level sets");
  g.sweep_ = std::move(sweep);
  return g;
}

std::string to_dot(const ReebGraph& graph) {
  std::ostringstream out;
  out << "graph reeb {\n";
  for (const auto& n : graph.nodes()) out << "  v" << n.id << " [label=\"" << n.token << "\"];\n";
  for (const auto& a : graph.arcs()) out << "  v" << a.lower << " -- v" << a.upper << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace krsym
