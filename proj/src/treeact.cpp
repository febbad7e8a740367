#include <algorithm>
#include <numeric>

#include "krsym/error.hpp"
#include "krsym/treeact.hpp"

namespace krsym {

FixSet fix_set(const TreeAction& act) {
  const Tree& t = act.tree();
  std::vector<bool> fixed(t.size(), true);
  for (const auto& g : act.group().generators())
    for (Point p = 0; p < t.size(); ++p)
      if (g[p] != p) fixed[p] = false;
  FixSet fs;
  for (Point p = 0; p < t.size(); ++p)
    if (fixed[p]) fs.vertices.push_back(p);
  for (auto e : t.edges())
    if (fixed[e.first] && fixed[e.second]) fs.edges.push_back(e);
  return fs;
}

PermGroup stabilizer(const TreeAction& act, Point u) {
  if (u >= act.tree().size()) throw Error(ErrorKind::InvalidArgument, "vertex out of range");
  return act.group().subgroup_where([u](const Permutation& g) { return g[u] == u; });
}

PermGroup stabilizer_edge(const TreeAction& act, Point u, Point v) {
  if (!act.tree().has_edge(u, v))
    throw Error(ErrorKind::NotAnEdge, std::to_string(u) + "-" + std::to_string(v) + " is not an edge");
  return act.group().subgroup_where([u, v](const Permutation& g) { return g[u] == u && g[v] == v; });
}

namespace {

// Vertices reachable from v without passing through u.
std::vector<Point> side_vertices(const Tree& t, Point u, Point v) {
  std::vector<Point> out{v};
  std::vector<bool> seen(t.size(), false);
  seen[u] = seen[v] = true;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (Point w : t.neighbors(out[head]))
      if (!seen[w]) {
        seen[w] = true;
        out.push_back(w);
      }
  std::sort(out.begin(), out.end());
  return out;
}

Subtree induced(const Tree& t, std::vector<Point> vertices) {
  Subtree s;
  s.vertices = std::move(vertices);
  for (auto e : t.edges())
    if (std::binary_search(s.vertices.begin(), s.vertices.end(), e.first) &&
        std::binary_search(s.vertices.begin(), s.vertices.end(), e.second))
      s.edges.push_back(e);
  return s;
}

}  // namespace

Subtree branch(const Tree& tree, Point u, Point v) {
  if (!tree.has_edge(u, v))
    throw Error(ErrorKind::NotAnEdge, std::to_string(u) + "-" + std::to_string(v) + " is not an edge");
  auto verts = side_vertices(tree, u, v);
  verts.insert(std::upper_bound(verts.begin(), verts.end(), u), u);
  return induced(tree, std::move(verts));
}

Subtree reduced_branch(const Tree& tree, Point u, Point v) {
  if (!tree.has_edge(u, v))
    throw Error(ErrorKind::NotAnEdge, std::to_string(u) + "-" + std::to_string(v) + " is not an edge");
  return induced(tree, side_vertices(tree, u, v));
}

Permutation r_uv(const TreeAction& act, Point u, Point v, const Permutation& g) {
  const Tree& t = act.tree();
  if (!t.has_edge(u, v))
    throw Error(ErrorKind::NotAnEdge, std::to_string(u) + "-" + std::to_string(v) + " is not an edge");
  if (g.degree() != t.size() || g[u] != u || g[v] != v)
    throw Error(ErrorKind::NotInEdgeStabilizer, "element does not fix edge " + std::to_string(u) + "-" + std::to_string(v));
  std::vector<Point> images(t.size());
  std::iota(images.begin(), images.end(), Point{0});
  for (Point w : side_vertices(t, u, v)) images[w] = g[w];
  return Permutation(std::move(images));
}

TDecomposition is_t_decomposable(const TreeAction& act) {
  const Tree& t = act.tree();
  for (auto [a, b] : t.edges()) {
    const PermGroup stab = stabilizer_edge(act, a, b);
    for (auto [u, v] : {TreeEdge{a, b}, TreeEdge{b, a}}) {
      const auto side = side_vertices(t, u, v);
      for (const auto& g : stab.elements()) {
        std::vector<Point> images(t.size());
        std::iota(images.begin(), images.end(), Point{0});
        for (Point w : side) images[w] = g[w];
        Permutation r(std::move(images));
        if (!act.group().contains(r)) return {false, TDecompositionWitness{u, v, g}};
      }
    }
  }
  return {};
}

PermGroup local_stabilizer(const TreeAction& act, Point u) {
  const auto& nbrs = act.tree().neighbors(u);
  return stabilizer(act, u).restrict_to(nbrs);
}

bool cyclic_family(const PermGroup& g) {
  const auto k = recognize(g).kind;
  return k == GroupClass::Kind::Trivial || k == GroupClass::Kind::Cyclic;
}

bool symmetric_family(const PermGroup& g) {
  const auto cls = recognize(g);
  return cls.kind == GroupClass::Kind::Trivial || cls.kind == GroupClass::Kind::Symmetric ||
         (cls.kind == GroupClass::Kind::Cyclic && cls.n == 2);
}

TTReport check_TT(const TreeAction& act, const GroupFamily& family) {
  TTReport report;
  const FixSet fs = fix_set(act);
  report.a = !fs.vertices.empty();
  if (!report.a) report.details.push_back("(a) Fix(G) is empty");

  const TDecomposition td = is_t_decomposable(act);
  report.b = td.decomposable;
  if (!report.b)
    report.details.push_back("(b) r_" + std::to_string(td.witness->u) + "," + std::to_string(td.witness->v) + "(" +
                             td.witness->g.to_cycle_string() + ") is not in G");

  report.c = true;
  for (Point u = 0; u < act.tree().size(); ++u) {
    const PermGroup loc = local_stabilizer(act, u);
    if (!family(loc)) {
      report.c = false;
      report.details.push_back("(c) local stabilizer at " + std::to_string(u) + " is " + recognize(loc).to_string() +
                               ", outside the family");
    } else if (!is_semi_free(loc)) {
      report.c = false;
      report.details.push_back("(c) local stabilizer at " + std::to_string(u) + " is not semi-free");
    }
  }
  return report;
}

void PartitionAction::validate() const {
  std::vector<int> owner(set_size, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (Point p : blocks[b]) {
      if (p >= set_size || owner[p] >= 0) throw Error(ErrorKind::InvalidAction, "blocks overlap or leave the set");
      owner[p] = static_cast<int>(b);
    }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end())
    throw Error(ErrorKind::InvalidAction, "blocks do not cover the set");
  if (group.degree() != set_size) throw Error(ErrorKind::InvalidAction, "group degree does not match the set");
  for (const auto& g : group.generators())
    for (const auto& block : blocks) {
      const int target = owner[g[block.front()]];
      for (Point p : block)
        if (owner[g[p]] != target) throw Error(ErrorKind::InvalidAction, "group does not preserve the partition");
    }
}

bool partition_decomposable(const PartitionAction& pact, std::span<const std::size_t> subset) {
  for (std::size_t b : subset) {
    const auto& block = pact.blocks.at(b);
    for (const auto& g : pact.group.elements()) {
      if (!std::all_of(block.begin(), block.end(), [&](Point p) {
            return std::find(block.begin(), block.end(), g[p]) != block.end();
          }))
        continue;
      std::vector<Point> images(pact.set_size);
      std::iota(images.begin(), images.end(), Point{0});
      for (Point p : block) images[p] = g[p];
      if (!pact.group.contains(Permutation(std::move(images)))) return false;
    }
  }
  return true;
}

bool partition_decomposable(const PartitionAction& pact) {
  std::vector<std::size_t> all(pact.blocks.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return partition_decomposable(pact, all);
}

PartitionAction branch_partition(const TreeAction& act, Point u) {
  const Tree& t = act.tree();
  std::vector<int> index(t.size(), -1);
  Point next = 0;
  std::vector<Point> points;
  for (Point p = 0; p < t.size(); ++p)
    if (p != u) {
      index[p] = static_cast<int>(next++);
      points.push_back(p);
    }
  PartitionAction pact;
  pact.set_size = points.size();
  for (Point v : t.neighbors(u)) {
    std::vector<Point> block;
    for (Point w : side_vertices(t, u, v)) block.push_back(static_cast<Point>(index[w]));
    pact.blocks.push_back(std::move(block));
  }
  std::vector<Permutation> elements;
  const PermGroup stab = stabilizer(act, u);
  for (const auto& g : stab.elements()) {
    std::vector<Point> images(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) images[i] = static_cast<Point>(index[g[points[i]]]);
    elements.emplace_back(std::move(images));
  }
  pact.group = PermGroup::from_elements(points.size(), std::move(elements));
  return pact;
}

}  // namespace krsym
