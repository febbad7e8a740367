#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "krsym/error.hpp"
#include "krsym/reeb.hpp"
#include "reeb_sweep.hpp"

namespace krsym {

std::string WordLabel::pattern() const {
  if (type == LabelType::Passage) return sign < 0 ? "P-" : "P+";
  return std::string(sign < 0 ? "L-" : "L+") + "[" + branch + "]";
}

CyclicWord CyclicWord::rotated(std::size_t k) const {
  if (labels_.empty()) return *this;
  std::vector<WordLabel> out(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) out[i] = labels_[(i + k) % labels_.size()];
  return CyclicWord(std::move(out));
}

std::vector<std::string> CyclicWord::patterns() const {
  std::vector<std::string> out;
  for (const auto& l : labels_) out.push_back(l.pattern());
  return out;
}

std::vector<std::uint32_t> CyclicWord::loops() const {
  std::vector<std::uint32_t> out;
  for (const auto& l : labels_)
    if (l.type == LabelType::Loop) out.push_back(l.id);
  return out;
}

bool operator==(const CyclicWord& a, const CyclicWord& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return false;
  if (n == 0) return true;
  for (std::size_t k = 0; k < n; ++k) {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = a.labels_[(i + k) % n] == b.labels_[i];
    if (same) return true;
  }
  return false;
}

namespace {

using detail::make_edge;

std::uint32_t gap_below(const detail::Sweep& s, const ReebNode& n) { return s.rank[n.vertex] - 1; }
std::uint32_t gap_above(const detail::Sweep& s, const ReebNode& n) { return s.rank[n.vertex]; }

// The level circle of an arc next to one of its end nodes.
LevelCircle arc_circle(const ReebGraph& g, std::uint32_t arc, std::uint32_t node) {
  const auto& s = g.sweep();
  const ReebArc& a = g.arcs().at(arc);
  if (a.upper == node) return {arc, s.circle(s.arc_top[arc], gap_below(s, g.node(node)))};
  return {arc, s.circle(s.arc_bottom[arc], gap_above(s, g.node(node)))};
}

// Height-aware code of the part of the tree reached from `node` without
// crossing `via`; child codes are sorted so the code ignores plane order.
std::string branch_code(const ReebGraph& g, std::uint32_t node, std::uint32_t via) {
  std::vector<std::string> kids;
  for (std::uint32_t a : g.incident(node)) {
    if (a == via) continue;
    const ReebArc& arc = g.arcs()[a];
    kids.push_back(branch_code(g, arc.lower == node ? arc.upper : arc.lower, a));
  }
  std::sort(kids.begin(), kids.end());
  const ReebNode& n = g.node(node);
  std::string code = "(" + std::string(to_string(n.kind)) + "@" + n.token;
  for (const auto& k : kids) code += k;
  return code + ")";
}

struct RawLoop {
  std::size_t first, last;  // transition indices where the walk leaves and re-enters u
  std::uint32_t other_arc;  // arc of the opposite-side circle walking the same loop
};

struct RawWord {
  std::vector<WordLabel> labels;
  std::vector<RawLoop> loops;  // parallel to the loop labels
};

// Transition index of the link triangle (u, w_i, w_{i+1}) holding a
// non-u crossing edge.
std::size_t transition(const detail::Sweep& s, std::uint32_t u, const MeshEdge& e) {
  const auto& l = s.link[u];
  const std::size_t k = l.size();
  const std::size_t i = s.link_index(u, e.first);
  if (l[(i + 1) % k] == e.second) return i;
  return s.link_index(u, e.second);
}

RawWord raw_word(const ReebGraph& g, const Atom& atom, Side side, std::size_t circle) {
  const ReebNode& node = g.node(atom.node);
  if (node.kind == NodeKind::Min || node.kind == NodeKind::Max)
    throw Error(ErrorKind::ExtremeAtom, "node " + std::to_string(node.id) + " is a local extreme");
  const auto& circles = side == Side::Lower ? atom.lower : atom.upper;
  const auto& others = side == Side::Lower ? atom.upper : atom.lower;
  if (circle >= circles.size()) throw Error(ErrorKind::InvalidArgument, "no such boundary circle");
  const auto& s = g.sweep();
  const std::uint32_t u = node.vertex;
  const auto& edges = circles[circle].edges;
  const std::size_t m = edges.size();
  auto at_u = [&](std::size_t i) { return edges[i % m].first == u || edges[i % m].second == u; };

  std::size_t start = m;
  for (std::size_t i = 0; i < m; ++i)
    if (at_u(i) && !at_u(i + m - 1)) {
      start = i;
      break;
    }
  if (start == m) throw Error(ErrorKind::ExtremeAtom, "critical component at node " + std::to_string(node.id) + " is a point");

  std::map<MeshEdge, std::uint32_t> other_arc;
  for (const auto& c : others)
    for (const auto& e : c.edges) other_arc.emplace(e, c.arc);

  const int sign = side == Side::Lower ? -1 : 1;
  const std::size_t k = s.link[u].size();
  const bool tree = g.is_tree();
  RawWord out;
  for (std::size_t i = 0; i < m;) {
    // Passage: a run of edges at u.
    const MeshEdge& p = edges[(start + i) % m];
    WordLabel passage;
    passage.type = LabelType::Passage;
    passage.id = static_cast<std::uint32_t>(s.link_index(u, p.first == u ? p.second : p.first));
    passage.sign = sign;
    out.labels.push_back(passage);
    while (i < m && at_u(start + i)) ++i;
    // Loop: the run away from u until the next passage.
    const MeshEdge& leave = edges[(start + i) % m];
    std::size_t j = i;
    while (j < m && !at_u(start + j)) ++j;
    const MeshEdge& enter = edges[(start + j - 1) % m];
    RawLoop raw{transition(s, u, leave), transition(s, u, enter), 0};
    auto it = other_arc.find(leave);
    if (it == other_arc.end()) throw Error(ErrorKind::Malformed, "loop edge missing from the opposite side");
    raw.other_arc = it->second;
    WordLabel loop;
    loop.type = LabelType::Loop;
    const std::size_t lo = std::min(raw.first, raw.last), hi = std::max(raw.first, raw.last);
    loop.id = static_cast<std::uint32_t>(lo * k + hi);
    loop.sign = sign;
    if (tree) {
      const ReebArc& a = g.arcs()[raw.other_arc];
      loop.branch = branch_code(g, a.lower == atom.node ? a.upper : a.lower, a.id);
    }
    out.labels.push_back(loop);
    out.loops.push_back(raw);
    i = j;
  }
  return out;
}

}  // namespace

Atom extract_atom(const ReebGraph& graph, std::uint32_t node) {
  const ReebNode& n = graph.node(node);
  if (n.kind == NodeKind::Boundary)
    throw Error(ErrorKind::InvalidArgument, "node " + std::to_string(node) + " is a boundary node");
  Atom atom;
  atom.node = node;
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& other : graph.nodes())
    if (other.token != n.token) gap = std::min(gap, std::abs(other.value - n.value));
  atom.epsilon = std::isfinite(gap) ? 0.4 * gap : 0.0;
  for (const auto& other : graph.nodes())
    if (other.kind == NodeKind::Boundary && std::abs(other.value - n.value) <= atom.epsilon)
      throw Error(ErrorKind::BoundaryCollision,
                  "boundary node " + std::to_string(other.id) + " lies within " + std::to_string(atom.epsilon) +
                      " of node " + std::to_string(node));
  for (std::uint32_t a : graph.incident(node)) {
    LevelCircle c = arc_circle(graph, a, node);
    (graph.arcs()[a].upper == node ? atom.lower : atom.upper).push_back(std::move(c));
  }
  return atom;
}

CyclicWord eulerian_cycle(const ReebGraph& graph, const Atom& atom, Side side, std::size_t circle) {
  return CyclicWord(raw_word(graph, atom, side, circle).labels);
}

namespace {

class PlaneTreeBuilder {
 public:
  explicit PlaneTreeBuilder(const ReebGraph& g) : g_(g), s_(g.sweep()), group_(g.nodes().size()) {
    for (std::uint32_t i = 0; i < group_.size(); ++i) group_[i] = i;
    for (const auto& a : g.arcs()) {
      const ReebNode &lo = g.node(a.lower), &hi = g.node(a.upper);
      if (lo.kind != NodeKind::Boundary && hi.kind != NodeKind::Boundary && lo.token == hi.token)
        group_[find(a.lower)] = find(a.upper);
    }
    for (std::uint32_t i = 0; i < group_.size(); ++i) members_[find(i)].push_back(i);
  }

  KRModel build(std::uint32_t root) {
    KRModel model;
    for (const auto& [rep, nodes] : members_) {
      KRVertex v;
      v.id = nodes.front();
      const ReebNode& n = g_.node(nodes.front());
      v.height = n.token;
      v.kind = nodes.size() > 1                       ? VertexKind::Saddle
               : n.kind == NodeKind::Boundary         ? VertexKind::Boundary
               : n.kind == NodeKind::Saddle           ? VertexKind::Saddle
                                                      : VertexKind::Extreme;
      model.add_vertex(v);
    }
    // Breadth-first from the root group.
    std::deque<std::pair<std::uint32_t, std::optional<std::uint32_t>>> queue{{find(root), std::nullopt}};
    while (!queue.empty()) {
      auto [grp, parent_arc] = queue.front();
      queue.pop_front();
      std::vector<std::uint32_t> child_arcs;
      for (std::uint32_t m : members_.at(grp))
        for (std::uint32_t a : g_.incident(m)) {
          const ReebArc& arc = g_.arcs()[a];
          if (find(arc.lower) == find(arc.upper) || a == parent_arc) continue;
          child_arcs.push_back(a);
        }
      std::sort(child_arcs.begin(), child_arcs.end());
      if (parent_arc && !child_arcs.empty()) child_arcs = ordered(grp, *parent_arc, child_arcs);
      std::vector<VertexId> kids;
      for (std::uint32_t a : child_arcs) {
        const ReebArc& arc = g_.arcs()[a];
        const std::uint32_t other = find(arc.lower) == grp ? find(arc.upper) : find(arc.lower);
        kids.push_back(members_.at(other).front());
        queue.emplace_back(other, a);
      }
      model.set_children(members_.at(grp).front(), std::move(kids));
    }
    model.set_root(members_.at(find(root)).front());
    return model;
  }

 private:
  std::uint32_t find(std::uint32_t x) {
    while (group_[x] != x) x = group_[x] = group_[group_[x]];
    return x;
  }

  std::uint32_t member_at(std::uint32_t grp, const ReebArc& arc) {
    return find(arc.lower) == grp ? arc.lower : arc.upper;
  }

  // Children in the cyclic order met along the parent-side circle.
  std::vector<std::uint32_t> ordered(std::uint32_t grp, std::uint32_t parent_arc, const std::vector<std::uint32_t>& arcs) {
    const auto& nodes = members_.at(grp);
    std::vector<std::uint32_t> out;
    auto push = [&](std::uint32_t a) {
      if (std::find(arcs.begin(), arcs.end(), a) != arcs.end() && std::find(out.begin(), out.end(), a) == out.end())
        out.push_back(a);
    };
    const ReebArc& pa = g_.arcs()[parent_arc];
    const std::uint32_t pm = member_at(grp, pa);
    if (nodes.size() == 1) {
      const Atom atom = extract_atom_unchecked(pm);
      const Side side = pa.upper == pm ? Side::Lower : Side::Upper;
      const auto& circles = side == Side::Lower ? atom.lower : atom.upper;
      std::size_t idx = 0;
      while (circles[idx].arc != parent_arc) ++idx;
      for (const auto& raw : raw_word(g_, atom, side, idx).loops) push(raw.other_arc);
    } else {
      for (std::uint32_t a : by_proximity(grp, pa, pm)) push(a);
    }
    for (std::uint32_t a : arcs) push(a);
    return out;
  }

  Atom extract_atom_unchecked(std::uint32_t node) {
    Atom atom;
    atom.node = node;
    for (std::uint32_t a : g_.incident(node))
      (g_.arcs()[a].upper == node ? atom.lower : atom.upper).push_back(arc_circle(g_, a, node));
    return atom;
  }

  // For a contracted level component: label mesh vertices by the nearest
  // child circle, then read the labels off the parent circle.
  std::vector<std::uint32_t> by_proximity(std::uint32_t grp, const ReebArc& pa, std::uint32_t pm) {
    const std::size_t n = s_.vertex_count();
    std::vector<std::int64_t> label(n, -1);
    std::set<std::uint32_t> member_vertices;
    for (std::uint32_t m : members_.at(grp)) member_vertices.insert(g_.node(m).vertex);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t m : members_.at(grp))
      for (std::uint32_t a : g_.incident(m)) {
        const ReebArc& arc = g_.arcs()[a];
        if (a == pa.id || find(arc.lower) == find(arc.upper)) continue;
        const bool up = arc.lower == m;
        const std::uint32_t gap = up ? gap_above(s_, g_.node(m)) : gap_below(s_, g_.node(m));
        for (const auto& e : arc_circle(g_, a, m).edges)
          for (std::uint32_t v : {e.first, e.second}) {
            if (s_.below(v, gap) == up || s_.apex_loop[v] >= 0 || member_vertices.count(v) || label[v] >= 0) continue;
            label[v] = a;
            queue.push_back(v);
          }
      }
    while (!queue.empty()) {
      const std::uint32_t v = queue.front();
      queue.pop_front();
      for (std::uint32_t w : s_.link[v])
        if (label[w] < 0 && s_.apex_loop[w] < 0) {
          label[w] = label[v];
          queue.push_back(w);
        }
    }
    const bool from_below = pa.upper == pm;
    const std::uint32_t gap = from_below ? gap_below(s_, g_.node(pm)) : gap_above(s_, g_.node(pm));
    std::vector<std::uint32_t> out;
    for (const auto& e : arc_circle(g_, pa.id, pm).edges) {
      const std::uint32_t far = s_.below(e.first, gap) == from_below ? e.second : e.first;
      if (label[far] >= 0 && std::find(out.begin(), out.end(), label[far]) == out.end())
        out.push_back(static_cast<std::uint32_t>(label[far]));
    }
    return out;
  }

  const ReebGraph& g_;
  const detail::Sweep& s_;
  std::vector<std::uint32_t> group_;
  std::map<std::uint32_t, std::vector<std::uint32_t>> members_;  // ascending node ids
};

}  // namespace

KRModel to_plane_tree(const ReebGraph& graph, std::optional<std::uint32_t> root_hint) {
  if (!graph.is_tree()) throw Error(ErrorKind::NotATree, "Reeb graph is not a tree");
  std::uint32_t root = 0;
  if (root_hint) {
    if (*root_hint >= graph.nodes().size()) throw Error(ErrorKind::InvalidArgument, "no node " + std::to_string(*root_hint));
    root = *root_hint;
  } else {
    std::optional<std::uint32_t> best;
    for (const auto& n : graph.nodes())
      if (n.kind == NodeKind::Boundary && (!best || n.value < graph.node(*best).value)) best = n.id;
    if (!best) throw Error(ErrorKind::NoBoundaryRoot, "Reeb graph has no boundary node to root at");
    root = *best;
  }
  return PlaneTreeBuilder(graph).build(root);
}

}  // namespace krsym
