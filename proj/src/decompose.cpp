#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "krsym/decompose.hpp"
#include "krsym/error.hpp"

namespace krsym {

namespace {

GroupExpr combine(std::vector<GroupExpr> factors) {
  if (factors.empty()) return GroupExpr::triv();
  if (factors.size() == 1) return std::move(factors.front());
  return GroupExpr::prod(std::move(factors));
}

LabelledExpr combine(std::vector<LabelledExpr> parts) {
  LabelledExpr out;
  std::vector<GroupExpr> exprs;
  for (auto& p : parts) {
    exprs.push_back(std::move(p.expr));
    out.labels.insert(out.labels.end(), p.labels.begin(), p.labels.end());
  }
  out.expr = combine(std::move(exprs));
  return out;
}

class Decomposer {
 public:
  explicit Decomposer(const TreeAction& act) : act_(act), tree_(act.tree()) {}

  LabelledExpr run(Point z) { return rec(act_.group(), z, std::nullopt); }

 private:
  std::vector<bool> side_mask(Point u, Point v) const {
    std::vector<bool> mask(tree_.size(), false);
    for (Point w : reduced_branch(tree_, u, v).vertices) mask[w] = true;
    return mask;
  }

  // Elements of K moving only vertices of the branch hanging off z at v.
  PermGroup branch_group(const PermGroup& k, Point z, Point v) const {
    const auto mask = side_mask(z, v);
    return k.subgroup_where([&](const Permutation& g) {
      for (Point p = 0; p < g.degree(); ++p)
        if (g[p] != p && !mask[p]) return false;
      return true;
    });
  }

  LabelledExpr rec(const PermGroup& k, Point z, std::optional<Point> parent) const {
    if (k.is_trivial()) return {GroupExpr::triv(), {z}};

    std::vector<Point> nbrs;
    for (Point w : tree_.neighbors(z))
      if (w != parent) nbrs.push_back(w);
    const PermGroup loc = k.restrict_to(nbrs);

    std::vector<LabelledExpr> factors;
    std::vector<Point> reps;
    for (const auto& orbit : loc.orbits()) {
      if (orbit.size() == 1) {
        const Point v = nbrs[orbit.front()];
        factors.push_back(rec(branch_group(k, z, v), v, z));
      } else {
        if (orbit.size() != loc.order())
          throw Error(ErrorKind::NotTT, "local stabilizer at " + std::to_string(z) + " is not semi-free");
        reps.push_back(nbrs[orbit.front()]);
      }
    }

    if (!reps.empty()) {
      const auto cls = recognize(loc);
      if (cls.kind != GroupClass::Kind::Cyclic)
        throw Error(ErrorKind::NotTT, "local stabilizer at " + std::to_string(z) + " is " + cls.to_string());
      const std::size_t d = cls.n;
      // A lift of a generator of the local stabilizer.
      const Permutation* lift = nullptr;
      for (const auto& g : k.elements()) {
        std::vector<Point> images(nbrs.size());
        for (std::size_t i = 0; i < nbrs.size(); ++i)
          images[i] = static_cast<Point>(std::lower_bound(nbrs.begin(), nbrs.end(), g[nbrs[i]]) - nbrs.begin());
        if (Permutation(std::move(images)).order() == d) {
          lift = &g;
          break;
        }
      }
      std::vector<LabelledExpr> base_parts;
      for (Point w : reps) base_parts.push_back(rec(branch_group(k, z, w), w, z));
      LabelledExpr base = combine(std::move(base_parts));

      LabelledExpr wr;
      Permutation power = Permutation::identity(tree_.size());
      for (std::size_t x = 0; x < d; ++x) {
        for (Point l : base.labels) wr.labels.push_back(power[l]);
        power = *lift * power;
      }
      wr.expr = GroupExpr::wr(std::move(base.expr), GroupExpr::cyclic(static_cast<std::uint32_t>(d)));
      factors.push_back(std::move(wr));
    }
    return combine(std::move(factors));
  }

  const TreeAction& act_;
  const Tree& tree_;
};

}  // namespace

LabelledExpr action_to_expression(const TreeAction& act) {
  const TTReport report = check_TT(act, cyclic_family);
  if (!report.ok()) {
    std::string why;
    for (const auto& d : report.details) why += (why.empty() ? "" : "; ") + d;
    throw Error(ErrorKind::NotTT, why);
  }
  const Point z = fix_set(act).vertices.front();
  LabelledExpr raw = Decomposer(act).run(z);
  TrackedNormalForm nf = normal_form_tracked(raw.expr);
  std::vector<Point> labels = carry_labels(nf, raw.labels);
  return {std::move(nf.expr), std::move(labels)};
}

bool labels_agree(const TreeAction& act, const LabelledExpr& result) {
  return matches_on_labels(act.group(), result.labels, evaluate(result.expr));
}

namespace {

struct Fragment {
  std::vector<Point> vertices;  // creation order
  std::vector<std::vector<std::pair<Point, Point>>> generators;  // moved points only
};

class TreeBuilder {
 public:
  Point add_vertex() { return count_++; }
  void add_edge(Point u, Point v) { edges_.emplace_back(u, v); }

  Fragment build(const GroupExpr& e, Point attach) {
    Fragment f;
    switch (e.kind()) {
      case GroupExpr::Kind::Triv: return f;
      case GroupExpr::Kind::Atom: {
        if (e.family() != Family::Cyclic)
          throw Error(ErrorKind::InvalidArgument, "only cyclic atoms have a tree realization here");
        const Point c = add_vertex();
        add_edge(attach, c);
        f.vertices.push_back(c);
        std::vector<Point> leaves;
        for (std::uint32_t i = 0; i < e.n(); ++i) {
          leaves.push_back(add_vertex());
          add_edge(c, leaves.back());
        }
        f.vertices.insert(f.vertices.end(), leaves.begin(), leaves.end());
        if (e.n() > 1) {
          std::vector<std::pair<Point, Point>> rot;
          for (std::size_t i = 0; i < leaves.size(); ++i) rot.emplace_back(leaves[i], leaves[(i + 1) % leaves.size()]);
          f.generators.push_back(std::move(rot));
        }
        return f;
      }
      case GroupExpr::Kind::Prod: {
        const Point c = add_vertex();
        add_edge(attach, c);
        f.vertices.push_back(c);
        for (const auto& child : e.children()) {
          Fragment sub = build(child, c);
          f.vertices.insert(f.vertices.end(), sub.vertices.begin(), sub.vertices.end());
          for (auto& g : sub.generators) f.generators.push_back(std::move(g));
        }
        return f;
      }
      case GroupExpr::Kind::Wr: {
        if (!e.top().is_atom() || e.top().family() != Family::Cyclic)
          throw Error(ErrorKind::InvalidArgument, "wreath tops must be cyclic atoms");
        const Point c = add_vertex();
        add_edge(attach, c);
        f.vertices.push_back(c);
        const std::uint32_t n = e.top().n();
        std::vector<Fragment> copies;
        for (std::uint32_t x = 0; x < n; ++x) copies.push_back(build(e.base(), c));
        for (const auto& copy : copies) f.vertices.insert(f.vertices.end(), copy.vertices.begin(), copy.vertices.end());
        for (auto& g : copies.front().generators) f.generators.push_back(std::move(g));
        if (n > 1 && !copies.front().vertices.empty()) {
          std::vector<std::pair<Point, Point>> rot;
          for (std::uint32_t x = 0; x < n; ++x)
            for (std::size_t i = 0; i < copies[x].vertices.size(); ++i)
              rot.emplace_back(copies[x].vertices[i], copies[(x + 1) % n].vertices[i]);
          f.generators.push_back(std::move(rot));
        }
        return f;
      }
    }
    return f;
  }

  std::size_t count() const { return count_; }
  std::vector<TreeEdge> take_edges() { return std::move(edges_); }

 private:
  Point count_ = 0;
  std::vector<TreeEdge> edges_;
};

}  // namespace

TreeAction expression_to_action(const GroupExpr& e) {
  TreeBuilder builder;
  const Point root = builder.add_vertex();
  Fragment f = builder.build(normal_form(e), root);
  const std::size_t n = builder.count();
  std::vector<Permutation> gens;
  for (const auto& moves : f.generators) {
    std::vector<Point> images(n);
    std::iota(images.begin(), images.end(), Point{0});
    for (auto [from, to] : moves) images[from] = to;
    gens.emplace_back(std::move(images));
  }
  return TreeAction(Tree(n, builder.take_edges()), PermGroup(n, std::move(gens)));
}

namespace {

class JordanBuilder {
 public:
  explicit JordanBuilder(const Tree& t) : tree_(t) {}

  // AHU code and automorphism group of the subtree at v away from parent.
  std::pair<std::string, GroupExpr> rooted(Point v, std::optional<Point> parent) const {
    std::vector<std::pair<std::string, GroupExpr>> kids;
    for (Point w : tree_.neighbors(v))
      if (w != parent) kids.push_back(rooted(w, v));
    std::sort(kids.begin(), kids.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string code = "(";
    std::vector<GroupExpr> factors;
    for (std::size_t i = 0; i < kids.size();) {
      std::size_t j = i;
      while (j < kids.size() && kids[j].first == kids[i].first) ++j;
      const auto k = static_cast<std::uint32_t>(j - i);
      factors.push_back(k == 1 ? kids[i].second
                               : GroupExpr::wr(kids[i].second, GroupExpr::atom(Family::Symmetric, k)));
      for (std::size_t m = i; m < j; ++m) code += kids[m].first;
      i = j;
    }
    code += ")";
    return {code, combine(std::move(factors))};
  }

 private:
  const Tree& tree_;
};

std::vector<Point> tree_centers(const Tree& t) {
  const std::size_t n = t.size();
  std::vector<std::size_t> deg(n);
  std::vector<Point> layer;
  for (Point v = 0; v < n; ++v) {
    deg[v] = t.degree(v);
    if (deg[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<Point> next;
    for (Point v : layer)
      for (Point w : t.neighbors(v))
        if (--deg[w] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace

GroupExpr jordan_decompose(const Tree& tree) {
  if (tree.size() == 1) return GroupExpr::triv();
  const auto centers = tree_centers(tree);
  JordanBuilder jb(tree);
  if (centers.size() == 1) return normal_form(jb.rooted(centers.front(), std::nullopt).second);
  auto [code1, g1] = jb.rooted(centers[0], centers[1]);
  auto [code2, g2] = jb.rooted(centers[1], centers[0]);
  if (code1 == code2) return normal_form(GroupExpr::wr(std::move(g1), GroupExpr::atom(Family::Symmetric, 2)));
  std::vector<GroupExpr> halves;
  halves.push_back(std::move(g1));
  halves.push_back(std::move(g2));
  return normal_form(GroupExpr::prod(std::move(halves)));
}

}  // namespace krsym
