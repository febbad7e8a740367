#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

#include "krsym/error.hpp"
#include "krsym/symmetry.hpp"

namespace krsym {

std::size_t rotation_group(std::span<const std::string> word) {
  const std::size_t m = word.size();
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "empty cyclic word");
  for (std::size_t p = 1; p <= m; ++p) {
    if (m % p) continue;
    bool periodic = true;
    for (std::size_t i = 0; i + p < m && periodic; ++i) periodic = word[i] == word[i + p];
    if (periodic) return m / p;
  }
  return 1;
}

namespace {

// Dense view of a model: index i is the i-th id in ascending order.
class Indexed {
 public:
  explicit Indexed(const KRModel& model) : model_(model), ids_(model.ids()) {
    for (std::size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = static_cast<Point>(i);
    const std::size_t n = ids_.size();
    children_.resize(n);
    parent_.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i)
      for (VertexId c : model.children(ids_[i])) {
        children_[i].push_back(index_.at(c));
        parent_[index_.at(c)] = static_cast<int>(i);
      }
    root_ = index_.at(model.root());
    // Post-order from the root.
    std::vector<std::pair<Point, bool>> stack{{root_, false}};
    while (!stack.empty()) {
      auto [v, done] = stack.back();
      stack.pop_back();
      if (done) {
        post_.push_back(v);
        continue;
      }
      stack.emplace_back(v, true);
      for (Point c : children_[v]) stack.emplace_back(c, false);
    }
    holds_boundary_.assign(n, false);
    axial_.assign(n, -1);
    for (Point v : post_) {
      for (Point c : children_[v])
        if (holds_boundary_[c]) {
          holds_boundary_[v] = true;
          axial_[v] = static_cast<int>(c);
        }
      if (vertex(v).kind == VertexKind::Boundary && v != root_) holds_boundary_[v] = true;
    }
  }

  std::size_t size() const { return ids_.size(); }
  Point root() const { return root_; }
  VertexId id(Point v) const { return ids_[v]; }
  Point index(VertexId id) const { return index_.at(id); }
  const KRVertex& vertex(Point v) const { return model_.vertex(ids_[v]); }
  const std::vector<Point>& post_order() const { return post_; }
  std::optional<Point> axial(Point v) const {
    return axial_[v] < 0 ? std::nullopt : std::optional<Point>(static_cast<Point>(axial_[v]));
  }
  std::vector<Point> ring(Point v) const {
    std::vector<Point> out;
    for (Point c : children_[v])
      if (static_cast<int>(c) != axial_[v]) out.push_back(c);
    return out;
  }

 private:
  const KRModel& model_;
  std::vector<VertexId> ids_;
  std::unordered_map<VertexId, Point> index_;
  std::vector<std::vector<Point>> children_;
  std::vector<int> parent_;
  std::vector<Point> post_;
  std::vector<bool> holds_boundary_;
  std::vector<int> axial_;
  Point root_ = 0;
};

std::size_t min_rotation(const std::vector<std::string>& seq) {
  std::size_t best = 0;
  const std::size_t m = seq.size();
  for (std::size_t s = 1; s < m; ++s)
    for (std::size_t i = 0; i < m; ++i) {
      const auto& a = seq[(s + i) % m];
      const auto& b = seq[(best + i) % m];
      if (a != b) {
        if (a < b) best = s;
        break;
      }
    }
  return best;
}

std::vector<std::string> all_codes(const Indexed& ix) {
  std::vector<std::string> code(ix.size());
  for (Point v : ix.post_order()) {
    const KRVertex& kv = ix.vertex(v);
    std::string c = "(" + kv.height + ":" + std::string(to_string(kv.kind));
    if (kv.kind == VertexKind::DegExtreme) c += "/" + std::to_string(kv.symmetry);
    c += "|";
    if (auto a = ix.axial(v)) c += code[*a];
    c += "|";
    std::vector<std::string> ring_codes;
    for (Point ch : ix.ring(v)) ring_codes.push_back(code[ch]);
    const std::size_t s = min_rotation(ring_codes);
    for (std::size_t i = 0; i < ring_codes.size(); ++i) c += ring_codes[(s + i) % ring_codes.size()];
    c += ")";
    code[v] = std::move(c);
  }
  return code;
}

GroupExpr combine(std::vector<GroupExpr> factors) {
  if (factors.empty()) return GroupExpr::triv();
  if (factors.size() == 1) return std::move(factors.front());
  return GroupExpr::prod(std::move(factors));
}

struct Labelled {
  GroupExpr expr;
  std::vector<Point> labels;  // dense vertex indices
};

Labelled combine(std::vector<Labelled> parts) {
  Labelled out;
  std::vector<GroupExpr> exprs;
  for (auto& p : parts) {
    exprs.push_back(std::move(p.expr));
    out.labels.insert(out.labels.end(), p.labels.begin(), p.labels.end());
  }
  out.expr = combine(std::move(exprs));
  return out;
}

class Assembler {
 public:
  explicit Assembler(const Indexed& ix) : ix_(ix), code_(all_codes(ix)), iso_(ix.size()) {}

  Labelled rec(Point v) {
    std::vector<Labelled> factors;
    if (auto a = ix_.axial(v)) factors.push_back(rec(*a));
    const auto ring = ix_.ring(v);
    if (!ring.empty()) {
      std::vector<std::string> word;
      for (Point c : ring) word.push_back(code_[c]);
      const std::size_t d = rotation_group(word);
      const std::size_t p = ring.size() / d;
      std::vector<Labelled> parts;
      for (std::size_t j = 0; j < p; ++j) parts.push_back(rec(ring[j]));
      Labelled base = combine(std::move(parts));
      if (d == 1) {
        factors.push_back(std::move(base));
      } else {
        Labelled wr;
        for (std::size_t x = 0; x < d; ++x) {
          std::fill(iso_.begin(), iso_.end(), kUnmapped);
          for (std::size_t j = 0; j < p; ++j) map_subtree(ring[j], ring[x * p + j]);
          for (Point l : base.labels) wr.labels.push_back(iso_[l]);
        }
        wr.expr = GroupExpr::wr(std::move(base.expr), GroupExpr::cyclic(static_cast<std::uint32_t>(d)));
        factors.push_back(std::move(wr));
      }
    }
    if (factors.empty()) return {GroupExpr::triv(), {v}};
    return combine(std::move(factors));
  }

 private:
  static constexpr Point kUnmapped = ~Point{0};

  // Plane isomorphism between subtrees with equal codes: smallest matching
  // rotation at every vertex.
  void map_subtree(Point src, Point dst) {
    iso_[src] = dst;
    if (auto a = ix_.axial(src)) map_subtree(*a, *ix_.axial(dst));
    const auto rs = ix_.ring(src), rd = ix_.ring(dst);
    const std::size_t m = rs.size();
    for (std::size_t s = 0; s < m; ++s) {
      bool match = true;
      for (std::size_t j = 0; j < m && match; ++j) match = code_[rs[j]] == code_[rd[(j + s) % m]];
      if (!match) continue;
      for (std::size_t j = 0; j < m; ++j) map_subtree(rs[j], rd[(j + s) % m]);
      return;
    }
  }

  const Indexed& ix_;
  std::vector<std::string> code_;
  std::vector<Point> iso_;
};

}  // namespace

std::optional<VertexId> axial_child(const KRModel& model, VertexId v) {
  Indexed ix(model);
  if (auto a = ix.axial(ix.index(v))) return ix.id(*a);
  return std::nullopt;
}

std::string canonical_code(const KRModel& model, VertexId v) {
  Indexed ix(model);
  return all_codes(ix)[ix.index(v)];
}

KRModel expand_degenerate(const KRModel& model) {
  KRModel out = model;
  const auto ids = model.ids();
  VertexId next = ids.empty() ? 0 : ids.back() + 1;
  for (VertexId id : ids) {
    const KRVertex& v = model.vertex(id);
    if (v.kind != VertexKind::DegExtreme || !model.children(id).empty()) continue;
    std::vector<VertexId> phantoms;
    for (std::uint32_t i = 0; i < v.symmetry; ++i) {
      out.add_vertex(KRVertex{next, std::string(kPhantomHeight), VertexKind::Phantom, 0});
      phantoms.push_back(next++);
    }
    out.set_children(id, std::move(phantoms));
  }
  return out;
}

LabelledAssembly assemble_labelled(const KRModel& model) {
  const KRModel expanded = expand_degenerate(model);
  expanded.validate();
  Indexed ix(expanded);
  Assembler assembler(ix);
  Labelled raw = assembler.rec(ix.root());
  TrackedNormalForm nf = normal_form_tracked(raw.expr);
  LabelledAssembly out;
  for (Point p : carry_labels(nf, raw.labels)) out.labels.push_back(ix.id(p));
  out.expr = std::move(nf.expr);
  return out;
}

GroupExpr assemble(const KRModel& model) { return assemble_labelled(model).expr; }

PermGroup brute_force_group(const KRModel& model) {
  const KRModel expanded = expand_degenerate(model);
  expanded.validate();
  if (expanded.size() > kOracleVertexLimit)
    throw Error(ErrorKind::TooLarge, std::to_string(expanded.size()) + " vertices exceed the oracle limit of " +
                                         std::to_string(kOracleVertexLimit));
  Indexed ix(expanded);
  const std::size_t n = ix.size();

  auto compatible = [&](Point a, Point b) {
    const KRVertex &va = ix.vertex(a), &vb = ix.vertex(b);
    return va.height == vb.height && va.kind == vb.kind && va.symmetry == vb.symmetry &&
           ix.ring(a).size() == ix.ring(b).size() && ix.axial(a).has_value() == ix.axial(b).has_value();
  };

  std::vector<Permutation> found;
  std::vector<Point> image(n, 0);
  // Pending (source, target) pairs; each step fixes one pair and branches
  // over the rotations of its children.
  std::function<void(std::vector<std::pair<Point, Point>>)> explore = [&](std::vector<std::pair<Point, Point>> pending) {
    if (pending.empty()) {
      found.emplace_back(image);
      return;
    }
    auto [a, b] = pending.back();
    pending.pop_back();
    if (!compatible(a, b)) return;
    image[a] = b;
    if (auto ax = ix.axial(a)) pending.emplace_back(*ax, *ix.axial(b));
    const auto ra = ix.ring(a), rb = ix.ring(b);
    const std::size_t m = ra.size();
    if (m == 0) {
      explore(std::move(pending));
      return;
    }
    for (std::size_t s = 0; s < m; ++s) {
      auto next = pending;
      for (std::size_t j = 0; j < m; ++j) next.emplace_back(ra[j], rb[(j + s) % m]);
      explore(std::move(next));
    }
  };
  explore({{ix.root(), ix.root()}});
  return PermGroup::from_elements(n, std::move(found));
}

bool oracle_agrees(const KRModel& model) {
  const LabelledAssembly la = assemble_labelled(model);
  const KRModel expanded = expand_degenerate(model);
  Indexed ix(expanded);
  std::vector<Point> labels;
  for (VertexId id : la.labels) labels.push_back(ix.index(id));
  return matches_on_labels(brute_force_group(model), labels, evaluate(la.expr));
}

std::string_view to_string(Surface s) { return s == Surface::Disk ? "disk" : "cylinder"; }

Surface parse_surface(std::string_view name) {
  if (name == "disk") return Surface::Disk;
  if (name == "cylinder") return Surface::Cylinder;
  throw Error(ErrorKind::InvalidArgument, "surface must be disk or cylinder, not '" + std::string(name) + "'");
}

namespace {

class Realizer {
 public:
  VertexId add(VertexKind kind, long long height) {
    const VertexId id = next_++;
    model_.add_vertex(KRVertex{id, std::to_string(height), kind, 0});
    children_[id];
    return id;
  }

  // Disk gadget for e whose attaching vertex sits at height h; returns the
  // gadget root and the highest height used.
  std::pair<VertexId, long long> fragment(const GroupExpr& e, long long h) {
    switch (e.kind()) {
      case GroupExpr::Kind::Triv: return {add(VertexKind::Extreme, h + 1), h + 1};
      case GroupExpr::Kind::Atom: {
        require_cyclic(e);
        const VertexId s = add(VertexKind::Saddle, h + 1);
        for (std::uint32_t i = 0; i < e.n(); ++i) children_[s].push_back(add(VertexKind::Extreme, h + 2));
        return {s, h + 2};
      }
      case GroupExpr::Kind::Wr: {
        require_cyclic(e.top());
        const VertexId s = add(VertexKind::Saddle, h + 1);
        long long top = h + 1;
        for (std::uint32_t i = 0; i < e.top().n(); ++i) {
          auto [c, t] = fragment(e.base(), h + 1);
          children_[s].push_back(c);
          top = std::max(top, t);
        }
        return {s, top};
      }
      case GroupExpr::Kind::Prod: {
        const VertexId s = add(VertexKind::Saddle, h + 1);
        long long base = h + 1;
        for (const auto& factor : e.children()) {
          auto [c, t] = fragment(factor, base);
          children_[s].push_back(c);
          base = t;
        }
        return {s, base};
      }
    }
    return {0, h};
  }

  // Cylinder: gadgets stacked along the axis above `axis`.
  void chain(const GroupExpr& e, VertexId& axis, long long& h) {
    switch (e.kind()) {
      case GroupExpr::Kind::Triv: return;
      case GroupExpr::Kind::Atom: {
        require_cyclic(e);
        const VertexId s = add(VertexKind::Saddle, h + 1);
        for (std::uint32_t i = 0; i < e.n(); ++i) children_[s].push_back(add(VertexKind::Extreme, h + 2));
        children_[axis].push_back(s);
        axis = s;
        h += 2;
        return;
      }
      case GroupExpr::Kind::Wr: {
        require_cyclic(e.top());
        const VertexId s = add(VertexKind::Saddle, h + 1);
        long long top = h + 1;
        for (std::uint32_t i = 0; i < e.top().n(); ++i) {
          auto [c, t] = fragment(e.base(), h + 1);
          children_[s].push_back(c);
          top = std::max(top, t);
        }
        children_[axis].push_back(s);
        axis = s;
        h = top;
        return;
      }
      case GroupExpr::Kind::Prod:
        for (const auto& factor : e.children()) chain(factor, axis, h);
        return;
    }
  }

  KRModel finish(VertexId root) {
    for (auto& [id, kids] : children_)
      if (!kids.empty()) model_.set_children(id, kids);
    model_.set_root(root);
    model_.validate();
    return std::move(model_);
  }

  std::map<VertexId, std::vector<VertexId>>& children() { return children_; }

 private:
  static void require_cyclic(const GroupExpr& atom) {
    if (!atom.is_atom() || atom.family() != Family::Cyclic)
      throw Error(ErrorKind::InvalidArgument, "realize needs cyclic atoms, got " + pretty_print(atom));
  }

  KRModel model_;
  std::map<VertexId, std::vector<VertexId>> children_;
  VertexId next_ = 0;
};

}  // namespace

KRModel realize(const GroupExpr& e, Surface surface) {
  const GroupExpr nf = normal_form(e);
  (void)order(nf);  // Overflow check before building
  Realizer r;
  const VertexId root = r.add(VertexKind::Boundary, 0);
  if (surface == Surface::Disk) {
    auto [c, top] = r.fragment(nf, 0);
    (void)top;
    r.children()[root].push_back(c);
  } else {
    VertexId axis = root;
    long long h = 0;
    r.chain(nf, axis, h);
    r.children()[axis].push_back(r.add(VertexKind::Boundary, h + 1));
  }
  return r.finish(root);
}

KRModel reroot(const KRModel& model, VertexId new_root) {
  if (model.vertex(new_root).kind != VertexKind::Boundary)
    throw Error(ErrorKind::InvalidModel, "new root must be a boundary vertex");
  std::map<VertexId, VertexId> parent;
  for (VertexId id : model.ids())
    for (VertexId c : model.children(id)) parent[c] = id;
  KRModel out;
  std::map<VertexId, std::vector<VertexId>> kids;
  for (VertexId id : model.ids()) {
    out.add_vertex(model.vertex(id));
    kids[id] = model.children(id);
  }
  // Reverse the path from the new root up to the old root; each former
  // parent becomes the last child.
  VertexId v = new_root;
  while (parent.count(v)) {
    const VertexId p = parent[v];
    auto& pk = kids[p];
    pk.erase(std::find(pk.begin(), pk.end(), v));
    kids[v].push_back(p);
    v = p;
  }
  for (auto& [id, k] : kids)
    if (!k.empty()) out.set_children(id, k);
  out.set_root(new_root);
  return out;
}

RoundtripReport roundtrip(const GroupExpr& e, Surface surface) {
  RoundtripReport report;
  report.expected = normal_form(e);
  report.expected_order = order(report.expected);
  const KRModel model = realize(report.expected, surface);
  report.assembled = assemble(model);
  report.ok = report.assembled == report.expected;
  if (!report.ok)
    report.diff = "expected " + pretty_print(report.expected) + ", assembled " + pretty_print(report.assembled);
  if (expand_degenerate(model).size() <= kOracleVertexLimit) {
    report.oracle_order = brute_force_group(model).order();
    if (*report.oracle_order != report.expected_order) {
      report.ok = false;
      if (!report.diff.empty()) report.diff += "; ";
      report.diff += "oracle order " + std::to_string(*report.oracle_order) + ", expected " +
                     std::to_string(report.expected_order);
    }
  }
  return report;
}

}  // namespace krsym
