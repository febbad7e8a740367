#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "krsym/error.hpp"
#include "krsym/treeact.hpp"

namespace krsym {

Tree::Tree(std::size_t n, std::vector<TreeEdge> edges) : adjacency_(n) {
  if (n == 0) throw Error(ErrorKind::NotATree, "a tree needs at least one vertex");
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw Error(ErrorKind::NotATree, "edge endpoint out of range");
    if (u == v) throw Error(ErrorKind::NotATree, "self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw Error(ErrorKind::NotATree, "duplicate edge");
  if (edges.size() + 1 != n)
    throw Error(ErrorKind::NotATree, std::to_string(edges.size()) + " edges on " + std::to_string(n) + " vertices");
  for (auto [u, v] : edges) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  edges_ = std::move(edges);

  std::vector<bool> seen(n, false);
  std::vector<Point> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Point u = stack.back();
    stack.pop_back();
    for (Point w : adjacency_[u])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  if (reached != n) throw Error(ErrorKind::NotATree, "graph is disconnected");
}

bool Tree::has_edge(Point u, Point v) const {
  if (u >= size() || v >= size()) return false;
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

bool Tree::is_automorphism(const Permutation& g) const {
  if (g.degree() != size()) return false;
  return std::all_of(edges_.begin(), edges_.end(), [&](const TreeEdge& e) { return has_edge(g[e.first], g[e.second]); });
}

TreeAction::TreeAction(Tree tree, PermGroup group) : tree_(std::move(tree)), group_(std::move(group)) {
  if (group_.degree() != tree_.size())
    throw Error(ErrorKind::InvalidAction, "group degree does not match vertex count");
  for (const auto& g : group_.generators())
    if (!tree_.is_automorphism(g))
      throw Error(ErrorKind::InvalidAction, "generator " + g.to_cycle_string() + " is not a tree automorphism");
}

namespace {

// Backtracking over vertex images in BFS order from vertex 0; every
// assignment is checked against the already-placed neighbors.
class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const Tree& tree) : tree_(tree), n_(tree.size()) {
    order_.push_back(0);
    std::vector<bool> seen(n_, false);
    seen[0] = true;
    for (std::size_t head = 0; head < order_.size(); ++head)
      for (Point w : tree_.neighbors(order_[head]))
        if (!seen[w]) {
          seen[w] = true;
          order_.push_back(w);
        }
    image_.assign(n_, kUnset);
    used_.assign(n_, false);
  }

  template <typename Visit>
  void run(Visit&& visit) {
    step(0, visit);
  }

 private:
  static constexpr Point kUnset = ~Point{0};

  template <typename Visit>
  void step(std::size_t depth, Visit& visit) {
    if (depth == n_) {
      visit(image_);
      return;
    }
    const Point u = order_[depth];
    for (Point cand = 0; cand < n_; ++cand) {
      if (used_[cand] || tree_.degree(cand) != tree_.degree(u)) continue;
      bool ok = true;
      for (Point w : tree_.neighbors(u))
        if (image_[w] != kUnset && !tree_.has_edge(cand, image_[w])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      image_[u] = cand;
      used_[cand] = true;
      step(depth + 1, visit);
      used_[cand] = false;
      image_[u] = kUnset;
    }
  }

  const Tree& tree_;
  std::size_t n_;
  std::vector<Point> order_;
  std::vector<Point> image_;
  std::vector<bool> used_;
};

}  // namespace

std::vector<Permutation> tree_automorphisms(const Tree& tree) {
  std::vector<Permutation> out;
  AutomorphismSearch(tree).run([&](const std::vector<Point>& img) { out.emplace_back(img); });
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_tree_automorphisms(const Tree& tree) {
  std::size_t count = 0;
  AutomorphismSearch(tree).run([&](const std::vector<Point>&) { ++count; });
  return count;
}

TreeAction read_act(std::istream& in) {
  std::optional<std::size_t> n;
  std::vector<TreeEdge> edges;
  std::vector<std::vector<Point>> gens;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::Malformed, "line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string keyword;
    if (!(ss >> keyword)) continue;
    if (keyword == "tree") {
      std::size_t count;
      if (n || !(ss >> count)) fail("bad tree header");
      n = count;
    } else if (keyword == "edge") {
      long long u, v;
      if (!(ss >> u >> v) || u < 0 || v < 0) fail("bad edge");
      edges.emplace_back(static_cast<Point>(u), static_cast<Point>(v));
    } else if (keyword == "gen") {
      std::vector<Point> images;
      long long x;
      while (ss >> x) {
        if (x < 0) fail("negative image");
        images.push_back(static_cast<Point>(x));
      }
      if (!ss.eof()) fail("bad generator");
      gens.push_back(std::move(images));
    } else {
      fail("unknown keyword '" + keyword + "'");
    }
    std::string extra;
    if (keyword != "gen" && (ss >> extra)) fail("trailing tokens");
  }
  if (!n) throw Error(ErrorKind::Malformed, "missing 'tree <n>' header");
  Tree tree(*n, std::move(edges));
  std::vector<Permutation> perms;
  for (auto& images : gens) {
    if (images.size() != *n) throw Error(ErrorKind::Malformed, "generator must list one image per vertex");
    try {
      perms.emplace_back(std::move(images));
    } catch (const Error& e) {
      throw Error(ErrorKind::Malformed, e.what());
    }
  }
  return TreeAction(std::move(tree), PermGroup(*n, std::move(perms)));
}

TreeAction load_act(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Malformed, "cannot open " + path);
  return read_act(in);
}

void write_act(std::ostream& out, const TreeAction& act) {
  out << "tree " << act.tree().size() << '\n';
  for (auto [u, v] : act.tree().edges()) out << "edge " << u << ' ' << v << '\n';
  for (const auto& g : act.group().generators()) {
    out << "gen";
    for (Point p : g.images()) out << ' ' << p;
    out << '\n';
  }
}

}  // namespace krsym
