#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "krsym/groups.hpp"

namespace krsym {

using TreeEdge = std::pair<Point, Point>;  // always stored with first < second

/// Finite tree on vertices 0..n-1.
class Tree {
 public:
  Tree() = default;
  /// Throws NotATree unless the edges form a tree on n vertices.
  Tree(std::size_t n, std::vector<TreeEdge> edges);

  std::size_t size() const noexcept { return adjacency_.size(); }
  const std::vector<TreeEdge>& edges() const noexcept { return edges_; }
  /// Neighbors of u, ascending.
  const std::vector<Point>& neighbors(Point u) const { return adjacency_.at(u); }
  std::size_t degree(Point u) const { return adjacency_.at(u).size(); }
  bool has_edge(Point u, Point v) const;

  /// Does the permutation map edges onto edges?
  bool is_automorphism(const Permutation& g) const;

  friend bool operator==(const Tree& a, const Tree& b) { return a.edges_ == b.edges_ && a.size() == b.size(); }

 private:
  std::vector<TreeEdge> edges_;
  std::vector<std::vector<Point>> adjacency_;
};

/// A tree together with a group of its automorphisms.
class TreeAction {
 public:
  TreeAction() = default;
  /// Throws InvalidAction if a generator is not a tree automorphism or the
  /// group's degree differs from the vertex count.
  TreeAction(Tree tree, PermGroup group);

  const Tree& tree() const noexcept { return tree_; }
  const PermGroup& group() const noexcept { return group_; }

 private:
  Tree tree_;
  PermGroup group_;
};

struct FixSet {
  std::vector<Point> vertices;
  std::vector<TreeEdge> edges;
};

/// Common fixed vertices and edges; an edge is fixed only when both of its
/// endpoints are.
FixSet fix_set(const TreeAction& act);

PermGroup stabilizer(const TreeAction& act, Point u);
/// G_u ∩ G_v; throws NotAnEdge.
PermGroup stabilizer_edge(const TreeAction& act, Point u, Point v);

struct Subtree {
  std::vector<Point> vertices;  // ascending
  std::vector<TreeEdge> edges;  // sorted
};

/// T_u(v): closure of the component of T \ {u} containing v (includes u).
Subtree branch(const Tree& tree, Point u, Point v);
/// T̂_u(v): the branch with u and the edge uv removed.
Subtree reduced_branch(const Tree& tree, Point u, Point v);

/// Equal to g on T_u(v) and the identity elsewhere. Throws
/// NotInEdgeStabilizer unless g fixes u and v.
Permutation r_uv(const TreeAction& act, Point u, Point v, const Permutation& g);

struct TDecompositionWitness {
  Point u = 0, v = 0;
  Permutation g;  // r_uv(g) lies outside the group
};

struct TDecomposition {
  bool decomposable = true;
  std::optional<TDecompositionWitness> witness;
  explicit operator bool() const noexcept { return decomposable; }
};

TDecomposition is_t_decomposable(const TreeAction& act);

/// Restriction of G_u to the neighbors of u (point i is neighbors(u)[i]).
PermGroup local_stabilizer(const TreeAction& act, Point u);

using GroupFamily = std::function<bool(const PermGroup&)>;
/// Trivial or cyclic groups.
bool cyclic_family(const PermGroup& g);
/// Trivial or symmetric groups (Z2 counts as S2).
bool symmetric_family(const PermGroup& g);

struct TTReport {
  bool a = false;  // Fix(G) is non-empty
  bool b = false;  // t-decomposable
  bool c = false;  // local stabilizers in the family and semi-free
  std::vector<std::string> details;
  bool ok() const noexcept { return a && b && c; }
};

TTReport check_TT(const TreeAction& act, const GroupFamily& family = cyclic_family);

/// A group acting on {0..set_size-1} and permuting the given blocks.
struct PartitionAction {
  std::size_t set_size = 0;
  std::vector<std::vector<Point>> blocks;
  PermGroup group;

  /// Throws InvalidAction when blocks do not partition the set or the
  /// group does not permute them.
  void validate() const;
};

/// For every b in `subset` and every g with g(X_b) = X_b, the patch (g on
/// X_b, identity elsewhere) belongs to the group. Patches of a family over
/// several blocks are products of single-block patches, so this decides the
/// family condition.
bool partition_decomposable(const PartitionAction& pact, std::span<const std::size_t> subset);
/// Over every block at once.
bool partition_decomposable(const PartitionAction& pact);

/// G_u acting on T \ {u} with the partition into reduced branches at the
/// neighbors of u. Point i is the i-th vertex other than u in ascending
/// order; block i corresponds to neighbors(u)[i].
PartitionAction branch_partition(const TreeAction& act, Point u);

/// Every automorphism of the tree, by exhaustive backtracking.
std::vector<Permutation> tree_automorphisms(const Tree& tree);
std::size_t count_tree_automorphisms(const Tree& tree);

/// .act format: "tree <n>", "edge <u> <v>" lines, "gen <images...>" lines,
/// '#' comments. Zero generators gives the trivial action.
TreeAction read_act(std::istream& in);
TreeAction load_act(const std::string& path);
void write_act(std::ostream& out, const TreeAction& act);

}  // namespace krsym
