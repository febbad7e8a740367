#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krsym/krmodel.hpp"

namespace krsym {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

using Triangle = std::array<std::uint32_t, 3>;
using MeshEdge = std::pair<std::uint32_t, std::uint32_t>;  // first < second

/// Connected, orientable triangle mesh; every edge borders at most two
/// triangles. Triangles are re-oriented consistently on construction.
class Mesh {
 public:
  Mesh() = default;
  /// Throws Malformed (bad indices, non-manifold edges, disconnected) or
  /// NonOrientable.
  Mesh(std::vector<Vec3> positions, std::vector<Triangle> triangles);

  std::size_t vertex_count() const noexcept { return positions_.size(); }
  const std::vector<Vec3>& positions() const noexcept { return positions_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  /// Boundary circles as vertex cycles, each following the orientation of
  /// its triangles.
  const std::vector<std::vector<std::uint32_t>>& boundary_loops() const noexcept { return loops_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  long euler_characteristic() const;

 private:
  std::vector<Vec3> positions_;
  std::vector<Triangle> triangles_;
  std::vector<std::vector<std::uint32_t>> loops_;
  std::size_t edge_count_ = 0;
};

/// ASCII OFF with triangular faces only. Throws Malformed / NonOrientable.
Mesh read_off(std::istream& in);
Mesh load_off(const std::string& path);
void write_off(std::ostream& out, const Mesh& mesh);

/// One value per vertex, with the decimal token it was read from; equal
/// tokens mean equal heights.
struct ScalarField {
  std::vector<double> values;
  std::vector<std::string> tokens;

  /// Formats each value with the given number of decimals.
  static ScalarField from_values(const std::vector<double>& values, int decimals = 6);
};

/// Throws Malformed on bad lines and CountMismatch when the number of
/// values differs from `expected` (when given).
ScalarField read_values(std::istream& in, std::optional<std::size_t> expected = std::nullopt);
ScalarField load_values(const std::string& path, std::optional<std::size_t> expected = std::nullopt);
void write_values(std::ostream& out, const ScalarField& field);

enum class NodeKind { Min, Max, Saddle, Boundary };
std::string_view to_string(NodeKind k);

struct ReebNode {
  std::uint32_t id = 0;
  std::uint32_t vertex = 0;  // vertex of the coned surface (>= mesh size for boundary apexes)
  double value = 0;
  std::string token;
  NodeKind kind = NodeKind::Saddle;
  int boundary_loop = -1;
};

struct ReebArc {
  std::uint32_t id = 0;
  std::uint32_t lower = 0, upper = 0;  // node ids
  MeshEdge sample_edge;                // crosses the level just above `lower`
};

namespace detail {
struct Sweep;
}

class ReebGraph {
 public:
  const std::vector<ReebNode>& nodes() const noexcept { return nodes_; }
  const std::vector<ReebArc>& arcs() const noexcept { return arcs_; }
  const ReebNode& node(std::uint32_t id) const { return nodes_.at(id); }
  /// Arc ids incident to a node, ascending.
  std::vector<std::uint32_t> incident(std::uint32_t node) const;
  std::size_t degree(std::uint32_t node) const { return incident(node).size(); }
  /// E - V + 1 for the connected graph.
  std::size_t cycle_rank() const { return arcs_.size() + 1 - nodes_.size(); }
  bool is_tree() const { return arcs_.size() + 1 == nodes_.size(); }
  /// V - E == chi / 2 for the surface with its boundary circles capped.
  bool euler_consistent() const;

  const detail::Sweep& sweep() const { return *sweep_; }

 private:
  friend ReebGraph compute_reeb(const Mesh&, const ScalarField&);
  std::vector<ReebNode> nodes_;
  std::vector<ReebArc> arcs_;
  std::shared_ptr<const detail::Sweep> sweep_;
};

/// Sweeps the field (ties broken by vertex index) over the mesh with each
/// boundary circle coned off to a single boundary node. The field must be
/// constant on each boundary circle and lie entirely above or below it
/// nearby (Malformed otherwise).
ReebGraph compute_reeb(const Mesh& mesh, const ScalarField& field);

/// DOT rendering: nodes v0..vn labelled with their values.
std::string to_dot(const ReebGraph& graph);

/// A level circle: crossing mesh edges in walking order, lower side on the
/// left.
struct LevelCircle {
  std::uint32_t arc = 0;
  std::vector<MeshEdge> edges;
};

/// Neighborhood of one critical node: its boundary circles just below and
/// just above the critical level, one per incident arc.
struct Atom {
  std::uint32_t node = 0;
  double epsilon = 0;
  std::vector<LevelCircle> lower, upper;
};

/// Throws InvalidArgument for a non-critical id and BoundaryCollision when
/// a boundary node lies within epsilon of the critical level.
Atom extract_atom(const ReebGraph& graph, std::uint32_t node);

enum class LabelType { Passage, Loop };

struct WordLabel {
  LabelType type = LabelType::Passage;
  std::uint32_t id = 0;  // passage: link index; loop: critical-graph edge
  int sign = 1;          // -1 walked along the lower side, +1 the upper
  std::string branch;    // code of the branch across a loop

  /// The label without its id, used for symmetry detection.
  std::string pattern() const;
  friend bool operator==(const WordLabel&, const WordLabel&) = default;
};

/// Cyclic word; equality is up to rotation.
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(std::vector<WordLabel> labels) : labels_(std::move(labels)) {}

  const std::vector<WordLabel>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  CyclicWord rotated(std::size_t k) const;
  std::vector<std::string> patterns() const;
  /// Loop ids in order of appearance.
  std::vector<std::uint32_t> loops() const;

  friend bool operator==(const CyclicWord& a, const CyclicWord& b);

 private:
  std::vector<WordLabel> labels_;
};

enum class Side { Lower, Upper };

/// Eulerian word of one boundary circle of the atom: passages along the
/// critical vertex alternating with loops of the critical level set.
/// Throws ExtremeAtom when the critical component is a point.
CyclicWord eulerian_cycle(const ReebGraph& graph, const Atom& atom, Side side, std::size_t circle);

/// Plane tree of a tree-shaped Reeb graph rooted at `root_hint` (a node id)
/// or at the lowest boundary node. Arcs joining critical nodes at the same
/// level are contracted (one vertex per critical level component); child
/// order follows the parent-side circle. Throws NotATree, NoBoundaryRoot.
KRModel to_plane_tree(const ReebGraph& graph, std::optional<std::uint32_t> root_hint = std::nullopt);

/// Components of the level set {f = h} on the mesh, counted directly.
std::size_t count_level_components(const Mesh& mesh, const ScalarField& field, double h);

}  // namespace krsym
