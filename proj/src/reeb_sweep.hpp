#pragma once

// Internal state of a Reeb sweep, shared by compute_reeb and the atom code.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "krsym/reeb.hpp"

namespace krsym::detail {

inline std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

inline MeshEdge make_edge(std::uint32_t a, std::uint32_t b) { return a < b ? MeshEdge{a, b} : MeshEdge{b, a}; }

/// The mesh with every boundary circle coned to an apex vertex, so that
/// each vertex link is a closed cycle.
struct Sweep {
  std::size_t mesh_vertices = 0;
  std::vector<double> values;
  std::vector<std::string> tokens;
  std::vector<int> apex_loop;        // loop index for apexes, -1 otherwise
  std::vector<std::uint32_t> rank;   // sweep position per vertex
  std::vector<std::uint32_t> order;  // vertex per sweep position
  std::vector<Triangle> triangles;   // consistently oriented
  std::unordered_map<std::uint64_t, std::array<std::uint32_t, 2>> edge_triangles;
  std::vector<std::vector<std::uint32_t>> link;  // cyclic, counterclockwise
  std::vector<int> node_of_vertex;                // -1 for regular vertices

  // Per arc: a crossing edge just above its lower node and one just below
  // its upper node.
  std::vector<MeshEdge> arc_bottom, arc_top;

  std::size_t vertex_count() const { return values.size(); }
  bool below(std::uint32_t v, std::uint32_t gap) const { return rank[v] <= gap; }
  bool crosses(const MeshEdge& e, std::uint32_t gap) const { return below(e.first, gap) != below(e.second, gap); }

  /// The crossing edge following e along the level at `gap`, walking with
  /// the lower region on the left.
  MeshEdge next(const MeshEdge& e, std::uint32_t gap) const;
  /// The full level circle through a crossing edge.
  std::vector<MeshEdge> circle(const MeshEdge& seed, std::uint32_t gap) const;
  /// Position of w in link[v].
  std::size_t link_index(std::uint32_t v, std::uint32_t w) const;
};

}  // namespace krsym::detail
