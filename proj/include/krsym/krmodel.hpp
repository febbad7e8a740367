#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace krsym {

using VertexId = std::uint32_t;

enum class VertexKind { Boundary, Extreme, DegExtreme, Saddle, Regular, Phantom };

std::string_view to_string(VertexKind k);
/// Throws Malformed for unknown names.
VertexKind parse_vertex_kind(std::string_view name);

/// Canonical decimal token: "+1.50" -> "1.5", "-0.0" -> "0", "2." -> "2".
/// Two heights are equal exactly when their tokens are. Throws Malformed.
std::string normalize_height(std::string_view text);

/// Reserved height token of phantom framing leaves.
inline constexpr std::string_view kPhantomHeight = "phantom";

struct KRVertex {
  VertexId id = 0;
  std::string height;  // normalized token
  VertexKind kind = VertexKind::Regular;
  std::uint32_t symmetry = 0;  // only for DegExtreme
};

/// Height-labelled rooted plane tree: each vertex's children are listed in
/// cyclic order.
class KRModel {
 public:
  void add_vertex(KRVertex v);
  void set_children(VertexId parent, std::vector<VertexId> children);
  void set_root(VertexId root) { root_ = root; }

  bool contains(VertexId id) const { return nodes_.count(id) != 0; }
  const KRVertex& vertex(VertexId id) const;
  const std::vector<VertexId>& children(VertexId id) const;
  std::optional<VertexId> parent(VertexId id) const;
  VertexId root() const;
  bool has_root() const noexcept { return root_.has_value(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  /// All ids, ascending.
  std::vector<VertexId> ids() const;

  /// Throws InvalidModel: must be a tree reachable from a boundary root,
  /// adjacent heights differ, boundary vertices only at the root or at
  /// leaves, degenerate extremes are leaves (or carry exactly their
  /// phantom leaves) with symmetry >= 2.
  void validate() const;

  friend bool operator==(const KRModel&, const KRModel&);

 private:
  struct Node {
    KRVertex v;
    std::vector<VertexId> children;
  };
  std::map<VertexId, Node> nodes_;
  std::optional<VertexId> root_;
};

/// .krt format:
///   vertex <id> height=<decimal> kind=<boundary|extreme|degextreme|saddle|regular> [symmetry=<n>]
///   children <id>: <id> <id> ...
///   root <id>
/// with '#' comments. Throws Malformed.
KRModel read_krt(std::istream& in);
KRModel load_krt(const std::string& path);
/// Stable writer: vertices by ascending id, then children lines, then root.
/// Phantom vertices are omitted unless include_phantoms is set.
void write_krt(std::ostream& out, const KRModel& model, bool include_phantoms = false);
std::string to_krt(const KRModel& model, bool include_phantoms = false);

}  // namespace krsym
