#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "krsym/groups.hpp"
#include "krsym/krmodel.hpp"
#include "krsym/rexpr.hpp"

namespace krsym {

/// m / (smallest period) for a cyclic word of length m >= 1; the order of
/// its rotation symmetry group.
std::size_t rotation_group(std::span<const std::string> word);

/// The child of v whose subtree holds a boundary vertex (the other end of
/// a cylinder), if any. It is fixed by every symmetry and is left out of
/// v's rotation word.
std::optional<VertexId> axial_child(const KRModel& model, VertexId v);

/// Canonical string for the subtree at v: equal codes iff there is a
/// height-, kind- and cyclic-order-preserving isomorphism of subtrees.
std::string canonical_code(const KRModel& model, VertexId v);

/// Gives every degenerate extreme of symmetry n its n phantom framing
/// leaves (fresh ids above the current maximum). Idempotent.
KRModel expand_degenerate(const KRModel& model);

/// assemble() together with the vertices its evaluation acts on: point i of
/// evaluate(expr) is vertex labels[i] of expand_degenerate(model).
struct LabelledAssembly {
  GroupExpr expr;
  std::vector<VertexId> labels;
};

/// G(f) as a normal-form expression over cyclic atoms: bottom-up, a vertex
/// whose non-axial child codes have rotation order d over m children gets
/// G(axial child) x (prod of the first m/d child groups) wr Z_d.
GroupExpr assemble(const KRModel& model);
LabelledAssembly assemble_labelled(const KRModel& model);

/// Largest model (after phantom expansion) brute_force_group accepts.
inline constexpr std::size_t kOracleVertexLimit = 16;

/// Every root-fixing bijection of expand_degenerate(model) preserving
/// heights, kinds, adjacency and, at every vertex, the cyclic order of its
/// non-axial children up to rotation. Point i is the i-th vertex id in
/// ascending order. Throws TooLarge above kOracleVertexLimit vertices.
PermGroup brute_force_group(const KRModel& model);

/// Does evaluate(assemble(model)), moved onto the labelled vertices, equal
/// the oracle group restricted there (with the restriction faithful)?
bool oracle_agrees(const KRModel& model);

enum class Surface { Disk, Cylinder };
std::string_view to_string(Surface s);
Surface parse_surface(std::string_view name);

/// A model whose assemble() is normal_form(e), for e over cyclic atoms.
/// Heights are integers; product factors occupy disjoint height ranges.
KRModel realize(const GroupExpr& e, Surface surface = Surface::Disk);

/// Same model rooted at another boundary vertex (cylinders).
KRModel reroot(const KRModel& model, VertexId new_root);

struct RoundtripReport {
  bool ok = false;
  GroupExpr expected;  // normal_form(e)
  GroupExpr assembled;
  std::optional<std::size_t> oracle_order;  // when the model is small enough
  std::uint64_t expected_order = 0;
  std::string diff;  // empty when ok
};

RoundtripReport roundtrip(const GroupExpr& e, Surface surface = Surface::Disk);

}  // namespace krsym
