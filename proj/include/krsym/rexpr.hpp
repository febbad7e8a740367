#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "krsym/groups.hpp"

namespace krsym {

enum class Family { Cyclic, Dihedral, Symmetric };

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Expression over direct products and wreath products of cyclic,
/// dihedral and symmetric atoms. Grammar (left-associative "wr" binds
/// tighter than "x"):
///
///   expr := term ("x" term)*
///   term := atom ("wr" atom)*
///   atom := "Z"INT | "D"INT | "S"INT | "1" | "(" expr ")"
///
/// A wreath node acts with its top's natural action when the top is an
/// atom, and with the right-regular action of the top otherwise.
class GroupExpr {
 public:
  enum class Kind { Triv, Atom, Prod, Wr };

  static GroupExpr triv();
  static GroupExpr atom(Family family, std::uint32_t n);
  static GroupExpr cyclic(std::uint32_t n) { return atom(Family::Cyclic, n); }
  static GroupExpr prod(std::vector<GroupExpr> factors);
  static GroupExpr wr(GroupExpr base, GroupExpr top);

  Kind kind() const noexcept { return kind_; }
  bool is_triv() const noexcept { return kind_ == Kind::Triv; }
  bool is_atom() const noexcept { return kind_ == Kind::Atom; }
  bool is_prod() const noexcept { return kind_ == Kind::Prod; }
  bool is_wr() const noexcept { return kind_ == Kind::Wr; }

  Family family() const noexcept { return family_; }
  std::uint32_t n() const noexcept { return n_; }
  /// Product factors, or {base, top} for a wreath node.
  const std::vector<GroupExpr>& children() const noexcept { return children_; }
  const GroupExpr& base() const { return children_.at(0); }
  const GroupExpr& top() const { return children_.at(1); }
  /// Size of the set the top acts on (wreath nodes only).
  std::size_t top_degree() const noexcept { return top_degree_; }

  SourceSpan span;

  /// Structural equality; source spans are ignored.
  friend bool operator==(const GroupExpr& a, const GroupExpr& b);

 private:
  Kind kind_ = Kind::Triv;
  Family family_ = Family::Cyclic;
  std::uint32_t n_ = 0;
  std::size_t top_degree_ = 0;
  std::vector<GroupExpr> children_;
};

GroupExpr parse(std::string_view text);
/// Canonical text: single spaces around operators, minimal parentheses.
std::string pretty_print(const GroupExpr& e);

/// |e| with checked arithmetic (Overflow on 64-bit overflow).
std::uint64_t order(const GroupExpr& e);
/// Number of points evaluate(e) acts on.
std::size_t domain_size(const GroupExpr& e);

/// Flattens products, drops trivial factors, rewrites 1 wr G -> G and
/// A wr (trivial top) -> A, and sorts product factors by (order, text).
GroupExpr normal_form(const GroupExpr& e);

/// normal_form together with the induced map of evaluation domains:
/// old_to_new[i] is the new index of old point i, or nullopt for points
/// of dropped trivial factors. Requires every wreath top to be an atom.
struct TrackedNormalForm {
  GroupExpr expr;
  std::vector<std::optional<Point>> old_to_new;
};
TrackedNormalForm normal_form_tracked(const GroupExpr& e);
/// Moves per-point labels of the original domain onto the normal form's.
std::vector<Point> carry_labels(const TrackedNormalForm& nf, std::span<const Point> old_labels);

/// Permutation group for a single atom: Z_n regular, D_n (n >= 3) and S_n
/// natural; D_1 acts as Z_2 on two points, D_2 as the Klein group on four.
PermGroup atom_group(Family family, std::uint32_t n, std::size_t cap = default_element_cap());
PermGroup evaluate(const GroupExpr& e, std::size_t cap = default_element_cap());

/// True when every atom is cyclic and every wreath top is an atom, i.e.
/// e is syntactically in the class generated by finite cyclic groups.
bool is_cyclic_class(const GroupExpr& e);
bool is_symmetric_class(const GroupExpr& e);

/// For an abelian base (product of abelian atoms) and top order n: does the
/// base have a non-trivial direct factor with unique n-th roots? That holds
/// exactly when some prime divides |base| but not n. NotAbelian otherwise.
bool neumann_direct_decomposable(const GroupExpr& base, std::uint64_t n);

enum class Membership { InR, NotInR, Unknown };
std::string_view to_string(Membership m);

struct MembershipReport {
  Membership verdict = Membership::Unknown;
  bool indecomposable = false;  // no unique n-th roots in the base
  bool top_noncyclic = false;
  std::vector<std::string> trace;
  /// One-line summary, e.g.
  /// "NotInR: indecomposable (no unique 4th roots) and top Z2xZ2 not cyclic".
  std::string summary;
};

/// Decides membership in the class generated by cyclic groups for wreath
/// products of an abelian base by an abelian top, using direct
/// indecomposability and rigidity of wreath products. Returns Unknown
/// whenever neither criterion applies.
MembershipReport analyze_membership(const GroupExpr& w);

}  // namespace krsym
