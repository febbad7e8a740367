#pragma once

#include <vector>

#include "krsym/rexpr.hpp"
#include "krsym/treeact.hpp"

namespace krsym {

/// An expression together with the vertices its evaluation acts on:
/// point i of evaluate(expr) is tree vertex labels[i].
struct LabelledExpr {
  GroupExpr expr;
  std::vector<Point> labels;
};

/// Structure formula for a TT action with cyclic local stabilizers: recurse
/// from the smallest fixed vertex, giving fixed branches direct factors and
/// each set of free orbits a wreath product by the cyclic local stabilizer.
/// The result is in normal form. Throws NotTT naming the failed condition.
LabelledExpr action_to_expression(const TreeAction& act);

/// Does evaluate(result.expr), moved onto the labelled vertices, equal the
/// action's group restricted there, with the restriction faithful?
bool labels_agree(const TreeAction& act, const LabelledExpr& result);

/// A tree action realizing a cyclic-atom expression: vertex 0 is a fixed
/// root of degree 1; Z_n is n leaves rotated about a fixed center, products
/// wedge their factors at a common center, and A wr Z_n wedges n rotated
/// copies of A's tree.
TreeAction expression_to_action(const GroupExpr& e);

/// Aut(T) as an expression over symmetric atoms, from canonical subtree
/// codes rooted at the center (or center edge). Normal form.
GroupExpr jordan_decompose(const Tree& tree);

}  // namespace krsym
