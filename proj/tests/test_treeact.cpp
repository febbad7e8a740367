#include <sstream>

#include "doctest.h"
#include "krsym/error.hpp"
#include "krsym/treeact.hpp"
#include "support.hpp"

using namespace krsym;

namespace {

Permutation cyc(std::size_t n, std::vector<std::vector<Point>> cycles) { return Permutation::from_cycles(n, cycles); }

TreeAction action(std::size_t n, std::vector<TreeEdge> edges, std::vector<Permutation> gens) {
  return TreeAction(Tree(n, std::move(edges)), PermGroup(n, std::move(gens)));
}

// Center 0, leaves 1..3 rotated.
TreeAction z3_star() { return action(4, {{0, 1}, {0, 2}, {0, 3}}, {cyc(4, {{1, 2, 3}})}); }

// Path 1 - 0 - 2 with the leaves swapped.
TreeAction leaf_swap() { return action(3, {{0, 1}, {0, 2}}, {cyc(3, {{1, 2}})}); }

// u=0 with children a=1, b=2; a has 3, 4; b has 5, 6.
Tree depth_two() { return Tree(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}}); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Malformed;
}

}  // namespace

TEST_CASE("tree construction") {
  CHECK(kind_of([] { Tree(3, {{0, 1}}); }) == ErrorKind::NotATree);
  CHECK(kind_of([] { Tree(3, {{0, 1}, {1, 2}, {0, 2}}); }) == ErrorKind::NotATree);
  CHECK(kind_of([] { Tree(2, {{0, 0}}); }) == ErrorKind::NotATree);
  const Tree t(3, {{2, 1}, {1, 0}});
  CHECK(t.edges() == std::vector<TreeEdge>{{0, 1}, {1, 2}});
  CHECK(t.has_edge(2, 1));
  CHECK(t.is_automorphism(cyc(3, {{0, 2}})));
  CHECK_FALSE(t.is_automorphism(cyc(3, {{0, 1}})));
  CHECK(kind_of([] { action(3, {{0, 1}, {1, 2}}, {cyc(3, {{0, 1}})}); }) == ErrorKind::InvalidAction);
}

TEST_CASE("fixed sets") {
  const TreeAction trivial(Tree(3, {{0, 1}, {1, 2}}), PermGroup::trivial(3));
  CHECK(fix_set(trivial).vertices.size() == 3);
  CHECK(fix_set(trivial).edges.size() == 2);

  const FixSet star = fix_set(z3_star());
  CHECK(star.vertices == std::vector<Point>{0});
  CHECK(star.edges.empty());

  const FixSet swap = fix_set(leaf_swap());
  CHECK(swap.vertices == std::vector<Point>{0});
  CHECK(swap.edges.empty());

  // An edge whose endpoints are swapped is not fixed.
  const TreeAction flip = action(2, {{0, 1}}, {cyc(2, {{0, 1}})});
  CHECK(fix_set(flip).vertices.empty());
  CHECK(fix_set(flip).edges.empty());
}

TEST_CASE("stabilizers") {
  const TreeAction star = z3_star();
  CHECK(stabilizer(star, 0).order() == 3);
  CHECK(stabilizer(star, 1).order() == 1);
  CHECK(stabilizer_edge(star, 0, 1).order() == 1);
  CHECK(kind_of([&] { stabilizer_edge(star, 1, 2); }) == ErrorKind::NotAnEdge);
}

TEST_CASE("branches") {
  const Tree path(3, {{0, 1}, {0, 2}});
  const Subtree b = branch(path, 0, 2);
  CHECK(b.vertices == std::vector<Point>{0, 2});
  CHECK(b.edges == std::vector<TreeEdge>{{0, 2}});

  const Tree star = z3_star().tree();
  CHECK(branch(star, 0, 1).edges == std::vector<TreeEdge>{{0, 1}});

  const Tree caterpillar(3, {{0, 1}, {1, 2}});
  const Subtree r = reduced_branch(caterpillar, 0, 1);
  CHECK(r.vertices == std::vector<Point>{1, 2});
  CHECK(r.edges == std::vector<TreeEdge>{{1, 2}});
  CHECK(kind_of([&] { branch(caterpillar, 0, 2); }) == ErrorKind::NotAnEdge);
}

TEST_CASE("restriction to a branch") {
  const TreeAction act(depth_two(), PermGroup(7, {cyc(7, {{3, 4}, {5, 6}})}));
  const Permutation g = cyc(7, {{3, 4}, {5, 6}});
  CHECK(r_uv(act, 0, 1, Permutation::identity(7)).is_identity());
  CHECK(r_uv(act, 0, 1, g) == cyc(7, {{3, 4}}));
  CHECK(r_uv(act, 1, 0, g) == cyc(7, {{5, 6}}));
  CHECK(r_uv(act, 0, 1, g) * r_uv(act, 1, 0, g) == g);
  CHECK(r_uv(act, 0, 1, r_uv(act, 0, 1, g)) == r_uv(act, 0, 1, g));
  CHECK(kind_of([&] { r_uv(act, 0, 1, cyc(7, {{1, 2}, {3, 5}, {4, 6}})); }) == ErrorKind::NotInEdgeStabilizer);
}

TEST_CASE("t-decomposability") {
  CHECK(is_t_decomposable(z3_star()));
  const TreeAction four = action(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, {cyc(5, {{1, 2}, {3, 4}})});
  CHECK(is_t_decomposable(four));

  const TreeAction act(depth_two(), PermGroup(7, {cyc(7, {{3, 4}, {5, 6}})}));
  const TDecomposition d = is_t_decomposable(act);
  CHECK_FALSE(d);
  REQUIRE(d.witness);
  const auto& w = *d.witness;
  CHECK(act.tree().has_edge(w.u, w.v));
  CHECK(act.group().contains(w.g));
  CHECK_FALSE(act.group().contains(r_uv(act, w.u, w.v, w.g)));

  // The full group generated by both swaps is decomposable.
  CHECK(is_t_decomposable(TreeAction(depth_two(), PermGroup(7, {cyc(7, {{3, 4}}), cyc(7, {{5, 6}})}))));
}

TEST_CASE("local stabilizers") {
  const PermGroup l = local_stabilizer(z3_star(), 0);
  CHECK(l.degree() == 3);
  CHECK(recognize(l) == GroupClass{GroupClass::Kind::Cyclic, 3});
  CHECK(local_stabilizer(z3_star(), 1).is_trivial());
  CHECK(recognize(local_stabilizer(leaf_swap(), 0)) == GroupClass{GroupClass::Kind::Cyclic, 2});
}

TEST_CASE("TT conditions") {
  CHECK(check_TT(z3_star()).ok());
  CHECK(check_TT(leaf_swap()).ok());

  const Tree star4(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const TreeAction full(star4, PermGroup(5, {cyc(5, {{1, 2}}), cyc(5, {{2, 3}}), cyc(5, {{3, 4}})}));
  const TTReport r = check_TT(full);
  CHECK(r.a);
  CHECK(r.b);
  CHECK_FALSE(r.c);
  CHECK_FALSE(r.details.empty());
  // Aut of a star is symmetric at the center but not semi-free there.
  CHECK(symmetric_family(local_stabilizer(full, 0)));
  CHECK_FALSE(check_TT(full, symmetric_family).c);

  // No fixed vertex: the edge flip.
  CHECK_FALSE(check_TT(action(2, {{0, 1}}, {cyc(2, {{0, 1}})})).a);
}

TEST_CASE("partition decomposability") {
  PartitionAction blockwise{4, {{0, 1}, {2, 3}}, PermGroup(4, {cyc(4, {{0, 1}}), cyc(4, {{2, 3}})})};
  blockwise.validate();
  CHECK(partition_decomposable(blockwise));

  PartitionAction diagonal{4, {{0, 1}, {2, 3}}, PermGroup(4, {cyc(4, {{0, 1}, {2, 3}})})};
  const std::vector<std::size_t> first{0}, none{};
  CHECK_FALSE(partition_decomposable(diagonal, first));
  CHECK(partition_decomposable(diagonal, none));

  PartitionAction broken{4, {{0, 1}, {2, 3}}, PermGroup(4, {cyc(4, {{1, 2}})})};
  CHECK(kind_of([&] { broken.validate(); }) == ErrorKind::InvalidAction);
}

TEST_CASE("branch partitions") {
  const TreeAction act(depth_two(), PermGroup(7, {cyc(7, {{3, 4}, {5, 6}})}));
  const PartitionAction p = branch_partition(act, 0);
  CHECK(p.set_size == 6);
  REQUIRE(p.blocks.size() == 2);
  CHECK(p.blocks[0].size() == 3);
  CHECK_FALSE(partition_decomposable(p));
}

TEST_CASE("tree automorphisms match brute force") {
  for (std::size_t n = 1; n <= 7; ++n)
    for (const auto& edges : krsym::testing::trees_up_to_iso(n)) {
      const Tree t(n, std::vector<TreeEdge>(edges.begin(), edges.end()));
      CHECK(count_tree_automorphisms(t) == krsym::testing::brute_automorphisms(n, edges).size());
    }
}

TEST_CASE(".act round trip") {
  const TreeAction act = z3_star();
  std::stringstream s;
  write_act(s, act);
  const TreeAction back = read_act(s);
  CHECK(back.tree() == act.tree());
  CHECK(back.group() == act.group());

  std::istringstream bare("# a path\ntree 3\nedge 0 1\nedge 1 2\n");
  CHECK(read_act(bare).group().is_trivial());
  std::istringstream bad("tree 3\nedge 0 1\nedge 1 2\ngen 0 1\n");
  CHECK_THROWS_AS(read_act(bad), Error);
}
