#include <random>
#include <sstream>

#include "doctest.h"
#include "krsym/error.hpp"
#include "krsym/symmetry.hpp"
#include "krsym/treeact.hpp"
#include "support.hpp"

using namespace krsym;

namespace {

KRModel krt(const std::string& text) {
  std::istringstream in(text);
  return read_krt(in);
}

std::string group_of(const KRModel& m) { return pretty_print(assemble(m)); }

const char* kThreeBumps =
    "vertex 0 height=0 kind=boundary\n"
    "vertex 1 height=1 kind=saddle\n"
    "vertex 2 height=2 kind=extreme\n"
    "vertex 3 height=2 kind=extreme\n"
    "vertex 4 height=2 kind=extreme\n"
    "children 0: 1\n"
    "children 1: 2 3 4\n"
    "root 0\n";

// Plane-tree isomorphism with rotations at every vertex, by direct search.
bool plane_isomorphic(const KRModel& m, VertexId a, VertexId b) {
  const KRVertex &x = m.vertex(a), &y = m.vertex(b);
  if (x.height != y.height || x.kind != y.kind || x.symmetry != y.symmetry) return false;
  const auto &ca = m.children(a), &cb = m.children(b);
  if (ca.size() != cb.size()) return false;
  const std::size_t k = ca.size();
  if (k == 0) return true;
  for (std::size_t shift = 0; shift < k; ++shift) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = plane_isomorphic(m, ca[i], cb[(i + shift) % k]);
    if (ok) return true;
  }
  return false;
}

// The underlying tree of a model, vertex i being the i-th id.
Tree underlying_tree(const KRModel& m) {
  const auto ids = m.ids();
  auto index = [&](VertexId id) { return static_cast<Point>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin()); };
  std::vector<TreeEdge> edges;
  for (VertexId v : ids)
    for (VertexId c : m.children(v)) edges.emplace_back(std::min(index(v), index(c)), std::max(index(v), index(c)));
  return Tree(ids.size(), edges);
}

}  // namespace

TEST_CASE("rotation group of words") {
  const std::vector<std::string> aaa{"a", "a", "a"}, abab{"a", "b", "a", "b"}, abc{"a", "b", "c"}, one{"a"};
  CHECK(rotation_group(aaa) == 3);
  CHECK(rotation_group(abab) == 2);
  CHECK(rotation_group(abc) == 1);
  CHECK(rotation_group(one) == 1);
}

TEST_CASE("canonical codes") {
  const KRModel m = krt(
      "vertex 0 height=0 kind=boundary\n"
      "vertex 1 height=1 kind=saddle\n"
      "vertex 2 height=2 kind=saddle\n"
      "vertex 3 height=2 kind=saddle\n"
      "vertex 4 height=3 kind=extreme\n"
      "vertex 5 height=4 kind=extreme\n"
      "vertex 6 height=3 kind=extreme\n"
      "vertex 7 height=4 kind=extreme\n"
      "vertex 8 height=5 kind=extreme\n"
      "children 0: 1\n"
      "children 1: 2 3 8\n"
      "children 2: 4 5\n"
      "children 3: 7 6\n"
      "root 0\n");
  CHECK(canonical_code(m, 4) == canonical_code(m, 6));
  CHECK(canonical_code(m, 4) != canonical_code(m, 5));
  CHECK(canonical_code(m, 2) == canonical_code(m, 3));
  CHECK(canonical_code(m, 2) != canonical_code(m, 1));
}

TEST_CASE("canonical codes agree with plane isomorphism on random models") {
  std::mt19937 rng(5);
  for (int t = 0; t < 60; ++t) {
    const KRModel m = krsym::testing::random_model(rng, 12, t % 2 == 0);
    for (VertexId a : m.ids())
      for (VertexId b : m.ids()) CHECK((canonical_code(m, a) == canonical_code(m, b)) == plane_isomorphic(m, a, b));
  }
}

TEST_CASE("assemble examples") {
  CHECK(group_of(krt("vertex 0 height=0 kind=boundary\nvertex 1 height=1 kind=extreme\nchildren 0: 1\nroot 0\n")) == "1");
  CHECK(group_of(krt(kThreeBumps)) == "Z3");
  CHECK(group_of(realize(parse("Z2 x Z3"), Surface::Cylinder)) == "Z2 x Z3");
  CHECK(group_of(realize(parse("Z2 x Z3"), Surface::Disk)) == "Z2 x Z3");
  // Two height-disjoint gadgets on a cylinder: G0 x G1.
  for (std::string_view g0 : {"Z2", "Z3", "Z2 wr Z2"})
    for (std::string_view g1 : {"Z2", "Z4"}) {
      const GroupExpr e = GroupExpr::prod({parse(g0), parse(g1)});
      CHECK(assemble(realize(e, Surface::Cylinder)) == normal_form(e));
    }
}

TEST_CASE("brute force oracle") {
  const KRModel path = krt(
      "vertex 0 height=0 kind=boundary\nvertex 1 height=1 kind=saddle\nvertex 2 height=2 kind=extreme\n"
      "children 0: 1\nchildren 1: 2\nroot 0\n");
  CHECK(brute_force_group(path).order() == 1);
  CHECK(brute_force_group(krt(kThreeBumps)).order() == 3);
  const KRModel nested = realize(parse("Z2 wr Z3"));
  CHECK(brute_force_group(nested).order() == 24);
  CHECK(oracle_agrees(nested));
  try {
    brute_force_group(realize(parse("Z2 x Z3 x Z4")));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooLarge);
  }
}

TEST_CASE("realize") {
  const KRModel z3 = realize(parse("Z3"));
  CHECK(z3.size() == 5);
  CHECK(z3 == krt(kThreeBumps));
  const KRModel w = realize(parse("Z2 wr Z2"));
  CHECK(group_of(w) == "Z2 wr Z2");
  CHECK(brute_force_group(w).order() == 8);
  CHECK(group_of(realize(parse("1"))) == "1");
}

TEST_CASE("roundtrip") {
  for (std::string_view text : {"1", "Z4", "(Z2 x Z3) wr Z2", "(Z2 x Z2) wr Z3", "Z2 wr Z2 wr Z2"})
    for (Surface s : {Surface::Disk, Surface::Cylinder}) {
      const RoundtripReport r = roundtrip(parse(text), s);
      CHECK_MESSAGE(r.ok, text << ": " << r.diff);
      CHECK(r.expected_order == order(parse(text)));
      if (r.oracle_order) CHECK(*r.oracle_order == r.expected_order);
    }
  CHECK_FALSE(roundtrip(parse("(Z2 x Z3) wr Z2")).oracle_order);
}

TEST_CASE("degenerate extremes") {
  auto deg = [](int n) {
    return krt("vertex 0 height=0 kind=boundary\nvertex 1 height=1 kind=degextreme symmetry=" + std::to_string(n) +
               "\nchildren 0: 1\nroot 0\n");
  };
  CHECK(group_of(deg(4)) == "Z4");
  CHECK(group_of(deg(2)) == "Z2");
  CHECK(oracle_agrees(deg(4)));
  const KRModel expanded = expand_degenerate(deg(4));
  CHECK(expanded.size() == 6);
  CHECK(expand_degenerate(expanded) == expanded);
  const KRModel plain = krt("vertex 0 height=0 kind=boundary\nvertex 1 height=1 kind=extreme\nchildren 0: 1\nroot 0\n");
  CHECK(expand_degenerate(plain) == plain);
  CHECK(group_of(plain) == "1");
}

TEST_CASE("rerooting a cylinder leaves the group unchanged") {
  for (std::string_view text : {"Z2 x Z3", "Z2 wr Z3", "Z3", "(Z2 x Z2) wr Z2", "Z2 x Z2 wr Z2"}) {
    const KRModel m = realize(parse(text), Surface::Cylinder);
    std::optional<VertexId> other;
    for (VertexId v : m.ids())
      if (v != m.root() && m.vertex(v).kind == VertexKind::Boundary) other = v;
    REQUIRE(other);
    CHECK(assemble(reroot(m, *other)) == assemble(m));
  }
}

TEST_CASE("oracle group is TT, solvable and agrees with assemble on random models") {
  std::mt19937 rng(23);
  for (int t = 0; t < 100; ++t) {
    const KRModel m = krsym::testing::random_model(rng, t % 2 ? 14 : 10, t % 2 == 0);
    const PermGroup oracle = brute_force_group(m);
    CHECK(oracle_agrees(m));
    CHECK(is_solvable(evaluate(assemble(m))));
    CHECK(order(assemble(m)) == oracle.order());
    const TreeAction act(underlying_tree(expand_degenerate(m)), oracle);
    CHECK(check_TT(act).ok());
  }
}

TEST_CASE("rotations act freely on the children they move") {
  std::mt19937 rng(31);
  for (int t = 0; t < 40; ++t) {
    const KRModel m = expand_degenerate(krsym::testing::random_model(rng, 12, true));
    const PermGroup g = brute_force_group(m);
    const auto ids = m.ids();
    auto index = [&](VertexId id) { return static_cast<Point>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin()); };
    for (VertexId v : ids) {
      if (m.children(v).size() < 2) continue;
      const TreeAction act(underlying_tree(m), g);
      const PermGroup local = local_stabilizer(act, index(v));
      CHECK(is_semi_free(local));
    }
  }
}

TEST_CASE(".krt reading and writing") {
  const KRModel m = krt(kThreeBumps);
  CHECK(to_krt(m) == kThreeBumps);
  CHECK(normalize_height("+1.50") == "1.5");
  CHECK(normalize_height("-0.0") == "0");
  CHECK(normalize_height("2.") == "2");
  CHECK_THROWS_AS(krt("vertex 0 height=x kind=boundary\nroot 0\n"), Error);
  CHECK_THROWS_AS(krt("vertex 0 height=0 kind=boundary\nvertex 1 height=0 kind=extreme\nchildren 0: 1\nroot 0\n").validate(),
                  Error);
}
