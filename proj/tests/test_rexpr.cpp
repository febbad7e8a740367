#include "doctest.h"
#include "krsym/error.hpp"
#include "krsym/rexpr.hpp"
#include "support.hpp"

using namespace krsym;

namespace {

std::string nf(std::string_view text) { return pretty_print(normal_form(parse(text))); }

ErrorKind parse_error_kind(std::string_view text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("parsed: " << text);
  return ErrorKind::Malformed;
}

}  // namespace

TEST_CASE("parse") {
  const GroupExpr z3 = parse("Z3");
  CHECK(z3.is_atom());
  CHECK(z3.family() == Family::Cyclic);
  CHECK(z3.n() == 3);

  const GroupExpr p = parse("Z2 x Z3");
  REQUIRE(p.is_prod());
  CHECK(p.children().size() == 2);
  CHECK(p.children()[1] == GroupExpr::cyclic(3));

  const GroupExpr w = parse("(Z2 x Z2) wr Z3");
  REQUIRE(w.is_wr());
  CHECK(w.base().is_prod());
  CHECK(w.top() == GroupExpr::cyclic(3));
  CHECK(w.top_degree() == 3);

  CHECK(parse("1").is_triv());
  CHECK(parse("D4").family() == Family::Dihedral);
  CHECK(parse("S3").family() == Family::Symmetric);
  // wr binds tighter than x and associates left.
  CHECK(parse("Z2 x Z3 wr Z2") == GroupExpr::prod({GroupExpr::cyclic(2), parse("Z3 wr Z2")}));
  CHECK(parse("Z2 wr Z3 wr Z2") == parse("(Z2 wr Z3) wr Z2"));
}

TEST_CASE("parse errors carry a position") {
  CHECK(parse_error_kind("Z") == ErrorKind::ParseError);
  CHECK(parse_error_kind("Z2 x") == ErrorKind::ParseError);
  CHECK(parse_error_kind("(Z2") == ErrorKind::ParseError);
  CHECK(parse_error_kind("Z2 Z3") == ErrorKind::ParseError);
  CHECK(parse_error_kind("Q5") == ErrorKind::ParseError);
  try {
    parse("Z2 x ?");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("order") {
  CHECK(order(parse("Z2 wr Z3")) == 24);
  CHECK(order(parse("(Z2 x Z3) wr Z2")) == 72);
  CHECK(order(parse("1")) == 1);
  CHECK(order(parse("D5")) == 10);
  CHECK(order(parse("S4")) == 24);
  CHECK(order(parse("Z2 wr (Z2 x Z2)")) == 64);
  CHECK_THROWS_AS(order(parse("Z1000 wr Z1000")), Error);
}

TEST_CASE("normal form") {
  CHECK(nf("1 x Z3") == "Z3");
  CHECK(nf("Z3 x Z2") == nf("Z2 x Z3"));
  CHECK(nf("Z3 x Z2") == "Z2 x Z3");
  CHECK(nf("1 wr Z5") == "Z5");
  CHECK(nf("Z4 wr Z1") == "Z4");
  CHECK(nf("Z2 x (Z3 x (1 x Z2))") == "Z2 x Z2 x Z3");
  CHECK(nf("(Z3 x Z2) wr Z2") == "(Z2 x Z3) wr Z2");
}

TEST_CASE("normal form is idempotent and order preserving on random expressions") {
  krsym::testing::ExprGenerator gen(11);
  for (int i = 0; i < 300; ++i) {
    const GroupExpr e = gen.next(4, 1'000'000);
    CHECK(normal_form(e) == e);
    CHECK(parse(pretty_print(e)) == e);
  }
  for (std::string_view text : {"Z2 x (1 x Z3) wr Z2", "1 wr (Z2 x Z2)", "(Z3 x Z2) x (Z5 wr Z1)", "D3 x 1 x S3"}) {
    const GroupExpr e = parse(text);
    CHECK(order(normal_form(e)) == order(e));
    CHECK(normal_form(normal_form(e)) == normal_form(e));
  }
}

TEST_CASE("pretty print round trips") {
  for (std::string_view text :
       {"1", "Z7", "Z2 x Z3", "Z2 wr Z3", "(Z2 x Z2) wr Z3", "Z2 wr Z3 wr Z2", "Z2 wr (Z2 x Z2)", "S3 wr S2",
        "D4 x Z2 wr Z2", "Z2 wr (Z3 wr Z2)", "Z3 x Z2"}) {
    const GroupExpr e = parse(text);
    CHECK(pretty_print(e) == text);
    CHECK(parse(pretty_print(e)) == e);
  }
}

TEST_CASE("evaluate") {
  const PermGroup z4 = evaluate(parse("Z4"));
  CHECK(recognize(z4) == GroupClass{GroupClass::Kind::Cyclic, 4});
  const PermGroup w = evaluate(parse("Z2 wr Z2"));
  CHECK(w.order() == 8);
  CHECK(recognize(w) == GroupClass{GroupClass::Kind::Dihedral, 4});
  const PermGroup z33 = evaluate(parse("Z3 x Z3"));
  CHECK(z33.order() == 9);
  CHECK(z33.is_abelian());
  for (std::string_view text : {"Z2 x Z3", "(Z2 x Z2) wr Z3", "Z3 wr Z2 wr Z2", "Z2 wr (Z2 x Z2)", "S3 wr S2", "D4", "D2",
                                "D1", "S4 x Z2"}) {
    const GroupExpr e = parse(text);
    const PermGroup g = evaluate(e);
    CHECK(g.order() == order(e));
    CHECK(g.degree() == domain_size(e));
  }
}

TEST_CASE("expressions over cyclic atoms are solvable") {
  for (const auto& e : krsym::testing::all_cyclic_expressions(60)) {
    CHECK(is_cyclic_class(e));
    CHECK(is_solvable(evaluate(e)));
  }
  CHECK_FALSE(is_cyclic_class(parse("S3")));
  CHECK_FALSE(is_cyclic_class(parse("Z2 wr (Z2 x Z2)")));
  CHECK(is_symmetric_class(parse("S3 wr S2")));
}

TEST_CASE("tracked normal form carries labels") {
  const GroupExpr e = parse("Z3 x 1 x Z2");
  const TrackedNormalForm t = normal_form_tracked(e);
  CHECK(pretty_print(t.expr) == "Z2 x Z3");
  REQUIRE(t.old_to_new.size() == domain_size(e));
  const std::vector<Point> labels{10, 11, 12, 13, 14, 15};
  const auto moved = carry_labels(t, labels);
  REQUIRE(moved.size() == 5);
  CHECK(moved[0] == 14);
  CHECK(moved[2] == 10);
}

TEST_CASE("unique roots criterion") {
  CHECK_FALSE(neumann_direct_decomposable(parse("Z2"), 4));
  CHECK(neumann_direct_decomposable(parse("Z3"), 2));
  CHECK_FALSE(neumann_direct_decomposable(parse("1"), 5));
  CHECK(neumann_direct_decomposable(parse("Z2 x Z3"), 2));
  CHECK_THROWS_AS(neumann_direct_decomposable(parse("S3"), 2), Error);
}

TEST_CASE("membership analysis") {
  const MembershipReport r = analyze_membership(parse("Z2 wr (Z2 x Z2)"));
  CHECK(r.verdict == Membership::NotInR);
  CHECK(r.indecomposable);
  CHECK(r.top_noncyclic);
  CHECK(r.summary == "NotInR: indecomposable (no unique 4th roots) and top Z2xZ2 not cyclic");
  CHECK(r.trace.size() >= 2);

  CHECK(analyze_membership(parse("Z3 wr (Z3 x Z6)")).verdict == Membership::NotInR);
  CHECK(analyze_membership(parse("Z2 wr Z4")).verdict == Membership::InR);
  CHECK(analyze_membership(parse("Z3 wr (Z2 x Z2)")).verdict != Membership::NotInR);
}
