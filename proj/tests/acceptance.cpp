// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "krsym/decompose.hpp"
#include "krsym/error.hpp"
#include "krsym/fixtures.hpp"
#include "krsym/reeb.hpp"
#include "krsym/symmetry.hpp"
#include "support.hpp"

using namespace krsym;
namespace kt = krsym::testing;

namespace {

struct Outcome {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string note;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ < 3) note += (note.empty() ? "" : "; ") + what;
  }
};

// Groups met by the round-trip checks, re-checked for solvability later.
std::vector<GroupExpr> produced;

bool report(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.failures += 1;
    o.note = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0 || secs < limit_s;
  const bool pass = o.failures == 0 && in_time;
  std::printf("%s  %d. %s: %zu cases, %zu failures, %.2f s", pass ? "PASS" : "FAIL", id, title.c_str(), o.cases,
              o.failures, secs);
  if (limit_s > 0) std::printf(" (limit %.0f s)", limit_s);
  if (!o.note.empty()) std::printf("  [%s]", o.note.c_str());
  std::printf("\n");
  std::fflush(stdout);
  return pass;
}

Outcome roundtrip_classification() {
  Outcome o;
  kt::ExprGenerator gen(2024);
  std::set<std::string> seen;
  while (seen.size() < 200) {
    const GroupExpr e = gen.next(4, 10'000);
    if (!seen.insert(pretty_print(e)).second) continue;
    for (Surface s : {Surface::Disk, Surface::Cylinder}) {
      const GroupExpr got = normal_form(assemble(realize(e, s)));
      o.check(got == e, pretty_print(e) + " on " + std::string(to_string(s)) + " gave " + pretty_print(got));
    }
    if (order(e) <= 200) produced.push_back(e);
  }
  o.note = o.failures ? o.note : std::to_string(seen.size()) + " distinct expressions, disk and cylinder";
  return o;
}

std::vector<KRModel> oracle_models() {
  std::vector<KRModel> models;
  auto add = [&](const KRModel& m) {
    if (m.size() <= 14 && expand_degenerate(m).size() <= kOracleVertexLimit) models.push_back(m);
  };
  for (std::uint32_t n = 2; n <= 5; ++n) {
    const std::string z = "Z" + std::to_string(n);
    add(realize(parse(z)));                                      // rotated leaves about a saddle
    add(realize(parse("Z2 x " + z), Surface::Cylinder));         // height-disjoint gadgets
    add(realize(parse("Z2 x " + z), Surface::Disk));
    add(realize(parse(z + " wr Z2")));                           // copies of a gadget
    add(realize(parse("Z2 wr " + z)));
    std::ostringstream deg;
    deg << "vertex 0 height=0 kind=boundary\nvertex 1 height=1 kind=degextreme symmetry=" << n
        << "\nchildren 0: 1\nroot 0\n";
    std::istringstream in(deg.str());
    add(read_krt(in));
  }
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) add(kt::random_model(rng, 14, i % 3 == 0));
  return models;
}

Outcome oracle_equivalence() {
  Outcome o;
  for (const auto& m : oracle_models()) {
    const GroupExpr e = assemble(m);
    const bool agree = oracle_agrees(m) && brute_force_group(m).order() == order(e);
    o.check(agree, "model with " + std::to_string(m.size()) + " vertices, " + pretty_print(e));
    produced.push_back(e);
  }
  return o;
}

Outcome tt_equivalence() {
  Outcome o;
  for (const auto& e : kt::all_cyclic_expressions(200)) {
    const TreeAction act = expression_to_action(e);
    const TTReport tt = check_TT(act);
    const LabelledExpr back = action_to_expression(act);
    o.check(tt.ok() && back.expr == e && labels_agree(act, back), pretty_print(e));
    produced.push_back(e);
  }
  return o;
}

Outcome wreath_algebra() {
  Outcome o;
  // Order formula.
  const std::vector<std::string> bases{"1", "Z2", "Z3", "Z4", "S3", "Z2 x Z2", "D4"};
  const std::vector<std::string> tops{"Z2", "Z3", "Z4", "S3", "D4"};
  std::size_t formula_cases = 0;
  for (const auto& bt : bases)
    for (const auto& tt : tops)
      for (bool regular : {false, true}) {
        const PermGroup a = evaluate(parse(bt)), b = evaluate(parse(tt));
        const TopAction act = regular ? TopAction::regular(b) : TopAction::natural(b);
        std::uint64_t expected = b.order();
        for (std::size_t i = 0; i < act.set_size; ++i) expected *= a.order();
        if (expected > 50'000 || formula_cases == 30) continue;
        ++formula_cases;
        o.check(wreath_product(a, b, act).order() == expected, bt + " wr " + tt);
      }
  o.check(formula_cases == 30, "only " + std::to_string(formula_cases) + " order cases");

  std::mt19937 rng(4);
  for (auto [bt, tt] : {std::pair{"Z2", "Z3"}, std::pair{"Z3", "Z2"}}) {
    const PermGroup a = evaluate(parse(bt)), b = evaluate(parse(tt));
    std::uniform_int_distribution<std::size_t> pa(0, a.order() - 1), pb(0, b.order() - 1);
    auto random_element = [&] {
      WreathElement w;
      for (std::size_t x = 0; x < b.degree(); ++x) w.base.push_back(a.elements()[pa(rng)]);
      w.top = b.elements()[pb(rng)];
      return w;
    };
    const WreathElement e = wreath_identity(a.degree(), b.degree());
    for (int i = 0; i < 100; ++i) {
      const auto x = random_element(), y = random_element(), z = random_element();
      o.check(wreath_mul(wreath_mul(x, y), z) == wreath_mul(x, wreath_mul(y, z)), "associativity");
      o.check(wreath_mul(x, wreath_inverse(x)) == e && wreath_mul(wreath_inverse(x), x) == e, "inverse");
      o.check(wreath_mul(x, y).top == x.top * y.top, "projection is a homomorphism");
    }
    for (const auto& h : b.elements()) {
      WreathElement s = e;  // section h -> (identity base, h)
      s.top = h;
      o.check(s.top == h && wreath_mul(s, s) == WreathElement{e.base, h * h}, "section");
    }
  }
  return o;
}

Outcome neumann_example() {
  Outcome o;
  for (auto [q, r] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}, std::pair{3, 2}}) {
    const std::string text = "Z" + std::to_string(q) + " wr (Z" + std::to_string(q) + " x Z" + std::to_string(r * q) + ")";
    const MembershipReport rep = analyze_membership(parse(text));
    o.check(rep.verdict == Membership::NotInR && rep.indecomposable && rep.top_noncyclic && rep.trace.size() >= 2,
            text + " -> " + rep.summary);
  }
  o.check(neumann_direct_decomposable(parse("Z3"), 2), "unique square roots in Z3");

  // Brute-force direct decomposition of Z3 wr Z2: normal subgroups of
  // orders 3 and 6 that commute and meet trivially.
  const PermGroup g = evaluate(parse("Z3 wr Z2"));
  std::vector<std::vector<Point>> elems;
  for (const auto& p : g.elements()) elems.emplace_back(p.images().begin(), p.images().end());
  const std::size_t deg = g.degree();
  auto mul = [&](const std::vector<Point>& a, const std::vector<Point>& b) {
    std::vector<Point> c(deg);
    for (std::size_t i = 0; i < deg; ++i) c[i] = a[b[i]];
    return c;
  };
  auto inv = [&](const std::vector<Point>& a) {
    std::vector<Point> c(deg);
    for (std::size_t i = 0; i < deg; ++i) c[a[i]] = static_cast<Point>(i);
    return c;
  };
  std::set<std::set<std::vector<Point>>> subgroups;
  for (const auto& x : elems)
    for (const auto& y : elems) subgroups.insert(kt::bfs_closure(deg, {x, y}));
  auto normal = [&](const std::set<std::vector<Point>>& h) {
    for (const auto& x : elems)
      for (const auto& n : h)
        if (!h.count(mul(mul(x, n), inv(x)))) return false;
    return true;
  };
  bool found = false;
  for (const auto& n : subgroups) {
    if (n.size() != 3 || !normal(n)) continue;
    for (const auto& m : subgroups) {
      if (m.size() != 6 || !normal(m)) continue;
      bool commute = true;
      std::size_t shared = 0;
      for (const auto& a : n) {
        shared += m.count(a);
        for (const auto& b : m) commute = commute && mul(a, b) == mul(b, a);
      }
      if (commute && shared == 1) found = true;
    }
  }
  o.check(g.order() == 18 && found, "no decomposition of Z3 wr Z2 found");
  return o;
}

Outcome jordan() {
  Outcome o;
  for (std::size_t n = 1; n <= 9; ++n)
    for (const auto& edges : kt::trees_up_to_iso(n)) {
      const Tree t(n, std::vector<TreeEdge>(edges.begin(), edges.end()));
      const std::uint64_t got = order(jordan_decompose(t));
      const std::size_t want = kt::brute_automorphisms(n, edges).size();
      o.check(got == want, kt::tree_code(n, edges) + ": " + std::to_string(got) + " vs " + std::to_string(want));
    }
  return o;
}

Outcome solvability() {
  Outcome o;
  std::set<std::string> seen;
  for (const auto& e : produced) {
    if (order(e) > 200 || !seen.insert(pretty_print(e)).second) continue;
    o.check(is_solvable(evaluate(e)), pretty_print(e));
  }
  const PermGroup a5(5, {Permutation::from_cycles(5, {{0, 1, 2}}), Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})});
  o.check(a5.order() == 60 && !is_solvable(a5), "A5 reported solvable");
  return o;
}

Outcome reeb_pipeline() {
  Outcome o;
  std::map<std::string, std::string> expected{{"stacked-cylinder", "Z2 x Z3"}, {"nested-disk", "Z2 wr Z3"}};
  for (std::uint32_t n = 2; n <= 5; ++n) expected["bump-disk-" + std::to_string(n)] = "Z" + std::to_string(n);
  for (const auto& name : fixture_names()) {
    const Fixture fx = make_fixture(name);
    const ReebGraph g = compute_reeb(fx.mesh, fx.field);
    if (auto it = expected.find(name); it != expected.end()) {
      const std::string got = pretty_print(assemble(to_plane_tree(g)));
      o.check(got == it->second, name + " gave " + got);
    }
    for (const auto& node : g.nodes()) {
      if (node.kind == NodeKind::Boundary) continue;
      const Atom atom = extract_atom(g, node.id);
      if (node.kind != NodeKind::Saddle) {
        o.check(atom.lower.size() + atom.upper.size() == 1, name + " extreme atom");
        continue;
      }
      std::map<std::uint32_t, int> lower, upper;
      for (std::size_t c = 0; c < atom.lower.size(); ++c)
        for (auto id : eulerian_cycle(g, atom, Side::Lower, c).loops()) ++lower[id];
      for (std::size_t c = 0; c < atom.upper.size(); ++c)
        for (auto id : eulerian_cycle(g, atom, Side::Upper, c).loops()) ++upper[id];
      bool once = !lower.empty() && lower.size() == upper.size();
      for (const auto& [id, k] : lower) once = once && k == 1 && upper.count(id) && upper[id] == 1;
      o.check(once, name + " saddle " + std::to_string(node.id));
    }
  }
  return o;
}

Outcome t_decomposability_laws() {
  Outcome o;
  std::size_t actions = 0, indecomposable = 0;
  for (std::size_t n = 1; n <= 7; ++n)
    for (const auto& edges : kt::trees_up_to_iso(n)) {
      const Tree tree(n, std::vector<TreeEdge>(edges.begin(), edges.end()));
      std::set<std::set<std::vector<Point>>> groups;
      for (const auto& g : kt::brute_automorphisms(n, edges)) groups.insert(kt::bfs_closure(n, {g}));
      for (const auto& elems : groups) {
        if (elems.size() > 24) continue;
        std::vector<Permutation> gens;
        for (const auto& e : elems) gens.emplace_back(e);
        const TreeAction act(tree, PermGroup::from_elements(n, gens));
        bool forward = true, backward = true;
        for (auto [u, v] : tree.edges()) {
          const PermGroup stab = stabilizer_edge(act, u, v);
          for (const auto& g : stab.elements()) {
            const Permutation a = r_uv(act, u, v, g), b = r_uv(act, v, u, g);
            o.check(a * b == g, "factorization");
            o.check(r_uv(act, u, v, a) == a, "retraction");
            const auto sg = g.support(), sa = a.support();
            o.check(std::includes(sg.begin(), sg.end(), sa.begin(), sa.end()), "support");
            forward = forward && act.group().contains(a);
            backward = backward && act.group().contains(b);
          }
        }
        bool by_vertices = true;
        for (Point u = 0; u < n; ++u) by_vertices = by_vertices && partition_decomposable(branch_partition(act, u));
        const bool decided = is_t_decomposable(act).decomposable;
        ++actions;
        indecomposable += !decided;
        o.check(forward == backward, "orientation");
        o.check(decided == forward && decided == by_vertices, "vertex criterion on " + kt::tree_code(n, edges));
      }
    }
  if (!o.failures)
    o.note = std::to_string(actions) + " actions, " + std::to_string(indecomposable) + " not t-decomposable";
  return o;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "round-trip classification", 10, roundtrip_classification);
  ok &= report(2, "oracle equivalence", 30, [] {
    Outcome o = oracle_equivalence();
    o.check(o.cases >= 50, "fewer than 50 models");
    return o;
  });
  ok &= report(3, "TT and R equivalence", 0, tt_equivalence);
  ok &= report(4, "wreath algebra", 0, wreath_algebra);
  ok &= report(5, "unique roots example", 0, neumann_example);
  ok &= report(6, "Jordan decomposition", 60, jordan);
  ok &= report(7, "solvability", 0, solvability);
  ok &= report(8, "Reeb pipeline", 10, reeb_pipeline);
  ok &= report(9, "t-decomposability laws", 0, t_decomposability_laws);
  return ok ? 0 : 1;
}
