// krsym: command-line front end for the Reeb / symmetry / decomposition
// pipeline. Exit codes: 0 ok, 1 verification mismatch, 2 bad input,
// 3 structural precondition failed.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "krsym/decompose.hpp"
#include "krsym/error.hpp"
#include "krsym/fixtures.hpp"
#include "krsym/reeb.hpp"
#include "krsym/rexpr.hpp"
#include "krsym/symmetry.hpp"
#include "krsym/treeact.hpp"

using namespace krsym;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kBadInput = 2, kStructural = 3 };

bool tsv = false;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::Malformed:
    case ErrorKind::CountMismatch:
    case ErrorKind::InvalidArgument: return kBadInput;
    default: return kStructural;
  }
}

// One record: "key=value  key=value" in plain mode, tab-separated values
// in tsv mode.
void emit(const std::vector<std::pair<std::string, std::string>>& fields) {
  std::string line;
  for (const auto& [k, v] : fields) {
    if (!line.empty()) line += tsv ? "\t" : "  ";
    line += tsv ? v : k + "=" + v;
  }
  std::cout << line << '\n';
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

std::string solvable_text(const GroupExpr& e) {
  try {
    return yes_no(is_solvable(evaluate(e)));
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::CapExceeded) return "unknown";
    throw;
  }
}

int cmd_reeb(const std::string& mesh_path, const std::string& values_path, const std::string& dot_path,
             const std::string& krt_path) {
  const Mesh mesh = load_off(mesh_path);
  const ScalarField field = load_values(values_path, mesh.vertex_count());
  const ReebGraph g = compute_reeb(mesh, field);
  emit({{"vertices", std::to_string(g.nodes().size())},
        {"edges", std::to_string(g.arcs().size())},
        {"tree", yes_no(g.is_tree())}});
  if (!dot_path.empty()) write_file(dot_path, to_dot(g));
  if (!krt_path.empty()) {
    const KRModel model = to_plane_tree(g);
    write_file(krt_path, to_krt(model));
    std::cout << (tsv ? "" : "wrote ") << ".krt with " << model.size() << " vertices\n";
  }
  return kOk;
}

int cmd_symmetry(const std::string& path) {
  const KRModel model = load_krt(path);
  const GroupExpr e = assemble(model);
  if (tsv) {
    emit({{"G", pretty_print(e)}, {"order", std::to_string(order(e))}, {"solvable", solvable_text(e)}});
  } else {
    std::cout << "G(f) = " << pretty_print(e) << "  order=" << order(e) << "  solvable=" << solvable_text(e) << '\n';
  }
  return kOk;
}

int cmd_realize(const std::string& text, const std::string& surface, const std::string& out_path) {
  const KRModel model = realize(parse(text), parse_surface(surface));
  if (out_path.empty())
    std::cout << to_krt(model);
  else
    write_file(out_path, to_krt(model));
  return kOk;
}

int cmd_roundtrip(const std::string& text, const std::string& surface) {
  const RoundtripReport r = roundtrip(parse(text), parse_surface(surface));
  std::vector<std::pair<std::string, std::string>> fields{{"status", r.ok ? "ok" : "mismatch"},
                                                          {"expected", pretty_print(r.expected)},
                                                          {"assembled", pretty_print(r.assembled)},
                                                          {"order", std::to_string(r.expected_order)}};
  if (r.oracle_order) fields.emplace_back("oracle_order", std::to_string(*r.oracle_order));
  emit(fields);
  if (!r.ok) std::cout << r.diff << '\n';
  return r.ok ? kOk : kMismatch;
}

int cmd_decompose(const std::string& path) {
  const TreeAction act = load_act(path);
  const LabelledExpr result = action_to_expression(act);
  std::string labels;
  for (Point p : result.labels) labels += (labels.empty() ? "" : ",") + std::to_string(p);
  emit({{"expr", pretty_print(result.expr)},
        {"order", std::to_string(order(result.expr))},
        {"labels", labels.empty() ? "-" : labels}});
  return labels_agree(act, result) ? kOk : kMismatch;
}

int cmd_jordan(const std::string& path) {
  const TreeAction act = load_act(path);
  const GroupExpr e = jordan_decompose(act.tree());
  if (tsv)
    emit({{"expr", pretty_print(e)}, {"order", std::to_string(order(e))}});
  else
    std::cout << pretty_print(e) << ", order " << order(e) << '\n';
  return kOk;
}

int cmd_analyze(const std::string& text) {
  const MembershipReport r = analyze_membership(parse(text));
  std::cout << r.summary << '\n';
  if (!tsv)
    for (const auto& t : r.trace) std::cout << "  " << t << '\n';
  return kOk;
}

int cmd_oracle(const std::string& path) {
  const KRModel model = load_krt(path);
  const GroupExpr e = assemble(model);
  const PermGroup oracle = brute_force_group(model);
  const bool agree = oracle_agrees(model);
  emit({{"assembled", pretty_print(e)},
        {"order", std::to_string(order(e))},
        {"oracle_order", std::to_string(oracle.order())},
        {"agree", yes_no(agree)}});
  return agree ? kOk : kMismatch;
}

int cmd_fixture(const std::string& name, const std::string& off_path, const std::string& values_path) {
  const Fixture fx = make_fixture(name);
  std::ostringstream off, vals;
  write_off(off, fx.mesh);
  write_values(vals, fx.field);
  write_file(off_path, off.str());
  write_file(values_path, vals.str());
  return kOk;
}

// Runs the mesh pipeline on several fixtures, optionally in parallel.
int cmd_fixtures(std::vector<std::string> names, unsigned jobs) {
  if (names.empty()) names = fixture_names();
  const auto known = fixture_names();
  for (const auto& n : names)
    if (std::find(known.begin(), known.end(), n) == known.end())
      throw Error(ErrorKind::InvalidArgument, "unknown fixture " + n);
  std::vector<std::vector<std::pair<std::string, std::string>>> rows(names.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < names.size(); i = next++) {
      auto& row = rows[i];
      row.emplace_back("fixture", names[i]);
      try {
        const Fixture fx = make_fixture(names[i]);
        const ReebGraph g = compute_reeb(fx.mesh, fx.field);
        row.emplace_back("vertices", std::to_string(g.nodes().size()));
        row.emplace_back("edges", std::to_string(g.arcs().size()));
        row.emplace_back("tree", yes_no(g.is_tree()));
        std::string group = "-";
        if (g.is_tree()) try {
            group = pretty_print(assemble(to_plane_tree(g)));
          } catch (const Error& e) {
            group = std::string(to_string(e.kind()));
          }
        row.emplace_back("G", group);
      } catch (const Error& e) {
        row.emplace_back("error", e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& r : rows) emit(r);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial symmetry groups of functions on surfaces"};
  app.require_subcommand(1);
  std::string format = "plain";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "tsv"}));
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads for fixture batches")->check(CLI::PositiveNumber);

  std::string a, b, dot, krt, surface = "disk", out;
  std::vector<std::string> names;
  std::function<int()> run;

  auto* reeb = app.add_subcommand("reeb", "Reeb graph of a mesh and vertex values");
  reeb->add_option("mesh", a, "OFF mesh")->required();
  reeb->add_option("values", b, "One value per vertex")->required();
  reeb->add_option("--dot", dot, "Write the graph as DOT");
  reeb->add_option("--krt", krt, "Write the plane tree as .krt");
  reeb->callback([&] { run = [&] { return cmd_reeb(a, b, dot, krt); }; });

  auto* sym = app.add_subcommand("symmetry", "G(f) of a .krt model");
  sym->add_option("model", a, ".krt file")->required();
  sym->callback([&] { run = [&] { return cmd_symmetry(a); }; });

  auto* rea = app.add_subcommand("realize", "A .krt model realizing an expression");
  rea->add_option("expr", a, "Group expression")->required();
  rea->add_option("--surface", surface, "disk or cylinder");
  rea->add_option("-o,--output", out, "Output path (default stdout)");
  rea->callback([&] { run = [&] { return cmd_realize(a, surface, out); }; });

  auto* rt = app.add_subcommand("roundtrip", "realize then assemble, compare");
  rt->add_option("expr", a, "Group expression")->required();
  rt->add_option("--surface", surface, "disk or cylinder");
  rt->callback([&] { run = [&] { return cmd_roundtrip(a, surface); }; });

  auto* dec = app.add_subcommand("decompose", "Expression of a TT tree action");
  dec->add_option("action", a, ".act file")->required();
  dec->callback([&] { run = [&] { return cmd_decompose(a); }; });

  auto* jor = app.add_subcommand("jordan", "Automorphism group of a tree");
  jor->add_option("tree", a, ".act or .tree file")->required();
  jor->callback([&] { run = [&] { return cmd_jordan(a); }; });

  auto* ana = app.add_subcommand("analyze", "Membership of a wreath product in the cyclic class");
  ana->add_option("expr", a, "Group expression")->required();
  ana->callback([&] { run = [&] { return cmd_analyze(a); }; });

  auto* ora = app.add_subcommand("oracle", "Compare assemble with the brute-force group");
  ora->add_option("model", a, ".krt file")->required();
  ora->callback([&] { run = [&] { return cmd_oracle(a); }; });

  auto* fix = app.add_subcommand("fixture", "Write a built-in fixture mesh and values");
  fix->add_option("name", a, "Fixture name")->required();
  fix->add_option("off", b, "Output OFF path")->required();
  fix->add_option("values", out, "Output values path")->required();
  fix->callback([&] { run = [&] { return cmd_fixture(a, b, out); }; });

  auto* fixs = app.add_subcommand("fixtures", "Run the mesh pipeline on built-in fixtures");
  fixs->add_option("names", names, "Fixture names (default: all)");
  fixs->callback([&] { run = [&] { return cmd_fixtures(names, jobs); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }
  tsv = format == "tsv";
  try {
    return run();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
}
