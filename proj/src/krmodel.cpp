#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "krsym/error.hpp"
#include "krsym/krmodel.hpp"

namespace krsym {

std::string_view to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Boundary: return "boundary";
    case VertexKind::Extreme: return "extreme";
    case VertexKind::DegExtreme: return "degextreme";
    case VertexKind::Saddle: return "saddle";
    case VertexKind::Regular: return "regular";
    case VertexKind::Phantom: return "phantom";
  }
  return "regular";
}

VertexKind parse_vertex_kind(std::string_view name) {
  for (auto k : {VertexKind::Boundary, VertexKind::Extreme, VertexKind::DegExtreme, VertexKind::Saddle,
                 VertexKind::Regular, VertexKind::Phantom})
    if (to_string(k) == name) return k;
  throw Error(ErrorKind::Malformed, "unknown vertex kind '" + std::string(name) + "'");
}

std::string normalize_height(std::string_view text) {
  if (text == kPhantomHeight) return std::string(kPhantomHeight);
  auto bad = [&] { return Error(ErrorKind::Malformed, "bad decimal '" + std::string(text) + "'"); };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  std::string digits;
  long point = -1;  // digits before the decimal point
  while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
    if (text[i] == '.') {
      if (point >= 0) throw bad();
      point = static_cast<long>(digits.size());
    } else {
      digits += text[i];
    }
    ++i;
  }
  if (digits.empty()) throw bad();
  if (point < 0) point = static_cast<long>(digits.size());
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::size_t used = 0;
    long exp = 0;
    try {
      exp = std::stol(std::string(text.substr(i)), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used == 0 || i + used != text.size() || exp > 400 || exp < -400) throw bad();
    i += used;
    point += exp;
  }
  if (i != text.size()) throw bad();
  // Pad so the point falls inside the digit string.
  if (point < 0) {
    digits.insert(0, static_cast<std::size_t>(-point), '0');
    point = 0;
  }
  if (point > static_cast<long>(digits.size())) digits.append(static_cast<std::size_t>(point) - digits.size(), '0');
  std::string int_part = digits.substr(0, static_cast<std::size_t>(point));
  std::string frac_part = digits.substr(static_cast<std::size_t>(point));
  int_part.erase(0, std::min(int_part.find_first_not_of('0'), int_part.size()));
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
  if (int_part.empty()) int_part = "0";
  std::string out = int_part;
  if (!frac_part.empty()) out += "." + frac_part;
  if (negative && out != "0") out = "-" + out;
  return out;
}

void KRModel::add_vertex(KRVertex v) {
  if (nodes_.count(v.id)) throw Error(ErrorKind::InvalidModel, "duplicate vertex " + std::to_string(v.id));
  const VertexId id = v.id;
  nodes_.emplace(id, Node{std::move(v), {}});
}

void KRModel::set_children(VertexId parent, std::vector<VertexId> children) {
  auto it = nodes_.find(parent);
  if (it == nodes_.end()) throw Error(ErrorKind::InvalidModel, "unknown vertex " + std::to_string(parent));
  it->second.children = std::move(children);
}

const KRVertex& KRModel::vertex(VertexId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorKind::InvalidModel, "unknown vertex " + std::to_string(id));
  return it->second.v;
}

const std::vector<VertexId>& KRModel::children(VertexId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorKind::InvalidModel, "unknown vertex " + std::to_string(id));
  return it->second.children;
}

std::optional<VertexId> KRModel::parent(VertexId id) const {
  for (const auto& [pid, node] : nodes_)
    if (std::find(node.children.begin(), node.children.end(), id) != node.children.end()) return pid;
  return std::nullopt;
}

VertexId KRModel::root() const {
  if (!root_) throw Error(ErrorKind::InvalidModel, "model has no root");
  return *root_;
}

std::vector<VertexId> KRModel::ids() const {
  std::vector<VertexId> out;
  out.reserve(nodes_.size());
  for (const auto& [id, node] : nodes_) out.push_back(id);
  return out;
}

void KRModel::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidModel, why); };
  if (!root_) fail("model has no root");
  if (!nodes_.count(*root_)) fail("root " + std::to_string(*root_) + " is not a vertex");
  if (nodes_.at(*root_).v.kind != VertexKind::Boundary) fail("root must be a boundary vertex");

  std::set<VertexId> seen{*root_};
  std::vector<VertexId> stack{*root_};
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    const Node& node = nodes_.at(u);
    for (VertexId c : node.children) {
      auto it = nodes_.find(c);
      if (it == nodes_.end()) fail("child " + std::to_string(c) + " of " + std::to_string(u) + " is not a vertex");
      if (!seen.insert(c).second) fail("vertex " + std::to_string(c) + " is reached twice");
      const KRVertex& cv = it->second.v;
      if (cv.kind != VertexKind::Phantom && cv.height == node.v.height)
        fail("adjacent vertices " + std::to_string(u) + " and " + std::to_string(c) + " share height " + cv.height);
      stack.push_back(c);
    }
  }
  if (seen.size() != nodes_.size()) fail("some vertices are not reachable from the root");

  for (const auto& [id, node] : nodes_) {
    const KRVertex& v = node.v;
    switch (v.kind) {
      case VertexKind::Boundary:
        if (id != *root_ && !node.children.empty()) fail("boundary vertex " + std::to_string(id) + " is interior");
        break;
      case VertexKind::DegExtreme: {
        if (v.symmetry < 2) fail("degenerate extreme " + std::to_string(id) + " needs symmetry >= 2");
        const bool leaf = node.children.empty();
        const bool expanded = node.children.size() == v.symmetry &&
                              std::all_of(node.children.begin(), node.children.end(), [&](VertexId c) {
                                return nodes_.at(c).v.kind == VertexKind::Phantom;
                              });
        if (!leaf && !expanded) fail("degenerate extreme " + std::to_string(id) + " has children");
        break;
      }
      case VertexKind::Extreme:
      case VertexKind::Phantom:
        if (!node.children.empty()) fail(std::string(to_string(v.kind)) + " vertex " + std::to_string(id) + " has children");
        break;
      default: break;
    }
  }
}

bool operator==(const KRModel& a, const KRModel& b) {
  if (a.root_ != b.root_ || a.nodes_.size() != b.nodes_.size()) return false;
  for (auto ia = a.nodes_.begin(), ib = b.nodes_.begin(); ia != a.nodes_.end(); ++ia, ++ib) {
    const auto& [va, ca] = ia->second;
    const auto& [vb, cb] = ib->second;
    if (ia->first != ib->first || va.height != vb.height || va.kind != vb.kind || va.symmetry != vb.symmetry ||
        ca != cb)
      return false;
  }
  return true;
}

namespace {

std::uint32_t parse_id(const std::string& s, std::size_t lineno) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || !std::isdigit(static_cast<unsigned char>(s.front())) || v > 0xffffffffUL)
    throw Error(ErrorKind::Malformed, "line " + std::to_string(lineno) + ": bad id '" + s + "'");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

KRModel read_krt(std::istream& in) {
  KRModel model;
  std::vector<std::pair<VertexId, std::vector<VertexId>>> child_lines;
  std::optional<VertexId> root;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string keyword;
    if (!(ss >> keyword)) continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::Malformed, "line " + std::to_string(lineno) + ": " + why);
    };
    if (keyword == "vertex") {
      std::string id_text;
      if (!(ss >> id_text)) fail("missing vertex id");
      KRVertex v;
      v.id = parse_id(id_text, lineno);
      bool have_height = false, have_kind = false;
      std::string field;
      while (ss >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) fail("expected key=value, got '" + field + "'");
        const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
        if (key == "height") {
          v.height = normalize_height(value);
          have_height = true;
        } else if (key == "kind") {
          v.kind = parse_vertex_kind(value);
          have_kind = true;
        } else if (key == "symmetry") {
          v.symmetry = parse_id(value, lineno);
        } else {
          fail("unknown field '" + key + "'");
        }
      }
      if (!have_height || !have_kind) fail("vertex needs height= and kind=");
      if (v.symmetry && v.kind != VertexKind::DegExtreme) fail("symmetry= is only valid for degextreme");
      try {
        model.add_vertex(std::move(v));
      } catch (const Error& e) {
        fail(e.what());
      }
    } else if (keyword == "children") {
      std::string head;
      if (!(ss >> head) || head.size() < 2 || head.back() != ':') fail("expected 'children <id>:'");
      head.pop_back();
      const VertexId parent = parse_id(head, lineno);
      std::vector<VertexId> kids;
      std::string tok;
      while (ss >> tok) kids.push_back(parse_id(tok, lineno));
      child_lines.emplace_back(parent, std::move(kids));
    } else if (keyword == "root") {
      std::string tok, extra;
      if (root || !(ss >> tok) || (ss >> extra)) fail("bad root line");
      root = parse_id(tok, lineno);
    } else {
      fail("unknown keyword '" + keyword + "'");
    }
  }
  for (auto& [parent, kids] : child_lines) {
    if (!model.contains(parent)) throw Error(ErrorKind::Malformed, "children of unknown vertex " + std::to_string(parent));
    if (!model.children(parent).empty())
      throw Error(ErrorKind::Malformed, "children of " + std::to_string(parent) + " listed twice");
    model.set_children(parent, std::move(kids));
  }
  if (!root) throw Error(ErrorKind::Malformed, "missing root line");
  model.set_root(*root);
  return model;
}

KRModel load_krt(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Malformed, "cannot open " + path);
  return read_krt(in);
}

void write_krt(std::ostream& out, const KRModel& model, bool include_phantoms) {
  auto shown = [&](VertexId id) { return include_phantoms || model.vertex(id).kind != VertexKind::Phantom; };
  for (VertexId id : model.ids()) {
    if (!shown(id)) continue;
    const KRVertex& v = model.vertex(id);
    out << "vertex " << id << " height=" << v.height << " kind=" << to_string(v.kind);
    if (v.kind == VertexKind::DegExtreme) out << " symmetry=" << v.symmetry;
    out << '\n';
  }
  for (VertexId id : model.ids()) {
    if (!shown(id)) continue;
    std::vector<VertexId> kids;
    for (VertexId c : model.children(id))
      if (shown(c)) kids.push_back(c);
    if (kids.empty()) continue;
    out << "children " << id << ":";
    for (VertexId c : kids) out << ' ' << c;
    out << '\n';
  }
  if (model.has_root()) out << "root " << model.root() << '\n';
}

std::string to_krt(const KRModel& model, bool include_phantoms) {
  std::ostringstream ss;
  write_krt(ss, model, include_phantoms);
  return ss.str();
}

}  // namespace krsym
