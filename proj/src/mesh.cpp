#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "krsym/error.hpp"
#include "krsym/reeb.hpp"

namespace krsym {

namespace {

MeshEdge make_edge(std::uint32_t a, std::uint32_t b) { return a < b ? MeshEdge{a, b} : MeshEdge{b, a}; }

// Does triangle t traverse a -> b?
bool has_directed(const Triangle& t, std::uint32_t a, std::uint32_t b) {
  for (int i = 0; i < 3; ++i)
    if (t[i] == a && t[(i + 1) % 3] == b) return true;
  return false;
}

}  // namespace

Mesh::Mesh(std::vector<Vec3> positions, std::vector<Triangle> triangles)
    : positions_(std::move(positions)), triangles_(std::move(triangles)) {
  const std::size_t nv = positions_.size();
  if (triangles_.empty()) throw Error(ErrorKind::Malformed, "mesh has no triangles");
  std::vector<bool> used(nv, false);
  std::map<MeshEdge, std::vector<std::uint32_t>> edge_tris;
  for (std::uint32_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    for (auto v : tri) {
      if (v >= nv) throw Error(ErrorKind::Malformed, "triangle " + std::to_string(t) + " references a missing vertex");
      used[v] = true;
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw Error(ErrorKind::Malformed, "triangle " + std::to_string(t) + " is degenerate");
    for (int i = 0; i < 3; ++i) {
      auto& list = edge_tris[make_edge(tri[i], tri[(i + 1) % 3])];
      list.push_back(t);
      if (list.size() > 2) throw Error(ErrorKind::Malformed, "edge shared by more than two triangles");
    }
  }
  if (std::find(used.begin(), used.end(), false) != used.end())
    throw Error(ErrorKind::Malformed, "mesh has isolated vertices");
  edge_count_ = edge_tris.size();

  // Orient by breadth-first propagation across shared edges.
  const std::size_t nt = triangles_.size();
  std::vector<int> state(nt, -1);  // -1 unvisited, otherwise visited
  std::vector<std::uint32_t> queue{0};
  state[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t t = queue[head];
    const Triangle tri = triangles_[t];
    for (int i = 0; i < 3; ++i) {
      const std::uint32_t a = tri[i], b = tri[(i + 1) % 3];
      for (std::uint32_t s : edge_tris[make_edge(a, b)]) {
        if (s == t) continue;
        // A consistent neighbor traverses the shared edge as b -> a.
        if (state[s] < 0) {
          if (has_directed(triangles_[s], a, b)) std::swap(triangles_[s][1], triangles_[s][2]);
          state[s] = 0;
          queue.push_back(s);
        } else if (has_directed(triangles_[s], a, b)) {
          throw Error(ErrorKind::NonOrientable, "mesh is not orientable");
        }
      }
    }
  }
  if (queue.size() != nt) throw Error(ErrorKind::Malformed, "mesh is not connected");

  // Boundary edges in triangle orientation, chained into loops.
  std::map<std::uint32_t, std::uint32_t> next;
  for (const auto& [edge, tris] : edge_tris) {
    if (tris.size() != 1) continue;
    const Triangle& tri = triangles_[tris.front()];
    const auto [a, b] = has_directed(tri, edge.first, edge.second) ? edge : MeshEdge{edge.second, edge.first};
    if (!next.emplace(a, b).second) throw Error(ErrorKind::Malformed, "boundary is pinched at vertex " + std::to_string(a));
  }
  while (!next.empty()) {
    std::vector<std::uint32_t> loop;
    std::uint32_t v = next.begin()->first;
    while (true) {
      auto it = next.find(v);
      if (it == next.end()) break;
      loop.push_back(v);
      v = it->second;
      next.erase(it);
    }
    if (v != loop.front()) throw Error(ErrorKind::Malformed, "open boundary chain");
    loops_.push_back(std::move(loop));
  }
}

long Mesh::euler_characteristic() const {
  return static_cast<long>(positions_.size()) - static_cast<long>(edge_count_) + static_cast<long>(triangles_.size());
}

Mesh read_off(std::istream& in) {
  // Tokenize with comments stripped.
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
  }
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw Error(ErrorKind::Malformed, "unexpected end of OFF data");
    return tokens[pos++];
  };
  auto next_uint = [&]() {
    const std::string& t = next();
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || t.front() == '-') throw Error(ErrorKind::Malformed, "expected a count, got '" + t + "'");
    return v;
  };
  auto next_double = [&]() {
    const std::string& t = next();
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) throw Error(ErrorKind::Malformed, "expected a coordinate, got '" + t + "'");
    return v;
  };
  if (next() != "OFF") throw Error(ErrorKind::Malformed, "missing OFF header");
  const std::size_t nv = next_uint(), nf = next_uint();
  next_uint();  // edge count, unused
  std::vector<Vec3> positions(nv);
  for (auto& p : positions) {
    p.x = next_double();
    p.y = next_double();
    p.z = next_double();
  }
  std::vector<Triangle> triangles(nf);
  for (auto& t : triangles) {
    if (next_uint() != 3) throw Error(ErrorKind::Malformed, "only triangular faces are supported");
    for (auto& v : t) v = static_cast<std::uint32_t>(next_uint());
  }
  if (pos != tokens.size()) throw Error(ErrorKind::Malformed, "trailing data after faces");
  return Mesh(std::move(positions), std::move(triangles));
}

Mesh load_off(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Malformed, "cannot open " + path);
  return read_off(in);
}

void write_off(std::ostream& out, const Mesh& mesh) {
  out << "OFF\n" << mesh.vertex_count() << ' ' << mesh.triangles().size() << ' ' << mesh.edge_count() << '\n';
  char buf[96];
  for (const auto& p : mesh.positions()) {
    std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f\n", p.x, p.y, p.z);
    out << buf;
  }
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

ScalarField ScalarField::from_values(const std::vector<double>& values, int decimals) {
  ScalarField f;
  char buf[64];
  for (double v : values) {
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    f.tokens.push_back(normalize_height(buf));
    f.values.push_back(std::stod(buf));
  }
  return f;
}

ScalarField read_values(std::istream& in, std::optional<std::size_t> expected) {
  ScalarField f;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string tok, extra;
    if (!(ss >> tok)) continue;
    if (ss >> extra) throw Error(ErrorKind::Malformed, "line " + std::to_string(lineno) + ": one value per line");
    std::string token;
    try {
      token = normalize_height(tok);
    } catch (const Error&) {
      throw Error(ErrorKind::Malformed, "line " + std::to_string(lineno) + ": bad value '" + tok + "'");
    }
    f.values.push_back(std::stod(tok));
    if (!std::isfinite(f.values.back()))
      throw Error(ErrorKind::Malformed, "line " + std::to_string(lineno) + ": value is not finite");
    f.tokens.push_back(std::move(token));
  }
  if (expected && f.values.size() != *expected)
    throw Error(ErrorKind::CountMismatch,
                std::to_string(f.values.size()) + " values for " + std::to_string(*expected) + " vertices");
  return f;
}

ScalarField load_values(const std::string& path, std::optional<std::size_t> expected) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Malformed, "cannot open " + path);
  return read_values(in, expected);
}

void write_values(std::ostream& out, const ScalarField& field) {
  for (const auto& t : field.tokens) out << t << '\n';
}

std::size_t count_level_components(const Mesh& mesh, const ScalarField& field, double h) {
  // Union-find over crossing edges, joined inside each crossed triangle.
  std::map<MeshEdge, std::size_t> index;
  auto crosses = [&](std::uint32_t a, std::uint32_t b) {
    return (field.values[a] < h) != (field.values[b] < h);
  };
  std::vector<std::size_t> parent;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto id_of = [&](std::uint32_t a, std::uint32_t b) {
    auto [it, inserted] = index.emplace(make_edge(a, b), parent.size());
    if (inserted) parent.push_back(parent.size());
    return it->second;
  };
  for (const auto& t : mesh.triangles()) {
    std::vector<std::size_t> crossing;
    for (int i = 0; i < 3; ++i)
      if (crosses(t[i], t[(i + 1) % 3])) crossing.push_back(id_of(t[i], t[(i + 1) % 3]));
    if (crossing.size() == 2) parent[find(crossing[0])] = find(crossing[1]);
  }
  std::size_t roots = 0;
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (find(i) == i) ++roots;
  return roots;
}

}  // namespace krsym
