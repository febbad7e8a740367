#include <algorithm>
#include <unordered_set>

#include "krsym/error.hpp"
#include "krsym/groups.hpp"

namespace krsym {

PermGroup derived_subgroup(const PermGroup& g) {
  const auto& gens = g.generators();
  std::vector<Permutation> normal_gens;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j];
      if (!c.is_identity()) normal_gens.push_back(std::move(c));
    }
  if (normal_gens.empty()) return PermGroup::trivial(g.degree());

  // Normal closure of the generator commutators.
  std::vector<Permutation> span = close(normal_gens, g.cap());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& s : gens) {
      for (std::size_t k = 0; k < normal_gens.size(); ++k) {
        Permutation conj = s * normal_gens[k] * s.inverse();
        if (!std::binary_search(span.begin(), span.end(), conj)) {
          normal_gens.push_back(std::move(conj));
          span = close(normal_gens, g.cap());
          grew = true;
        }
      }
    }
  }
  return PermGroup::from_elements(g.degree(), std::move(span));
}

std::vector<std::size_t> derived_series_orders(const PermGroup& g) {
  std::vector<std::size_t> orders{g.order()};
  PermGroup current = g;
  while (current.order() > 1) {
    PermGroup next = derived_subgroup(current);
    if (next.order() == current.order()) break;
    orders.push_back(next.order());
    current = std::move(next);
  }
  return orders;
}

bool is_solvable(const PermGroup& g) { return derived_series_orders(g).back() == 1; }

std::string GroupClass::to_string() const {
  switch (kind) {
    case Kind::Trivial: return "trivial";
    case Kind::Cyclic: return "cyclic(" + std::to_string(n) + ")";
    case Kind::Dihedral: return "dihedral(" + std::to_string(n) + ")";
    case Kind::Symmetric: return "symmetric(" + std::to_string(n) + ")";
    case Kind::Other: return "other";
  }
  return "other";
}

namespace {

bool is_factorial(std::size_t n, std::size_t& k) {
  std::size_t f = 1;
  for (std::size_t i = 1; f <= n; ++i) {
    f *= i;
    if (f == n) {
      k = i;
      return true;
    }
  }
  return false;
}

}  // namespace

GroupClass recognize(const PermGroup& g) {
  using Kind = GroupClass::Kind;
  const std::size_t n = g.order();
  if (n == 1) return {Kind::Trivial, 1};
  const auto& els = g.elements();

  if (g.is_abelian() &&
      std::any_of(els.begin(), els.end(), [n](const Permutation& e) { return e.order() == n; }))
    return {Kind::Cyclic, n};

  std::size_t k = 0;
  if (is_factorial(n, k) && k >= 3) {
    for (const auto& orbit : g.orbits()) {
      if (orbit.size() != k) continue;
      if (g.restrict_to(orbit).order() == n) return {Kind::Symmetric, k};
    }
  }

  if (n % 2 == 0 && n >= 4) {
    const std::size_t half = n / 2;
    for (const auto& r : els) {
      if (r.order() != half) continue;
      const Permutation r_inv = r.inverse();
      std::vector<Permutation> rotations;
      for (std::size_t i = 0; i < half; ++i) rotations.push_back(r.pow(static_cast<long long>(i)));
      std::sort(rotations.begin(), rotations.end());
      for (const auto& s : els) {
        if (s.order() != 2 || std::binary_search(rotations.begin(), rotations.end(), s)) continue;
        if (s * r * s == r_inv) return {Kind::Dihedral, half};
      }
    }
  }
  return {Kind::Other, 0};
}

bool is_semi_free(const PermGroup& g) {
  std::vector<bool> globally_fixed(g.degree(), true);
  for (const auto& s : g.generators())
    for (Point p = 0; p < g.degree(); ++p)
      if (s[p] != p) globally_fixed[p] = false;
  for (const auto& e : g.elements()) {
    if (e.is_identity()) continue;
    for (Point p = 0; p < g.degree(); ++p)
      if (!globally_fixed[p] && e[p] == p) return false;
  }
  return true;
}

bool matches_on_labels(const PermGroup& acting, std::span<const Point> labels, const PermGroup& model) {
  if (model.degree() != labels.size()) return false;
  std::vector<int> index(acting.degree(), -1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= index.size() || index[labels[i]] >= 0) return false;
    index[labels[i]] = static_cast<int>(i);
  }
  std::vector<Permutation> restricted;
  restricted.reserve(acting.order());
  for (const auto& g : acting.elements()) {
    std::vector<Point> images(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const int j = index[g[labels[i]]];
      if (j < 0) return false;
      images[i] = static_cast<Point>(j);
    }
    restricted.emplace_back(std::move(images));
  }
  std::sort(restricted.begin(), restricted.end());
  if (std::adjacent_find(restricted.begin(), restricted.end()) != restricted.end()) return false;
  return restricted == model.elements();
}

}  // namespace krsym
