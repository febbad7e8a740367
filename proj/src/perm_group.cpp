#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "krsym/error.hpp"
#include "krsym/groups.hpp"

namespace krsym {

PermGroup::PermGroup() : PermGroup(0, {}) {}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators,
                     std::size_t cap)
    : degree_(degree),
      cap_(cap),
      seed_generators_(std::move(generators)),
      cache_(std::make_shared<Cache>()) {
  for (const auto& g : seed_generators_)
    if (g.degree() != degree_)
      throw Error(ErrorKind::InvalidArgument, "generator degree does not match group degree");
  std::erase_if(seed_generators_, [](const Permutation& g) { return g.is_identity(); });
}

PermGroup PermGroup::trivial(std::size_t degree) { return PermGroup(degree, {}); }

PermGroup PermGroup::from_elements(std::size_t degree, std::vector<Permutation> elements) {
  PermGroup g(degree, {});
  for (const auto& e : elements)
    if (e.degree() != degree)
      throw Error(ErrorKind::InvalidArgument, "element degree does not match group degree");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty()) elements.push_back(Permutation::identity(degree));
  g.from_elements_ = true;
  g.cap_ = std::max(default_element_cap(), elements.size());
  std::call_once(g.cache_->elements_once,
                 [&] { g.cache_->elements = std::move(elements); });
  return g;
}

const std::vector<Permutation>& PermGroup::elements() const {
  std::call_once(cache_->elements_once, [this] {
    if (seed_generators_.empty())
      cache_->elements = {Permutation::identity(degree_)};
    else
      cache_->elements = close(seed_generators_, cap_);
  });
  return cache_->elements;
}

const std::vector<Permutation>& PermGroup::generators() const {
  std::call_once(cache_->generators_once, [this] {
    if (!from_elements_) {
      cache_->generators = seed_generators_;
      return;
    }
    // Greedy generating set: add the first element outside the current span.
    std::vector<Permutation> gens;
    std::unordered_set<Permutation, PermutationHash> span{Permutation::identity(degree_)};
    for (const auto& e : elements()) {
      if (span.contains(e)) continue;
      gens.push_back(e);
      auto closed = close(gens, cap_);
      span = std::unordered_set<Permutation, PermutationHash>(closed.begin(), closed.end());
      if (span.size() == elements().size()) break;
    }
    cache_->generators = std::move(gens);
  });
  return cache_->generators;
}

bool PermGroup::contains(const Permutation& p) const {
  const auto& els = elements();
  return std::binary_search(els.begin(), els.end(), p);
}

bool PermGroup::is_abelian() const {
  const auto& gens = generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
  return true;
}

std::vector<std::vector<Point>> PermGroup::orbits() const {
  std::vector<int> owner(degree_, -1);
  std::vector<std::vector<Point>> result;
  for (Point start = 0; start < degree_; ++start) {
    if (owner[start] >= 0) continue;
    std::vector<Point> orbit{start};
    owner[start] = static_cast<int>(result.size());
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (const auto& g : generators()) {
        Point q = g[orbit[head]];
        if (owner[q] < 0) {
          owner[q] = static_cast<int>(result.size());
          orbit.push_back(q);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    result.push_back(std::move(orbit));
  }
  return result;
}

PermGroup PermGroup::restrict_to(std::span<const Point> points) const {
  std::vector<int> index(degree_, -1);
  for (std::size_t i = 0; i < points.size(); ++i) index[points[i]] = static_cast<int>(i);
  std::vector<Permutation> gens;
  for (const auto& g : generators()) {
    std::vector<Point> images(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      int j = index[g[points[i]]];
      if (j < 0) throw Error(ErrorKind::InvalidArgument, "restriction set is not invariant");
      images[i] = static_cast<Point>(j);
    }
    gens.emplace_back(std::move(images));
  }
  return PermGroup(points.size(), std::move(gens), cap_);
}

std::map<std::size_t, std::size_t> PermGroup::order_histogram() const {
  std::map<std::size_t, std::size_t> hist;
  for (const auto& g : elements()) ++hist[g.order()];
  return hist;
}

TopAction TopAction::regular(const PermGroup& b) {
  const auto& els = b.elements();
  TopAction action;
  action.set_size = els.size();
  for (const auto& h : b.generators()) {
    std::vector<Point> images(els.size());
    for (std::size_t i = 0; i < els.size(); ++i) {
      auto it = std::lower_bound(els.begin(), els.end(), h * els[i]);
      images[i] = static_cast<Point>(it - els.begin());
    }
    action.generator_images.emplace_back(std::move(images));
  }
  return action;
}

TopAction TopAction::natural(const PermGroup& b) {
  return TopAction{b.degree(), b.generators()};
}

PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
  const std::size_t da = a.degree(), db = b.degree();
  std::vector<Permutation> gens;
  for (const auto& g : a.generators()) {
    std::vector<Point> images(da + db);
    std::iota(images.begin(), images.end(), Point{0});
    for (std::size_t i = 0; i < da; ++i) images[i] = g[i];
    gens.emplace_back(std::move(images));
  }
  for (const auto& g : b.generators()) {
    std::vector<Point> images(da + db);
    std::iota(images.begin(), images.end(), Point{0});
    for (std::size_t i = 0; i < db; ++i) images[da + i] = static_cast<Point>(da + g[i]);
    gens.emplace_back(std::move(images));
  }
  return PermGroup(da + db, std::move(gens), std::min(a.cap(), b.cap()));
}

namespace {

void verify_top_action(const PermGroup& b, const TopAction& action) {
  const auto& bgens = b.generators();
  if (action.generator_images.size() != bgens.size())
    throw Error(ErrorKind::InvalidAction, "one image per top generator is required");
  for (const auto& img : action.generator_images)
    if (img.degree() != action.set_size)
      throw Error(ErrorKind::InvalidAction, "action image has wrong degree");
  if (bgens.empty()) return;
  // The graph {(h, phi(h))} is a subgroup of B x Sym(X); phi is a
  // well-defined homomorphism iff that subgroup has order |B|, and it is
  // faithful iff the image alone also has order |B|.
  std::vector<Permutation> graph_gens, image_gens;
  for (std::size_t i = 0; i < bgens.size(); ++i) {
    std::vector<Point> images(b.degree() + action.set_size);
    for (std::size_t p = 0; p < b.degree(); ++p) images[p] = bgens[i][p];
    for (std::size_t x = 0; x < action.set_size; ++x)
      images[b.degree() + x] = static_cast<Point>(b.degree() + action.generator_images[i][x]);
    graph_gens.emplace_back(std::move(images));
    image_gens.push_back(action.generator_images[i]);
  }
  const std::size_t order = b.order();
  const std::size_t cap = std::max(b.cap(), order + 1);
  if (close(graph_gens, cap).size() != order)
    throw Error(ErrorKind::InvalidAction, "top action is not a homomorphism");
  if (close(image_gens, cap).size() != order)
    throw Error(ErrorKind::InvalidAction, "top action is not faithful");
}

}  // namespace

PermGroup wreath_product(const PermGroup& a, const PermGroup& b, const TopAction& action) {
  verify_top_action(b, action);
  const std::size_t da = a.degree(), nx = action.set_size, degree = da * nx;
  std::vector<Permutation> gens;
  for (std::size_t x = 0; x < nx; ++x)
    for (const auto& g : a.generators()) {
      std::vector<Point> images(degree);
      std::iota(images.begin(), images.end(), Point{0});
      for (std::size_t p = 0; p < da; ++p) images[x * da + p] = static_cast<Point>(x * da + g[p]);
      gens.emplace_back(std::move(images));
    }
  for (const auto& h : action.generator_images) {
    std::vector<Point> images(degree);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t p = 0; p < da; ++p) images[x * da + p] = static_cast<Point>(h[x] * da + p);
    gens.emplace_back(std::move(images));
  }
  return PermGroup(degree, std::move(gens), std::min(a.cap(), b.cap()));
}

WreathElement wreath_mul(const WreathElement& lhs, const WreathElement& rhs) {
  const std::size_t nx = lhs.top.degree();
  WreathElement out;
  out.top = lhs.top * rhs.top;
  out.base.reserve(nx);
  for (std::size_t x = 0; x < nx; ++x) out.base.push_back(lhs.base[rhs.top[x]] * rhs.base[x]);
  return out;
}

WreathElement wreath_inverse(const WreathElement& w) {
  const std::size_t nx = w.top.degree();
  WreathElement out;
  out.top = w.top.inverse();
  out.base.reserve(nx);
  for (std::size_t x = 0; x < nx; ++x) out.base.push_back(w.base[out.top[x]].inverse());
  return out;
}

WreathElement wreath_identity(std::size_t base_degree, std::size_t set_size) {
  return WreathElement{std::vector<Permutation>(set_size, Permutation::identity(base_degree)),
                       Permutation::identity(set_size)};
}

Permutation wreath_to_permutation(const WreathElement& w) {
  const std::size_t nx = w.top.degree();
  const std::size_t da = nx ? w.base.front().degree() : 0;
  std::vector<Point> images(da * nx);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t p = 0; p < da; ++p)
      images[x * da + p] = static_cast<Point>(w.top[x] * da + w.base[x][p]);
  return Permutation(std::move(images));
}

}  // namespace krsym
