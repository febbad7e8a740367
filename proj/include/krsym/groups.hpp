#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace krsym {

using Point = std::uint32_t;

/// Bijection of {0, ..., degree-1}. Composition follows function notation:
/// (a * b)(x) == a(b(x)), i.e. b is applied first.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);
  /// Builds a permutation from disjoint cycles, e.g. {{0, 1, 2}, {3, 4}}.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](std::size_t i) const { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  Permutation pow(long long exponent) const;

  bool is_identity() const noexcept;
  std::size_t order() const;
  /// Points moved by the permutation, ascending.
  std::vector<Point> support() const;

  std::string to_cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// Closure bound used when none is given explicitly. Honors the
/// KRSYM_ELEMENT_CAP environment variable, otherwise 100000.
std::size_t default_element_cap();

/// Subgroup generated by `generators`, sorted lexicographically by image
/// array. Throws CapExceeded once the closure would pass `cap`.
std::vector<Permutation> close(std::span<const Permutation> generators,
                               std::size_t cap = default_element_cap());

/// Concrete finite permutation group. Elements are materialized on first
/// use and cached; copies share the cache, which is safe to read from
/// several threads.
class PermGroup {
 public:
  PermGroup();
  PermGroup(std::size_t degree, std::vector<Permutation> generators,
            std::size_t cap = default_element_cap());

  static PermGroup trivial(std::size_t degree);
  /// Wraps an already closed, sorted element list (not re-verified beyond
  /// degree checks). Generators are derived on demand.
  static PermGroup from_elements(std::size_t degree,
                                 std::vector<Permutation> elements);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t cap() const noexcept { return cap_; }
  const std::vector<Permutation>& generators() const;
  const std::vector<Permutation>& elements() const;
  std::size_t order() const { return elements().size(); }

  bool contains(const Permutation& p) const;
  bool is_trivial() const { return order() == 1; }
  bool is_abelian() const;

  /// Orbits on {0, ..., degree-1}, each ascending, ordered by least point.
  std::vector<std::vector<Point>> orbits() const;
  /// Group of restrictions to `points` (must be a union of orbits);
  /// point i of the result is points[i].
  PermGroup restrict_to(std::span<const Point> points) const;

  /// Elements satisfying a predicate, as a group (caller guarantees the
  /// selection is a subgroup).
  template <typename Pred>
  PermGroup subgroup_where(Pred pred) const {
    std::vector<Permutation> selected;
    for (const auto& g : elements())
      if (pred(g)) selected.push_back(g);
    return from_elements(degree_, std::move(selected));
  }

  /// Element-order histogram, a cheap isomorphism invariant.
  std::map<std::size_t, std::size_t> order_histogram() const;

  friend bool operator==(const PermGroup& a, const PermGroup& b) {
    return a.degree() == b.degree() && a.elements() == b.elements();
  }

 private:
  struct Cache {
    std::once_flag elements_once;
    std::once_flag generators_once;
    std::vector<Permutation> elements;
    std::vector<Permutation> generators;
  };

  std::size_t degree_ = 0;
  std::size_t cap_ = 0;
  std::vector<Permutation> seed_generators_;
  bool from_elements_ = false;
  std::shared_ptr<Cache> cache_;
};

/// Action of a group B on a finite set X, given by the images of B's
/// generators (parallel to B.generators()).
struct TopAction {
  std::size_t set_size = 0;
  std::vector<Permutation> generator_images;

  /// B acting on itself by left multiplication; X is indexed by
  /// B.elements().
  static TopAction regular(const PermGroup& b);
  /// B acting on its own domain.
  static TopAction natural(const PermGroup& b);
};

PermGroup direct_product(const PermGroup& a, const PermGroup& b);

/// Imprimitive realization of A wr_X B on dom(A) x X; point (p, x) has
/// index x * A.degree() + p. Throws InvalidAction unless `action` is a
/// faithful homomorphism B -> Sym(X).
PermGroup wreath_product(const PermGroup& a, const PermGroup& b,
                         const TopAction& action);

/// Element (alpha, h) of A wr_X B: alpha maps X to A, h permutes X.
struct WreathElement {
  std::vector<Permutation> base;
  Permutation top;

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

/// (a1, h1)(a2, h2) = ((a1 o h2) . a2, h1 h2).
WreathElement wreath_mul(const WreathElement& lhs, const WreathElement& rhs);
/// (alpha, h)^-1 = (alpha-bar o h^-1, h^-1).
WreathElement wreath_inverse(const WreathElement& w);
WreathElement wreath_identity(std::size_t base_degree, std::size_t set_size);
/// Faithful image on dom(A) x X: (p, x) -> (alpha(x)(p), h(x)).
Permutation wreath_to_permutation(const WreathElement& w);

PermGroup derived_subgroup(const PermGroup& g);
bool is_solvable(const PermGroup& g);
/// Lengths of the derived series G > G' > G'' > ... until it stabilizes.
std::vector<std::size_t> derived_series_orders(const PermGroup& g);

struct GroupClass {
  enum class Kind { Trivial, Cyclic, Dihedral, Symmetric, Other };
  Kind kind = Kind::Other;
  std::size_t n = 0;

  std::string to_string() const;
  friend bool operator==(const GroupClass&, const GroupClass&) = default;
};

/// Classification of small groups. Cyclic and symmetric verdicts are
/// exact; dihedral is certified by an explicit rotation/reflection pair.
/// Other means none of the checks matched (not a proof of
/// non-isomorphism).
GroupClass recognize(const PermGroup& g);

/// True when every non-identity element moves every point that is not
/// fixed by the whole group.
bool is_semi_free(const PermGroup& g);

/// Does `acting` leave the points `labels` invariant, act faithfully on
/// them, and coincide there with `model` once point i of `model` is renamed
/// labels[i]?
bool matches_on_labels(const PermGroup& acting, std::span<const Point> labels, const PermGroup& model);

}  // namespace krsym
