#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "krsym/error.hpp"
#include "krsym/rexpr.hpp"

namespace krsym {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "group order overflows 64 bits");
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = checked_mul(r, base);
    if (base <= 1) break;
  }
  return r;
}

std::size_t atom_domain(Family f, std::uint32_t n) {
  if (f == Family::Dihedral) {
    if (n == 1) return 2;
    if (n == 2) return 4;
  }
  return n;
}

bool is_trivial_atom(const GroupExpr& e) {
  return e.is_atom() && e.n() == 1 && e.family() != Family::Dihedral;
}

}  // namespace

GroupExpr GroupExpr::triv() { return GroupExpr{}; }

GroupExpr GroupExpr::atom(Family family, std::uint32_t n) {
  if (n == 0) throw Error(ErrorKind::DegreeError, "atom degree must be at least 1");
  GroupExpr e;
  e.kind_ = Kind::Atom;
  e.family_ = family;
  e.n_ = n;
  return e;
}

GroupExpr GroupExpr::prod(std::vector<GroupExpr> factors) {
  if (factors.size() < 2) throw Error(ErrorKind::InvalidArgument, "a product needs at least two factors");
  GroupExpr e;
  e.kind_ = Kind::Prod;
  e.children_ = std::move(factors);
  return e;
}

GroupExpr GroupExpr::wr(GroupExpr base, GroupExpr top) {
  GroupExpr e;
  e.kind_ = Kind::Wr;
  if (top.is_triv())
    e.top_degree_ = 1;
  else if (top.is_atom())
    e.top_degree_ = atom_domain(top.family(), top.n());
  else
    e.top_degree_ = static_cast<std::size_t>(order(top));
  e.children_.push_back(std::move(base));
  e.children_.push_back(std::move(top));
  return e;
}

bool operator==(const GroupExpr& a, const GroupExpr& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case GroupExpr::Kind::Triv: return true;
    case GroupExpr::Kind::Atom: return a.family_ == b.family_ && a.n_ == b.n_;
    default: return a.top_degree_ == b.top_degree_ && a.children_ == b.children_;
  }
}

std::uint64_t order(const GroupExpr& e) {
  switch (e.kind()) {
    case GroupExpr::Kind::Triv: return 1;
    case GroupExpr::Kind::Atom:
      switch (e.family()) {
        case Family::Cyclic: return e.n();
        case Family::Dihedral: return checked_mul(2, e.n());
        case Family::Symmetric: {
          std::uint64_t f = 1;
          for (std::uint64_t i = 2; i <= e.n(); ++i) f = checked_mul(f, i);
          return f;
        }
      }
      return 1;
    case GroupExpr::Kind::Prod: {
      std::uint64_t r = 1;
      for (const auto& c : e.children()) r = checked_mul(r, order(c));
      return r;
    }
    case GroupExpr::Kind::Wr:
      return checked_mul(checked_pow(order(e.base()), e.top_degree()), order(e.top()));
  }
  return 1;
}

std::size_t domain_size(const GroupExpr& e) {
  switch (e.kind()) {
    case GroupExpr::Kind::Triv: return 1;
    case GroupExpr::Kind::Atom: return atom_domain(e.family(), e.n());
    case GroupExpr::Kind::Prod: {
      std::size_t s = 0;
      for (const auto& c : e.children()) s += domain_size(c);
      return s;
    }
    case GroupExpr::Kind::Wr: return domain_size(e.base()) * e.top_degree();
  }
  return 1;
}

namespace {

std::uint64_t saturating_order(const GroupExpr& e) {
  try {
    return order(e);
  } catch (const Error&) {
    return std::numeric_limits<std::uint64_t>::max();
  }
}

struct Factor {
  GroupExpr expr;
  // (old point, point within this factor's new domain)
  std::vector<std::pair<Point, Point>> points;
};

TrackedNormalForm normalize(const GroupExpr& e, bool track);

TrackedNormalForm identity_tracking(GroupExpr e, bool track) {
  TrackedNormalForm r{std::move(e), {}};
  if (track) {
    const std::size_t n = domain_size(r.expr);
    r.old_to_new.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.old_to_new[i] = static_cast<Point>(i);
  }
  return r;
}

TrackedNormalForm normalize_wr(const GroupExpr& e, bool track) {
  const bool atom_top = e.top().is_atom() || e.top().is_triv();
  if (track && !atom_top)
    throw std::logic_error("tracked normal form needs atom wreath tops");
  TrackedNormalForm base = normalize(e.base(), track);
  TrackedNormalForm top = normalize(e.top(), false);
  const std::size_t old_base = domain_size(e.base());
  const std::size_t degree = e.top_degree();

  TrackedNormalForm out;
  if (top.expr.is_triv()) {
    out.expr = std::move(base.expr);
    if (track) out.old_to_new = base.old_to_new;  // degree is 1
    return out;
  }
  if (base.expr.is_triv()) {
    out.expr = std::move(top.expr);
    if (track) {
      out.old_to_new.resize(old_base * degree);
      for (std::size_t x = 0; x < degree; ++x)
        for (std::size_t a = 0; a < old_base; ++a)
          if (base.old_to_new[a]) out.old_to_new[x * old_base + a] = static_cast<Point>(x);
    }
    return out;
  }
  const std::size_t new_base = domain_size(base.expr);
  out.expr = GroupExpr::wr(std::move(base.expr), std::move(top.expr));
  if (track) {
    out.old_to_new.resize(old_base * degree);
    for (std::size_t x = 0; x < degree; ++x)
      for (std::size_t a = 0; a < old_base; ++a)
        if (auto m = base.old_to_new[a]) out.old_to_new[x * old_base + a] = static_cast<Point>(x * new_base + *m);
  }
  return out;
}

TrackedNormalForm normalize_prod(const GroupExpr& e, bool track) {
  std::vector<Factor> factors;
  std::size_t old_offset = 0;
  for (const auto& child : e.children()) {
    TrackedNormalForm c = normalize(child, track);
    const std::size_t old_size = domain_size(child);
    // Split the child's new domain into its own factors when it flattened
    // into a product.
    std::vector<GroupExpr> parts;
    if (c.expr.is_prod())
      parts = c.expr.children();
    else
      parts.push_back(c.expr);
    std::vector<std::size_t> starts;
    std::size_t acc = 0;
    for (const auto& p : parts) {
      starts.push_back(acc);
      acc += domain_size(p);
    }
    std::vector<Factor> local(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) local[i].expr = parts[i];
    if (track) {
      for (std::size_t a = 0; a < old_size; ++a) {
        if (!c.old_to_new[a]) continue;
        const Point m = *c.old_to_new[a];
        std::size_t idx = static_cast<std::size_t>(
            std::upper_bound(starts.begin(), starts.end(), static_cast<std::size_t>(m)) - starts.begin() - 1);
        local[idx].points.emplace_back(static_cast<Point>(old_offset + a), static_cast<Point>(m - starts[idx]));
      }
    }
    for (auto& f : local) factors.push_back(std::move(f));
    old_offset += old_size;
  }

  std::vector<Factor> kept;
  for (auto& f : factors)
    if (!f.expr.is_triv()) kept.push_back(std::move(f));
  if (kept.empty()) kept.push_back(std::move(factors.front()));

  std::vector<std::pair<std::uint64_t, std::string>> keys;
  std::vector<std::size_t> perm(kept.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (const auto& f : kept) keys.emplace_back(saturating_order(f.expr), pretty_print(f.expr));
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  TrackedNormalForm out;
  if (track) out.old_to_new.assign(domain_size(e), std::nullopt);
  std::vector<GroupExpr> sorted;
  std::size_t new_offset = 0;
  for (std::size_t idx : perm) {
    for (auto [old_point, local] : kept[idx].points) out.old_to_new[old_point] = static_cast<Point>(new_offset + local);
    new_offset += domain_size(kept[idx].expr);
    sorted.push_back(std::move(kept[idx].expr));
  }
  out.expr = sorted.size() == 1 ? std::move(sorted.front()) : GroupExpr::prod(std::move(sorted));
  return out;
}

TrackedNormalForm normalize(const GroupExpr& e, bool track) {
  switch (e.kind()) {
    case GroupExpr::Kind::Triv: return identity_tracking(GroupExpr::triv(), track);
    case GroupExpr::Kind::Atom:
      if (is_trivial_atom(e)) return identity_tracking(GroupExpr::triv(), track);
      return identity_tracking(GroupExpr::atom(e.family(), e.n()), track);
    case GroupExpr::Kind::Prod: return normalize_prod(e, track);
    case GroupExpr::Kind::Wr: return normalize_wr(e, track);
  }
  return identity_tracking(GroupExpr::triv(), track);
}

}  // namespace

GroupExpr normal_form(const GroupExpr& e) { return normalize(e, false).expr; }

TrackedNormalForm normal_form_tracked(const GroupExpr& e) { return normalize(e, true); }

std::vector<Point> carry_labels(const TrackedNormalForm& nf, std::span<const Point> old_labels) {
  std::vector<Point> out(domain_size(nf.expr));
  for (std::size_t old = 0; old < nf.old_to_new.size() && old < old_labels.size(); ++old)
    if (nf.old_to_new[old]) out[*nf.old_to_new[old]] = old_labels[old];
  return out;
}

PermGroup atom_group(Family family, std::uint32_t n, std::size_t cap) {
  if (n == 0) throw Error(ErrorKind::DegreeError, "atom degree must be at least 1");
  switch (family) {
    case Family::Cyclic: {
      if (n == 1) return PermGroup::trivial(1);
      std::vector<Point> images(n);
      for (std::uint32_t i = 0; i < n; ++i) images[i] = (i + 1) % n;
      return PermGroup(n, {Permutation(std::move(images))}, cap);
    }
    case Family::Dihedral: {
      if (n == 1) return PermGroup(2, {Permutation({1, 0})}, cap);
      if (n == 2) return PermGroup(4, {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})}, cap);
      std::vector<Point> rot(n), refl(n);
      for (std::uint32_t i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        refl[i] = (n - i) % n;
      }
      return PermGroup(n, {Permutation(std::move(rot)), Permutation(std::move(refl))}, cap);
    }
    case Family::Symmetric: {
      if (n == 1) return PermGroup::trivial(1);
      if (n == 2) return PermGroup(2, {Permutation({1, 0})}, cap);
      std::vector<Point> cycle(n);
      for (std::uint32_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
      return PermGroup(n, {Permutation::from_cycles(n, {{0, 1}}), Permutation(std::move(cycle))}, cap);
    }
  }
  return PermGroup::trivial(1);
}

PermGroup evaluate(const GroupExpr& e, std::size_t cap) {
  if (order(e) > cap)
    throw Error(ErrorKind::CapExceeded, "|" + pretty_print(e) + "| exceeds element cap " + std::to_string(cap));
  switch (e.kind()) {
    case GroupExpr::Kind::Triv: return PermGroup::trivial(1);
    case GroupExpr::Kind::Atom: return atom_group(e.family(), e.n(), cap);
    case GroupExpr::Kind::Prod: {
      PermGroup acc = evaluate(e.children().front(), cap);
      for (std::size_t i = 1; i < e.children().size(); ++i) acc = direct_product(acc, evaluate(e.children()[i], cap));
      return acc;
    }
    case GroupExpr::Kind::Wr: {
      PermGroup base = evaluate(e.base(), cap);
      PermGroup top = evaluate(e.top(), cap);
      const bool natural = e.top().is_atom() || e.top().is_triv();
      return wreath_product(base, top, natural ? TopAction::natural(top) : TopAction::regular(top));
    }
  }
  return PermGroup::trivial(1);
}

namespace {

bool family_class(const GroupExpr& e, Family family) {
  switch (e.kind()) {
    case GroupExpr::Kind::Triv: return true;
    case GroupExpr::Kind::Atom: return e.family() == family || is_trivial_atom(e);
    case GroupExpr::Kind::Prod:
      return std::all_of(e.children().begin(), e.children().end(),
                         [family](const GroupExpr& c) { return family_class(c, family); });
    case GroupExpr::Kind::Wr:
      return (e.top().is_atom() || e.top().is_triv()) && family_class(e.top(), family) &&
             family_class(e.base(), family);
  }
  return false;
}

// Orders of the cyclic components of an abelian expression.
void abelian_components(const GroupExpr& e, std::vector<std::uint64_t>& out) {
  switch (e.kind()) {
    case GroupExpr::Kind::Triv: return;
    case GroupExpr::Kind::Atom:
      if (e.family() == Family::Cyclic) {
        out.push_back(e.n());
        return;
      }
      if (e.family() == Family::Symmetric && e.n() <= 2) {
        out.push_back(e.n());
        return;
      }
      if (e.family() == Family::Dihedral && e.n() <= 2) {
        out.insert(out.end(), e.n(), 2);
        return;
      }
      throw Error(ErrorKind::NotAbelian, pretty_print(e) + " is not abelian");
    case GroupExpr::Kind::Prod:
      for (const auto& c : e.children()) abelian_components(c, out);
      return;
    case GroupExpr::Kind::Wr:
      throw Error(ErrorKind::NotAbelian, pretty_print(e) + " is not abelian");
  }
}

std::vector<std::uint64_t> prime_factors(std::uint64_t q) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    primes.push_back(p);
    while (q % p == 0) q /= p;
  }
  if (q > 1) primes.push_back(q);
  return primes;
}

std::string ordinal(std::uint64_t n) {
  const std::uint64_t mod100 = n % 100;
  std::string suffix = "th";
  if (mod100 < 11 || mod100 > 13) {
    if (n % 10 == 1) suffix = "st";
    else if (n % 10 == 2) suffix = "nd";
    else if (n % 10 == 3) suffix = "rd";
  }
  return std::to_string(n) + suffix;
}

std::string compact(const GroupExpr& e) {
  std::string s = pretty_print(e);
  std::erase(s, ' ');
  return s;
}

}  // namespace

bool is_cyclic_class(const GroupExpr& e) { return family_class(e, Family::Cyclic); }
bool is_symmetric_class(const GroupExpr& e) { return family_class(e, Family::Symmetric); }

bool neumann_direct_decomposable(const GroupExpr& base, std::uint64_t n) {
  std::vector<std::uint64_t> components;
  abelian_components(normal_form(base), components);
  for (std::uint64_t q : components)
    for (std::uint64_t p : prime_factors(q))
      if (n % p != 0) return true;
  return false;
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::InR: return "InR";
    case Membership::NotInR: return "NotInR";
    case Membership::Unknown: return "Unknown";
  }
  return "Unknown";
}

MembershipReport analyze_membership(const GroupExpr& w) {
  MembershipReport report;
  const GroupExpr nf = normal_form(w);
  report.trace.push_back("normal form: " + pretty_print(nf));

  if (is_cyclic_class(nf)) {
    report.verdict = Membership::InR;
    report.trace.push_back("every atom is cyclic and every wreath top is an atom");
    report.summary = "InR: " + pretty_print(nf) + " is built from cyclic groups";
    return report;
  }
  if (!nf.is_wr()) {
    report.trace.push_back("not a wreath product with abelian base and top; no criterion applies");
    report.summary = "Unknown: no criterion applies";
    return report;
  }

  std::vector<std::uint64_t> top_components;
  try {
    abelian_components(nf.top(), top_components);
  } catch (const Error&) {
    report.trace.push_back("top " + compact(nf.top()) + " is not abelian; no criterion applies");
    report.summary = "Unknown: top is not abelian";
    return report;
  }
  const std::uint64_t n = order(nf.top());

  bool decomposable = false;
  try {
    decomposable = neumann_direct_decomposable(nf.base(), n);
  } catch (const Error&) {
    report.trace.push_back("base " + compact(nf.base()) + " is not abelian; no criterion applies");
    report.summary = "Unknown: base is not abelian";
    return report;
  }

  bool top_cyclic = true;
  for (std::size_t i = 0; i < top_components.size(); ++i)
    for (std::size_t j = i + 1; j < top_components.size(); ++j)
      if (std::gcd(top_components[i], top_components[j]) != 1) top_cyclic = false;

  if (top_cyclic) {
    report.verdict = Membership::InR;
    report.trace.push_back("top " + compact(nf.top()) + " is cyclic of order " + std::to_string(n) +
                           ", so W is a wreath product by Z" + std::to_string(n));
    report.summary = "InR: top " + compact(nf.top()) + " is cyclic";
    return report;
  }

  report.top_noncyclic = true;
  report.trace.push_back("top " + compact(nf.top()) + " is not cyclic, so W is not a wreath product by a cyclic group");
  if (decomposable) {
    report.trace.push_back("base has a direct factor with unique " + ordinal(n) +
                           " roots; W may split as a direct product");
    report.summary = "Unknown: W may be decomposable";
    return report;
  }
  report.indecomposable = true;
  report.verdict = Membership::NotInR;
  report.trace.push_back("every prime dividing |base| divides " + std::to_string(n) +
                         ": no non-trivial factor with unique " + ordinal(n) + " roots, W is directly indecomposable");
  report.summary = "NotInR: indecomposable (no unique " + ordinal(n) + " roots) and top " + compact(nf.top()) +
                   " not cyclic";
  return report;
}

}  // namespace krsym
