#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "krsym/reeb.hpp"

namespace krsym {

/// A procedurally built mesh with a scalar field; values are rounded to six
/// decimals and symmetric copies get bit-identical values.
struct Fixture {
  std::string name;
  Mesh mesh;
  ScalarField field;
};

/// Disk with 1 - r^2: boundary minimum, one interior maximum.
Fixture monotone_disk(std::uint32_t rings = 6, std::uint32_t sectors = 12);

/// Disk with n bumps rotated about a central (multi)saddle:
/// 1 - r^2n + 2 r^n (1 - r) cos(n theta). Symmetry group Z_n.
Fixture bump_disk(std::uint32_t n, std::uint32_t rings = 16);

/// Three petals, each split into two maxima by a saddle: Z2 wr Z3.
Fixture nested_disk(std::uint32_t rings = 20);

/// Height on a cylinder with a two-lobe band and a three-lobe band stacked
/// above it: Z2 x Z3.
Fixture stacked_cylinder(std::uint32_t rings = 100, std::uint32_t sectors = 48);

/// Height along an axis of a torus lying on its side (cycle rank 1).
Fixture torus(std::uint32_t major = 24, std::uint32_t minor = 12);

/// Height on a UV sphere.
Fixture sphere(std::uint32_t stacks = 8, std::uint32_t slices = 12);

/// One interior vertex fanned to a boundary loop of `sides` vertices.
Fixture fan_disk(std::uint32_t sides = 6);

/// Boundary of a tetrahedron with values 0..3.
Fixture tetrahedron();

/// Names accepted by make_fixture, in a stable order.
std::vector<std::string> fixture_names();
/// Fixture by name with default parameters. Throws InvalidArgument.
Fixture make_fixture(std::string_view name);

}  // namespace krsym
