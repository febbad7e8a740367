#include <cmath>
#include <functional>
#include <numbers>

#include "krsym/error.hpp"
#include "krsym/fixtures.hpp"

namespace krsym {

namespace {

constexpr double kPi = std::numbers::pi;

// Angle index reduced to one fundamental domain of a period-P pattern that
// is also mirror symmetric, so equal angles give bit-identical values.
std::uint32_t fold(std::uint32_t j, std::uint32_t period, bool on_grid) {
  const std::uint32_t r = j % period;
  const std::uint32_t mirror = on_grid ? (period - r) % period : period - 1 - r;
  return std::min(r, mirror);
}

// Polar grid on the unit disk: vertex 0 at the center, ring i (1..R) of N
// vertices. `angle(j)` gives the angle used for sector j.
Fixture polar_disk(std::string name, std::uint32_t rings, std::uint32_t sectors,
                   const std::function<double(std::uint32_t)>& angle,
                   const std::function<double(double r, std::uint32_t j)>& f) {
  std::vector<Vec3> pos{{0, 0, 0}};
  std::vector<double> values{f(0.0, 0)};
  auto id = [&](std::uint32_t i, std::uint32_t j) { return 1 + (i - 1) * sectors + j % sectors; };
  for (std::uint32_t i = 1; i <= rings; ++i) {
    const double r = static_cast<double>(i) / rings;
    for (std::uint32_t j = 0; j < sectors; ++j) {
      const double t = angle(j);
      pos.push_back({r * std::cos(t), r * std::sin(t), 0});
      values.push_back(i == rings ? 0.0 : f(r, j));
    }
  }
  std::vector<Triangle> tris;
  for (std::uint32_t j = 0; j < sectors; ++j) tris.push_back({0, id(1, j), id(1, j + 1)});
  for (std::uint32_t i = 1; i < rings; ++i)
    for (std::uint32_t j = 0; j < sectors; ++j) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return {std::move(name), Mesh(std::move(pos), std::move(tris)), ScalarField::from_values(values)};
}

}  // namespace

Fixture monotone_disk(std::uint32_t rings, std::uint32_t sectors) {
  return polar_disk(
      "monotone-disk", rings, sectors, [&](std::uint32_t j) { return 2 * kPi * j / sectors; },
      [](double r, std::uint32_t) { return 1 - r * r; });
}

Fixture bump_disk(std::uint32_t n, std::uint32_t rings) {
  const std::uint32_t sectors = 8 * n, period = sectors / n;
  // Half-step angles keep every sector off the zero set of cos(n theta).
  auto angle = [=](std::uint32_t j) { return 2 * kPi * (j + 0.5) / sectors; };
  return polar_disk("bump-disk-" + std::to_string(n), rings, sectors, angle, [=](double r, std::uint32_t j) {
    const double t = angle(fold(j, period, false));
    const double rn = std::pow(r, n);
    return 1 - rn * rn + 2 * rn * (1 - r) * std::cos(n * t);
  });
}

Fixture nested_disk(std::uint32_t rings) {
  // A(phi) = cos phi + sin^2 phi has a local minimum at 0 flanked by two
  // maxima, and a single minimum at pi: each petal holds two peaks.
  const std::uint32_t sectors = 72, period = sectors / 3;
  auto angle = [=](std::uint32_t j) { return 2 * kPi * j / sectors; };
  return polar_disk("nested-disk", rings, sectors, angle, [=](double r, std::uint32_t j) {
    const double phi = 3 * angle(fold(j, period, true));
    const double a = std::cos(phi) + std::sin(phi) * std::sin(phi);
    const double r3 = r * r * r;
    return 1 - r3 * r3 + 2 * r3 * (1 - r) * a;
  });
}

Fixture stacked_cylinder(std::uint32_t rings, std::uint32_t sectors) {
  struct Band {
    double z0;
    std::uint32_t lobes;
  };
  const Band bands[] = {{0.3, 2}, {0.65, 3}};
  const double amplitude = 0.15, sigma = 0.05;
  std::vector<Vec3> pos;
  std::vector<double> values;
  for (std::uint32_t i = 0; i <= rings; ++i) {
    const double z = static_cast<double>(i) / rings;
    for (std::uint32_t j = 0; j < sectors; ++j) {
      const double t = 2 * kPi * j / sectors;
      pos.push_back({std::cos(t), std::sin(t), z});
      double f = z;
      if (i != 0 && i != rings)
        for (const auto& b : bands) {
          const double tb = 2 * kPi * fold(j, sectors / b.lobes, true) / sectors;
          const double u = (z - b.z0) / sigma;
          f += amplitude * std::exp(-u * u) * (1 + std::cos(b.lobes * tb)) / 2;
        }
      values.push_back(f);
    }
  }
  auto id = [&](std::uint32_t i, std::uint32_t j) { return i * sectors + j % sectors; };
  std::vector<Triangle> tris;
  for (std::uint32_t i = 0; i < rings; ++i)
    for (std::uint32_t j = 0; j < sectors; ++j) {
      tris.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i + 1, j)});
    }
  return {"stacked-cylinder", Mesh(std::move(pos), std::move(tris)), ScalarField::from_values(values)};
}

Fixture torus(std::uint32_t major, std::uint32_t minor) {
  const double big = 2.0, small = 0.75;
  std::vector<Vec3> pos;
  std::vector<double> values;
  for (std::uint32_t i = 0; i < major; ++i)
    for (std::uint32_t j = 0; j < minor; ++j) {
      const double u = 2 * kPi * i / major, v = 2 * kPi * j / minor;
      const double ring = big + small * std::cos(v);
      pos.push_back({ring * std::cos(u), ring * std::sin(u), small * std::sin(v)});
      values.push_back(pos.back().x);
    }
  auto id = [&](std::uint32_t i, std::uint32_t j) { return (i % major) * minor + j % minor; };
  std::vector<Triangle> tris;
  for (std::uint32_t i = 0; i < major; ++i)
    for (std::uint32_t j = 0; j < minor; ++j) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return {"torus", Mesh(std::move(pos), std::move(tris)), ScalarField::from_values(values)};
}

Fixture sphere(std::uint32_t stacks, std::uint32_t slices) {
  std::vector<Vec3> pos{{0, 0, -1}};
  for (std::uint32_t i = 1; i < stacks; ++i) {
    const double phi = kPi * i / stacks - kPi / 2;
    for (std::uint32_t j = 0; j < slices; ++j) {
      const double t = 2 * kPi * j / slices;
      pos.push_back({std::cos(phi) * std::cos(t), std::cos(phi) * std::sin(t), std::sin(phi)});
    }
  }
  pos.push_back({0, 0, 1});
  const auto top = static_cast<std::uint32_t>(pos.size() - 1);
  auto id = [&](std::uint32_t i, std::uint32_t j) { return 1 + (i - 1) * slices + j % slices; };
  std::vector<Triangle> tris;
  for (std::uint32_t j = 0; j < slices; ++j) {
    tris.push_back({0, id(1, j + 1), id(1, j)});
    tris.push_back({top, id(stacks - 1, j), id(stacks - 1, j + 1)});
  }
  for (std::uint32_t i = 1; i + 1 < stacks; ++i)
    for (std::uint32_t j = 0; j < slices; ++j) {
      tris.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i + 1, j)});
    }
  std::vector<double> values;
  for (const auto& p : pos) values.push_back(p.z);
  return {"sphere", Mesh(std::move(pos), std::move(tris)), ScalarField::from_values(values)};
}

Fixture fan_disk(std::uint32_t sides) {
  std::vector<Vec3> pos{{0, 0, 0}};
  std::vector<double> values{1.0};
  std::vector<Triangle> tris;
  for (std::uint32_t j = 0; j < sides; ++j) {
    const double t = 2 * kPi * j / sides;
    pos.push_back({std::cos(t), std::sin(t), 0});
    values.push_back(0.0);
    tris.push_back({0, 1 + j, 1 + (j + 1) % sides});
  }
  return {"fan-disk", Mesh(std::move(pos), std::move(tris)), ScalarField::from_values(values)};
}

Fixture tetrahedron() {
  std::vector<Vec3> pos{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  std::vector<Triangle> tris{{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return {"tetrahedron", Mesh(std::move(pos), std::move(tris)), ScalarField::from_values({0, 1, 2, 3})};
}

std::vector<std::string> fixture_names() {
  return {"monotone-disk", "bump-disk-2", "bump-disk-3",     "bump-disk-4", "bump-disk-5", "nested-disk",
          "stacked-cylinder", "torus",   "sphere",          "fan-disk",    "tetrahedron"};
}

Fixture make_fixture(std::string_view name) {
  if (name == "monotone-disk") return monotone_disk();
  if (name == "nested-disk") return nested_disk();
  if (name == "stacked-cylinder") return stacked_cylinder();
  if (name == "torus") return torus();
  if (name == "sphere") return sphere();
  if (name == "fan-disk") return fan_disk();
  if (name == "tetrahedron") return tetrahedron();
  for (std::uint32_t n = 2; n <= 5; ++n)
    if (name == "bump-disk-" + std::to_string(n)) return bump_disk(n);
  throw Error(ErrorKind::InvalidArgument, "unknown fixture " + std::string(name));
}

}  // namespace krsym
