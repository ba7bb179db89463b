#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flipforge/lift3d.hpp"
#include "flipforge/triangulation.hpp"

namespace flipforge {

struct Dataset;

struct Fact {
  std::string name;
  std::function<bool(const Dataset&)> check;
};

struct Dataset {
  std::string name;
  LiftedPointSet points;
  // Distinguished triangulations by role (regular, farthest, whirl, source, target, ...).
  std::map<std::string, Triangulation> triangulations;
  std::optional<Tetrahedralization> tetrahedralization;
  std::vector<Fact> facts;

  const Triangulation& role(const std::string& r) const { return triangulations.at(r); }
};

// Outer triangle 0,1,2 at height 2 around a rotated, shrunken inner triangle
// 3,4,5 at height 1, chosen so that exactly one triangulation is non-regular.
// Roles: regular, farthest, whirl, source (= farthest), target (= regular).
Dataset gen_prism6();

// Twisted prism (bottom 0,1,2 at z = 0, top 3,4,5 with top i over bottom i)
// plus apex 6 below the bottom face, with the 10-tet tetrahedralization.
// Roles: lower, upper (the boundary sections along z).
Dataset gen_schonhardt7();

// Points (k, k^2) for k = 0..n-1 with heights x^2 + y^2.
Dataset gen_convex_ngon(Label n);

enum class HeightMode { Random, Convex, Concave };
std::string_view to_string(HeightMode m);

// Coordinates p/q with q in 1..4 and |p/q| <= 10 from a seeded 64-bit
// Mersenne Twister; Convex/Concave heights are +-(x^2 + y^2) plus a random
// affine term.  Resamples until the set is in general position.
Dataset gen_random(Label n, std::uint64_t seed, HeightMode mode = HeightMode::Random);

// By name: prism6, schonhardt7, ngon, random, random-convex, random-concave.
Dataset generate(const std::string& name, Label n = 6, std::uint64_t seed = 1);

}  // namespace flipforge
