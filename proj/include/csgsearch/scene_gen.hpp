// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csgsearch/csg_expr.hpp"
#include "csgsearch/scene.hpp"

namespace csgsearch {

/// A scene together with the expression that defines its target solid.
struct GeneratedScene {
  std::string name;
  Scene scene;
  CsgExpr truth;
};

/// Six 2D primitives laid out so that one disk lies wholly inside the target
/// and one bar wholly outside it, over 15 non-empty products.
GeneratedScene fig2_scene();

/// `count` pairwise disjoint spheres on a line; the target is their union.
GeneratedScene disjoint_scene(std::size_t count);

/// Three spheres in a Venn layout (all 7 cells non-empty); target is their union.
GeneratedScene overlap_scene();

/// `count` concentric spheres of radius count, count-1, ..., 1 with alternating
/// union / difference, so decomposition peels exactly one dominant per pass.
GeneratedScene chain_scene(std::size_t count);

/// `count` primitives drawn from `kinds` (empty: spheres, boxes and, in 3D,
/// cylinders) around the middle of [0,10]^d, with a random expression using
/// every primitive once. The target is non-empty on a 32-per-axis grid.
/// Deterministic per seed.
GeneratedScene random_scene(std::size_t count, int dimension, std::uint64_t seed,
                            const std::vector<ShapeKind>& kinds = {});

/// Names accepted by make_scene: fig2, disjoint, overlap3, chain, random.
const std::vector<std::string>& scene_kinds();
/// `count` is ignored by the fixed layouts (fig2, overlap3).
GeneratedScene make_scene(const std::string& kind, std::size_t count, int dimension,
                          std::uint64_t seed, const std::vector<ShapeKind>& shapes = {});

}  // namespace csgsearch
