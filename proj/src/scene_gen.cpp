// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "csgsearch/scene_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "csgsearch/membership.hpp"

namespace csgsearch {

namespace {

Primitive disk(std::string id, double x, double y, double r) {
  return {std::move(id), Sphere{{x, y, 0.0}, r}};
}

Primitive rect(std::string id, double x0, double y0, double x1, double y1) {
  return {std::move(id), Box{{x0, y0, -1.0}, {x1, y1, 1.0}}};
}

CsgExpr union_of(const PrimitiveSet& ps) {
  CsgExpr e = CsgExpr::leaf(ps[0].id);
  for (std::size_t i = 1; i < ps.size(); ++i) e = make_union(e, CsgExpr::leaf(ps[i].id));
  return e;
}

std::string letter_id(std::size_t i) {
  return i < 26 ? std::string(1, static_cast<char>('A' + i)) : "P" + std::to_string(i);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

CsgExpr random_tree(std::vector<CsgExpr> leaves, std::mt19937_64& rng) {
  if (leaves.size() == 1) return leaves[0];
  const std::size_t split =
      std::uniform_int_distribution<std::size_t>(1, leaves.size() - 1)(rng);
  std::vector<CsgExpr> right(leaves.begin() + static_cast<std::ptrdiff_t>(split), leaves.end());
  leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(split), leaves.end());
  const CsgExpr l = random_tree(std::move(leaves), rng);
  const CsgExpr r = random_tree(std::move(right), rng);
  static constexpr CsgOp kOps[] = {CsgOp::Union, CsgOp::Intersection, CsgOp::Difference};
  return CsgExpr::binary(kOps[std::uniform_int_distribution<int>(0, 2)(rng)], l, r);
}

}  // namespace

GeneratedScene fig2_scene() {
  Scene s;
  s.dimension = 2;
  s.bounds = {{-2.0, -2.0, 0.0}, {14.0, 9.0, 0.0}};
  s.primitives = PrimitiveSet({
      disk("A", 2.0, 3.0, 1.2),
      rect("B", 0.0, 0.0, 8.0, 6.0),
      rect("C", 6.0, 1.0, 12.0, 5.0),
      disk("D", 8.5, 5.0, 1.6),
      disk("E", 10.8, 5.0, 1.7),
      rect("F", 4.8, -1.0, 6.6, 7.0),
  });
  return {"fig2", std::move(s), parse_expr("(diff (union (union (diff B D) (inter C E)) A) F)")};
}

GeneratedScene disjoint_scene(std::size_t count) {
  if (count == 0) throw std::invalid_argument("disjoint scene needs at least one primitive");
  Scene s;
  s.dimension = 3;
  const double pitch = 3.0;
  s.bounds = {{-2.0, -2.0, -2.0}, {pitch * static_cast<double>(count - 1) + 2.0, 2.0, 2.0}};
  std::vector<Primitive> prims;
  for (std::size_t i = 0; i < count; ++i)
    prims.push_back({letter_id(i), Sphere{{pitch * static_cast<double>(i), 0.0, 0.0}, 1.0}});
  s.primitives = PrimitiveSet(std::move(prims));
  CsgExpr truth = union_of(s.primitives);
  return {"disjoint" + std::to_string(count), std::move(s), std::move(truth)};
}

GeneratedScene overlap_scene() {
  Scene s;
  s.dimension = 3;
  s.bounds = {{-4.0, -4.0, -3.0}, {4.0, 4.0, 3.0}};
  const double r = 1.0;  // distance of each center from the origin
  std::vector<Primitive> prims;
  for (int i = 0; i < 3; ++i) {
    const double a = 2.0 * M_PI * i / 3.0 + M_PI / 2.0;
    prims.push_back({letter_id(static_cast<std::size_t>(i)),
                     Sphere{{r * std::cos(a), r * std::sin(a), 0.0}, 1.6}});
  }
  s.primitives = PrimitiveSet(std::move(prims));
  CsgExpr truth = union_of(s.primitives);
  return {"overlap3", std::move(s), std::move(truth)};
}

GeneratedScene chain_scene(std::size_t count) {
  if (count == 0) throw std::invalid_argument("chain scene needs at least one primitive");
  Scene s;
  s.dimension = 3;
  const double outer = static_cast<double>(count);
  s.bounds = {{-outer - 1.0, -outer - 1.0, -outer - 1.0}, {outer + 1.0, outer + 1.0, outer + 1.0}};
  std::vector<Primitive> prims;
  for (std::size_t i = 0; i < count; ++i)
    prims.push_back({letter_id(i), Sphere{{0.0, 0.0, 0.0}, static_cast<double>(count - i)}});
  s.primitives = PrimitiveSet(std::move(prims));
  CsgExpr truth = CsgExpr::leaf(s.primitives[0].id);
  for (std::size_t i = 1; i < count; ++i)
    truth = CsgExpr::binary(i % 2 == 1 ? CsgOp::Difference : CsgOp::Union, truth,
                            CsgExpr::leaf(s.primitives[i].id));
  return {"chain" + std::to_string(count), std::move(s), std::move(truth)};
}

GeneratedScene random_scene(std::size_t count, int dimension, std::uint64_t seed,
                            const std::vector<ShapeKind>& kinds) {
  if (count == 0) throw std::invalid_argument("random scene needs at least one primitive");
  if (dimension != 2 && dimension != 3) throw std::invalid_argument("dimension must be 2 or 3");
  std::vector<ShapeKind> pool = kinds;
  if (pool.empty()) {
    pool = {ShapeKind::Sphere, ShapeKind::Box};
    if (dimension == 3) pool.push_back(ShapeKind::Cylinder);
  }
  for (ShapeKind k : pool) {
    if (k == ShapeKind::Halfspace) throw std::invalid_argument("random scenes use bounded shapes only");
    if (k == ShapeKind::Cylinder && dimension == 2)
      throw std::invalid_argument("cylinders need a 3D scene");
  }
  std::mt19937_64 rng(seed);
  Scene s;
  s.dimension = dimension;
  const double zmax = dimension == 3 ? 10.0 : 0.0;
  s.bounds = {{0.0, 0.0, 0.0}, {10.0, 10.0, zmax}};

  auto center = [&] {
    return Vec3{uniform(rng, 3.5, 6.5), uniform(rng, 3.5, 6.5),
                dimension == 3 ? uniform(rng, 3.5, 6.5) : 0.0};
  };
  std::vector<Primitive> prims;
  for (std::size_t i = 0; i < count; ++i) {
    const ShapeKind kind =
        pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    const Vec3 c = center();
    Primitive p{letter_id(i), Sphere{}};
    if (kind == ShapeKind::Sphere) {
      p.shape = Sphere{c, uniform(rng, 1.2, 2.5)};
    } else if (kind == ShapeKind::Box) {
      const Vec3 h{uniform(rng, 0.8, 2.2), uniform(rng, 0.8, 2.2),
                   dimension == 3 ? uniform(rng, 0.8, 2.2) : 1.0};
      p.shape = Box{c - h, c + h};
    } else {
      Vec3 axis{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
      while (norm(axis) < 0.1) axis = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), 1.0};
      axis = (1.0 / norm(axis)) * axis;
      const double height = uniform(rng, 2.0, 4.0);
      p.shape = Cylinder{c - (0.5 * height) * axis, axis, uniform(rng, 0.8, 1.8), height};
    }
    prims.push_back(std::move(p));
  }
  s.primitives = PrimitiveSet(std::move(prims));

  const SamplePlan coarse = s.plan(32);
  const MembershipTable table = MembershipTable::sample(s.primitives, coarse, seed, s.default_epsilon());
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<CsgExpr> leaves;
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) leaves.push_back(CsgExpr::leaf(s.primitives[i].id));
    CsgExpr truth = random_tree(std::move(leaves), rng);
    const auto labels = evaluate(truth, table);
    if (std::count(labels.begin(), labels.end(), MembershipLabel::Inside) > 0)
      return {"random" + std::to_string(seed), std::move(s), std::move(truth)};
  }
  throw std::runtime_error("random scene: no non-empty expression found");
}

const std::vector<std::string>& scene_kinds() {
  static const std::vector<std::string> kinds{"fig2", "disjoint", "overlap3", "chain", "random"};
  return kinds;
}

GeneratedScene make_scene(const std::string& kind, std::size_t count, int dimension,
                          std::uint64_t seed, const std::vector<ShapeKind>& shapes) {
  if (kind == "fig2") return fig2_scene();
  if (kind == "disjoint") return disjoint_scene(count);
  if (kind == "overlap3") return overlap_scene();
  if (kind == "chain") return chain_scene(count);
  if (kind == "random") return random_scene(count, dimension, seed, shapes);
  throw std::invalid_argument("unknown scene kind '" + kind + "'");
}

}  // namespace csgsearch
