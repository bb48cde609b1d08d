// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <random>

#include "csgsearch/geometry.hpp"
#include "csgsearch/scene.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace csgsearch;
using namespace csgsearch::testing;

TEST_CASE("signed_value examples") {
  const Primitive s = sphere("S", {0, 0, 0}, 1.0);
  CHECK(signed_value(s, {0, 0, 0}) == doctest::Approx(-1.0));
  CHECK(signed_value(s, {1, 0, 0}) == doctest::Approx(0.0));
  const Primitive b = box("B", {0, 0, 0}, {2, 2, 2});
  CHECK(signed_value(b, {3, 1, 1}) == doctest::Approx(1.0));
}

TEST_CASE("box distance agrees with a dense nearest-surface search") {
  const Primitive b = box("B", {0, 0, 0}, {2, 2, 2});
  const Vec3 queries[] = {{3, 1, 1}, {3, 3, 1}, {-1, -1, -1}, {1, 1, 0.5}, {2.5, 0.2, 1.7}};
  const int n = 80;
  for (const Vec3 q : queries) {
    double best = HUGE_VAL;
    // Faces of the box sampled on an n x n lattice each.
    for (int face = 0; face < 6; ++face) {
      for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
          const double u = 2.0 * i / n, v = 2.0 * j / n, w = (face % 2) * 2.0;
          Vec3 p = face / 2 == 0 ? Vec3{w, u, v} : face / 2 == 1 ? Vec3{u, w, v} : Vec3{u, v, w};
          best = std::min(best, norm(p - q));
        }
      }
    }
    const bool inside = b.bounding_box().contains(q);
    CHECK(signed_value(b, q) == doctest::Approx(inside ? -best : best).epsilon(0.03));
  }
}

TEST_CASE("classify examples and label partition") {
  const Primitive s = sphere("S", {0, 0, 0}, 1.0);
  CHECK(classify(s, {0, 0, 0}, 1e-6) == MembershipLabel::Inside);
  CHECK(classify(s, {1, 0, 0}, 1e-6) == MembershipLabel::Surface);
  CHECK(classify(s, {2, 0, 0}, 1e-6) == MembershipLabel::Outside);
}

TEST_CASE("surface band grows monotonically with epsilon") {
  const Primitive s = sphere("S", {0, 0, 0}, 1.0);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 2000; ++t) {
    const Vec3 x{uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)};
    double prev = 0.0;
    for (double eps : {0.0, 1e-3, 1e-2, 0.1, 0.5}) {
      const MembershipLabel l = classify(s, x, eps);
      if (classify(s, x, prev) == MembershipLabel::Surface) CHECK(l == MembershipLabel::Surface);
      if (l != MembershipLabel::Surface) CHECK(l == classify(s, x, 0.0));
      prev = eps;
    }
  }
}

namespace {

// Independent membership tests, one per shape.
bool brute_inside(const Primitive& p, Vec3 x) {
  if (const auto* s = std::get_if<Sphere>(&p.shape)) {
    const Vec3 d = x - s->center;
    return d.x * d.x + d.y * d.y + d.z * d.z < s->radius * s->radius;
  }
  if (const auto* b = std::get_if<Box>(&p.shape))
    return b->min.x < x.x && x.x < b->max.x && b->min.y < x.y && x.y < b->max.y &&
           b->min.z < x.z && x.z < b->max.z;
  if (const auto* c = std::get_if<Cylinder>(&p.shape)) {
    const Vec3 v = x - c->base;
    const double along = v.x * c->axis.x + v.y * c->axis.y + v.z * c->axis.z;
    const Vec3 radial = v - along * c->axis;
    return along > 0 && along < c->height &&
           radial.x * radial.x + radial.y * radial.y + radial.z * radial.z < c->radius * c->radius;
  }
  const auto& h = std::get<Halfspace>(p.shape);
  const Vec3 v = x - h.point;
  return v.x * h.normal.x + v.y * h.normal.y + v.z * h.normal.z < 0;
}

}  // namespace

TEST_CASE("signed_value sign matches a brute-force inside test on 10k points") {
  const Vec3 axis = (1.0 / std::sqrt(3.0)) * Vec3{1, 1, 1};
  const std::vector<Primitive> prims{
      sphere("S", {0.3, -0.2, 0.1}, 1.3),
      box("B", {-1, -0.5, -1.2}, {0.8, 1.1, 0.4}),
      {"C", Cylinder{{-0.5, -0.5, -0.5}, axis, 0.6, 1.8}},
      {"H", Halfspace{{0.1, 0.2, 0.3}, (1.0 / std::sqrt(14.0)) * Vec3{1, 2, 3}}},
  };
  std::mt19937_64 rng(11);
  for (const Primitive& p : prims) {
    std::size_t checked = 0;
    for (int t = 0; t < 10000; ++t) {
      const Vec3 x{uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2)};
      const double v = signed_value(p, x);
      if (std::abs(v) <= 1e-9) continue;
      ++checked;
      if ((v < 0) != brute_inside(p, x)) FAIL_CHECK(p.id << " disagrees at " << x.x << "," << x.y << "," << x.z);
    }
    CHECK(checked > 9900);
  }
}

TEST_CASE("primitive validation") {
  CHECK_THROWS_AS(PrimitiveSet({sphere("A", {0, 0, 0}, 0.0)}), GeometryError);
  CHECK_THROWS_AS(PrimitiveSet({box("A", {0, 0, 0}, {1, 0, 1})}), GeometryError);
  CHECK_THROWS_AS(PrimitiveSet({{"A", Cylinder{{0, 0, 0}, {0, 0, 2}, 1, 1}}}), GeometryError);
  CHECK_THROWS_AS(PrimitiveSet({{"A", Cylinder{{0, 0, 0}, {0, 0, 1}, 1, -1}}}), GeometryError);
  CHECK_THROWS_AS(PrimitiveSet({{"A", Halfspace{{0, 0, 0}, {0, 1.001, 0}}}}), GeometryError);
  CHECK_THROWS_AS(PrimitiveSet({sphere("A", {0, 0, 0}, 1), sphere("A", {3, 0, 0}, 1)}), GeometryError);
  CHECK_THROWS_AS(PrimitiveSet({sphere("union", {0, 0, 0}, 1)}), GeometryError);
  CHECK_THROWS_AS(PrimitiveSet({sphere("a b", {0, 0, 0}, 1)}), GeometryError);
  CHECK_NOTHROW(PrimitiveSet({sphere("p_1.x-2", {0, 0, 0}, 1)}));
}

TEST_CASE("bounding boxes") {
  CHECK(sphere("A", {1, 2, 3}, 2).bounding_box() == Aabb{{-1, 0, 1}, {3, 4, 5}});
  const Primitive c{"C", Cylinder{{0, 0, 0}, {0, 0, 1}, 1.0, 2.0}};
  const Aabb b = c.bounding_box();
  CHECK(b.min.x == doctest::Approx(-1.0));
  CHECK(b.max.z == doctest::Approx(2.0));
  const Primitive h{"H", Halfspace{{0, 0, 0}, {0, 0, 1}}};
  CHECK(std::isinf(h.bounding_box().max.x));
}

TEST_CASE("sample_grid examples") {
  SamplePlan plan{cube_bounds(0, 1), 2, 0.0, 3};
  const auto pts = sample_grid(plan, 1);
  REQUIRE(pts.size() == 8);
  for (const Vec3& p : pts) {
    for (double c : {p.x, p.y, p.z}) CHECK((c == 0.25 || c == 0.75));
  }
  CHECK(pts[0] == Vec3{0.25, 0.25, 0.25});
  CHECK(pts[1] == Vec3{0.75, 0.25, 0.25});  // x fastest

  plan.jitter = 0.4;
  CHECK(sample_grid(plan, 42) == sample_grid(plan, 42));
  CHECK(sample_grid(plan, 42) != sample_grid(plan, 43));

  const SamplePlan flat{{{0, 0, 0}, {1, 1, 0}}, 10, 0.3, 2};
  const auto flat_pts = sample_grid(flat, 5);
  CHECK(flat_pts.size() == 100);
  for (const Vec3& p : flat_pts) CHECK(flat.bounds.contains(p));
}

TEST_CASE("sample plan validation") {
  CHECK_THROWS_AS(SamplePlan({cube_bounds(0, 1), 1, 0.0, 3}).validate(), GeometryError);
  CHECK_THROWS_AS(SamplePlan({cube_bounds(0, 1), 4, 0.6, 3}).validate(), GeometryError);
  CHECK_THROWS_AS(SamplePlan({{{0, 0, 0}, {1, 1, 0}}, 4, 0.0, 3}).validate(), GeometryError);
  CHECK_NOTHROW(SamplePlan({{{0, 0, 0}, {1, 1, 0}}, 4, 0.0, 2}).validate());
}

TEST_CASE("bounds containment check") {
  const PrimitiveSet ps({sphere("A", {0, 0, 0}, 1), sphere("B", {2.5, 0, 0}, 1)});
  CHECK(first_uncontained(plan3(-2, 4, 8), ps, 1e-3) == std::nullopt);
  CHECK(first_uncontained(plan3(-2, 3, 8), ps, 1e-3) == std::optional<std::string>("B"));
}

TEST_CASE("scene JSON round trip and schema errors") {
  const Scene s = load_scene(data_path("scenes/fig2.json"));
  CHECK(s.dimension == 2);
  CHECK(s.primitives.size() == 6);
  CHECK(s.primitives.ids() == std::vector<std::string>{"A", "B", "C", "D", "E", "F"});
  const Scene back = scene_from_json(scene_to_json(s));
  CHECK(scene_to_json(back) == scene_to_json(s));
  CHECK(s.default_epsilon() == doctest::Approx(1e-4 * std::hypot(16.0, 11.0)));

  nlohmann::json doc = scene_to_json(s);
  doc["colour"] = "red";
  CHECK_THROWS_AS(scene_from_json(doc), SceneError);
  doc = scene_to_json(s);
  doc["primitives"][0]["kind"] = "torus";
  CHECK_THROWS_AS(scene_from_json(doc), SceneError);
  doc = scene_to_json(s);
  doc["primitives"][0]["radius"] = -1.0;
  CHECK_THROWS(scene_from_json(doc));
}
