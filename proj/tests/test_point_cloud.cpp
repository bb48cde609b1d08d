// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "csgsearch/point_cloud.hpp"
#include "csgsearch/scene_gen.hpp"
#include "csgsearch/score.hpp"
#include "csgsearch/target.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace csgsearch;
using namespace csgsearch::testing;

TEST_CASE("XYZ parsing") {
  std::istringstream in("# comment\n1 2 3\n\n  4.5 -6 7e-1 0 0 1\n");
  const auto pts = read_xyz(in);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == Vec3{1, 2, 3});
  CHECK(pts[1] == Vec3{4.5, -6, 0.7});
  std::istringstream bad("1 2\n");
  CHECK_THROWS_AS(read_xyz(bad), PointCloudError);
  std::istringstream nan("1 2 nan\n");
  CHECK_THROWS_AS(read_xyz(nan), PointCloudError);
}

TEST_CASE("ASCII PLY parsing ignores normals and other elements") {
  std::istringstream in(
      "ply\nformat ascii 1.0\ncomment made by hand\nelement vertex 2\n"
      "property float nx\nproperty float x\nproperty float y\nproperty float z\nproperty float ny\n"
      "element face 1\nproperty list uchar int vertex_indices\nend_header\n"
      "9 1 2 3 9\n9 4 5 6 9\n3 0 1 1\n");
  const auto pts = read_ply(in);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == Vec3{1, 2, 3});
  CHECK(pts[1] == Vec3{4, 5, 6});

  std::istringstream binary("ply\nformat binary_little_endian 1.0\nelement vertex 1\nend_header\n");
  CHECK_THROWS_AS(read_ply(binary), PointCloudError);
  std::istringstream short_body("ply\nformat ascii 1.0\nelement vertex 3\nproperty float x\nproperty float y\n"
                                "property float z\nend_header\n1 2 3\n");
  CHECK_THROWS_AS(read_ply(short_body), PointCloudError);
}

TEST_CASE("XYZ write/read round trip is exact") {
  const std::vector<Vec3> pts{{0.1, 1.0 / 3.0, -2e-300}, {1e17, -0.0, 5}};
  std::stringstream ss;
  write_xyz(ss, pts);
  CHECK(read_xyz(ss) == pts);
}

TEST_CASE("sampled surface points classify as Surface") {
  const GeneratedScene g = fig2_scene();
  const double eps = g.scene.default_epsilon();
  const auto cloud = sample_surface(g.truth, g.scene.primitives, g.scene.plan(128), 3, eps);
  CHECK(cloud.size() > 200);
  for (const Vec3& p : cloud) CHECK(evaluate(g.truth, g.scene.primitives, p, eps) == MembershipLabel::Surface);
  CHECK(score_against_cloud(g.truth, cloud, g.scene.primitives, eps).agreement.match_fraction() == 1.0);
  CHECK(sample_surface(g.truth, g.scene.primitives, g.scene.plan(128), 3, eps) == cloud);
}

TEST_CASE("cloud-derived labels agree with the solid") {
  const GeneratedScene g = random_scene(4, 3, 8);
  const double eps = g.scene.default_epsilon();
  const auto cloud = sample_surface(g.truth, g.scene.primitives, g.scene.plan(96), 2, eps);
  const SamplePlan plan = g.scene.plan(48);
  const auto labels = labels_from_cloud(cloud, plan, 5);
  const MembershipTable table = MembershipTable::sample(g.scene.primitives, plan, 5, eps);
  const LabelAgreement a = compare_labels(labels, evaluate(g.truth, table));
  CHECK(a.match_fraction() > 0.995);
  CHECK(a.surface_excluded < a.total / 3);
}
