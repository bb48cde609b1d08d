// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "csgsearch/csg_expr.hpp"
#include "csgsearch/geometry.hpp"

namespace csgsearch {

class PointCloudError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One "x y z" per line; extra columns (normals) are ignored, blank lines
/// and lines starting with '#' are skipped.
std::vector<Vec3> read_xyz(std::istream& in);
/// ASCII PLY, vertex element only. Binary encodings are rejected.
std::vector<Vec3> read_ply(std::istream& in);
/// Dispatches on the extension: .ply is PLY, anything else XYZ.
std::vector<Vec3> read_point_cloud(const std::filesystem::path& path);

/// Shortest round-trip decimal form, one point per line.
void write_xyz(std::ostream& out, const std::vector<Vec3>& points);
void write_xyz(const std::filesystem::path& path, const std::vector<Vec3>& points);

/// Points on the boundary of `e`: for every pair of grid-adjacent samples
/// labeled Inside and Outside, bisection along the segment until the
/// midpoint evaluates to Surface. Deterministic for (plan, seed).
std::vector<Vec3> sample_surface(const CsgExpr& e, const PrimitiveSet& ps, const SamplePlan& plan,
                                 std::uint64_t seed, double epsilon);

/// Membership labels on the (plan, seed) grid inferred from a closed surface
/// cloud. Grid points within `barrier` of a cloud point are Surface; the rest
/// are Outside when reachable from the grid border without crossing the
/// barrier, Inside otherwise. A non-positive `barrier` uses 1.5 cell sizes.
std::vector<MembershipLabel> labels_from_cloud(const std::vector<Vec3>& cloud,
                                               const SamplePlan& plan, std::uint64_t seed,
                                               double barrier = 0.0);

}  // namespace csgsearch
