// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "csgsearch/geometry.hpp"
#include "csgsearch/kernels.hpp"

namespace csgsearch {

/// Active-point mask over a table's points; an empty mask means "all points".
using RegionMask = std::vector<std::uint8_t>;

inline bool region_contains(std::span<const std::uint8_t> region, std::size_t i) {
  return region.empty() || region[i] != 0;
}

/// Per-primitive membership labels on a fixed point list. Every emptiness,
/// dominance and equivalence judgment downstream reads from one of these.
class MembershipTable {
 public:
  MembershipTable(PrimitiveSet primitives, std::vector<Vec3> points, double epsilon);

  static MembershipTable sample(const PrimitiveSet& primitives, const SamplePlan& plan,
                                std::uint64_t seed, double epsilon);

  const PrimitiveSet& primitives() const { return primitives_; }
  const std::vector<Vec3>& points() const { return points_; }
  double epsilon() const { return epsilon_; }
  std::size_t point_count() const { return points_.size(); }
  std::size_t primitive_count() const { return primitives_.size(); }

  std::span<const MembershipLabel> column(std::size_t primitive) const {
    return {labels_.data() + primitive * points_.size(), points_.size()};
  }
  MembershipLabel label(std::size_t primitive, std::size_t point) const {
    return labels_[primitive * points_.size() + point];
  }
  /// True when some primitive's label at the point is Surface.
  bool on_any_surface(std::size_t point) const;

  /// Same points, subset of columns in the given order.
  MembershipTable select(const std::vector<std::size_t>& primitive_indices) const;

 private:
  MembershipTable() = default;

  PrimitiveSet primitives_;
  std::vector<Vec3> points_;
  double epsilon_ = 0.0;
  std::vector<MembershipLabel> labels_;  // column-major: primitive-by-primitive
};

}  // namespace csgsearch
