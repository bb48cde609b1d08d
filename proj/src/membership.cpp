// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "csgsearch/membership.hpp"

#include <stdexcept>

namespace csgsearch {

MembershipTable::MembershipTable(PrimitiveSet primitives, std::vector<Vec3> points, double epsilon)
    : primitives_(std::move(primitives)), points_(std::move(points)), epsilon_(epsilon) {
  if (!(epsilon_ > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const PointColumns columns(points_);
  labels_.resize(primitives_.size() * points_.size());
  for (std::size_t p = 0; p < primitives_.size(); ++p) {
    std::span<MembershipLabel> out(labels_.data() + p * points_.size(), points_.size());
    kernels::classify(primitives_[p], columns, epsilon_, out);
  }
}

MembershipTable MembershipTable::sample(const PrimitiveSet& primitives, const SamplePlan& plan,
                                        std::uint64_t seed, double epsilon) {
  return MembershipTable(primitives, sample_grid(plan, seed), epsilon);
}

bool MembershipTable::on_any_surface(std::size_t point) const {
  for (std::size_t p = 0; p < primitives_.size(); ++p)
    if (label(p, point) == MembershipLabel::Surface) return true;
  return false;
}

MembershipTable MembershipTable::select(const std::vector<std::size_t>& primitive_indices) const {
  MembershipTable t;
  t.primitives_ = primitives_.select(primitive_indices);
  t.points_ = points_;
  t.epsilon_ = epsilon_;
  t.labels_.reserve(primitive_indices.size() * points_.size());
  for (std::size_t i : primitive_indices) {
    const auto col = column(i);
    t.labels_.insert(t.labels_.end(), col.begin(), col.end());
  }
  return t;
}

}  // namespace csgsearch
