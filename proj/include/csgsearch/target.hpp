// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "csgsearch/csg_expr.hpp"
#include "csgsearch/membership.hpp"

namespace csgsearch {

/// The solid S an extraction must reproduce. Either an oracle expression over
/// the primitive set, or a precomputed label table on one specific grid.
class TargetSolid {
 public:
  static TargetSolid oracle(CsgExpr expression);
  static TargetSolid table(SamplePlan plan, std::uint64_t seed, std::vector<MembershipLabel> labels);

  bool is_oracle() const { return expression_.has_value(); }
  /// Precondition: is_oracle().
  const CsgExpr& expression() const { return *expression_; }

  /// Labels at every point of `table`, which must have been sampled from
  /// (plan, seed). A table backend only answers for its own grid.
  std::vector<MembershipLabel> labels_on(const MembershipTable& table, const SamplePlan& plan,
                                         std::uint64_t seed) const;

 private:
  TargetSolid() = default;

  std::optional<CsgExpr> expression_;
  SamplePlan plan_;
  std::uint64_t seed_ = 0;
  std::vector<MembershipLabel> labels_;
};

/// Point-wise agreement between two label vectors. Points where either side
/// is Surface are excluded from the verdict.
struct LabelAgreement {
  std::size_t total = 0;
  std::size_t matched = 0;
  std::size_t mismatched = 0;
  std::size_t surface_excluded = 0;

  double match_fraction() const {
    const std::size_t decided = matched + mismatched;
    return decided == 0 ? 1.0 : static_cast<double>(matched) / static_cast<double>(decided);
  }
  bool equivalent() const { return mismatched == 0; }
};

LabelAgreement compare_labels(std::span<const MembershipLabel> a, std::span<const MembershipLabel> b);

}  // namespace csgsearch
