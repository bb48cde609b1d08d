// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "csgsearch/target.hpp"

#include <stdexcept>

namespace csgsearch {

TargetSolid TargetSolid::oracle(CsgExpr expression) {
  TargetSolid t;
  t.expression_ = std::move(expression);
  return t;
}

TargetSolid TargetSolid::table(SamplePlan plan, std::uint64_t seed,
                               std::vector<MembershipLabel> labels) {
  if (labels.size() != plan.point_count())
    throw std::invalid_argument("target table does not cover the sample plan");
  TargetSolid t;
  t.plan_ = plan;
  t.seed_ = seed;
  t.labels_ = std::move(labels);
  return t;
}

std::vector<MembershipLabel> TargetSolid::labels_on(const MembershipTable& table,
                                                    const SamplePlan& plan,
                                                    std::uint64_t seed) const {
  if (expression_) return evaluate(*expression_, table);
  if (!(plan == plan_) || seed != seed_ || table.point_count() != labels_.size())
    throw std::invalid_argument("target table was sampled on a different grid");
  return labels_;
}

LabelAgreement compare_labels(std::span<const MembershipLabel> a,
                              std::span<const MembershipLabel> b) {
  if (a.size() != b.size()) throw std::invalid_argument("label vectors differ in length");
  LabelAgreement r;
  r.total = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == MembershipLabel::Surface || b[i] == MembershipLabel::Surface) ++r.surface_excluded;
    else if (a[i] == b[i]) ++r.matched;
    else ++r.mismatched;
  }
  return r;
}

}  // namespace csgsearch
