// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "csgsearch/csg_expr.hpp"
#include "csgsearch/target.hpp"
#include "json.hpp"

namespace csgsearch {

struct ScoreReport {
  std::string basis;  // "grid" or "cloud"
  LabelAgreement agreement;
  SizeMetrics metrics;
};

/// Agreement of `candidate` with `truth` on a fresh (plan, seed) grid.
ScoreReport score_against_truth(const CsgExpr& candidate, const CsgExpr& truth,
                                const PrimitiveSet& ps, const SamplePlan& plan,
                                std::uint64_t seed, double epsilon);

/// Surface proximity: a cloud point matches when `candidate` labels it
/// Surface, i.e. it lies within epsilon of the candidate's boundary.
ScoreReport score_against_cloud(const CsgExpr& candidate, const std::vector<Vec3>& cloud,
                                const PrimitiveSet& ps, double epsilon);

nlohmann::json score_to_json(const ScoreReport& r);

}  // namespace csgsearch
