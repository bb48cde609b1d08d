// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "csgsearch/score.hpp"

namespace csgsearch {

ScoreReport score_against_truth(const CsgExpr& candidate, const CsgExpr& truth,
                                const PrimitiveSet& ps, const SamplePlan& plan,
                                std::uint64_t seed, double epsilon) {
  check_resolves(candidate, ps);
  check_resolves(truth, ps);
  const MembershipTable table = MembershipTable::sample(ps, plan, seed, epsilon);
  const auto got = evaluate(candidate, table);
  const auto want = evaluate(truth, table);
  return {"grid", compare_labels(got, want), size_metrics(candidate)};
}

ScoreReport score_against_cloud(const CsgExpr& candidate, const std::vector<Vec3>& cloud,
                                const PrimitiveSet& ps, double epsilon) {
  check_resolves(candidate, ps);
  ScoreReport r{"cloud", {}, size_metrics(candidate)};
  r.agreement.total = cloud.size();
  for (const Vec3& p : cloud) {
    if (evaluate(candidate, ps, p, epsilon) == MembershipLabel::Surface)
      ++r.agreement.matched;
    else
      ++r.agreement.mismatched;
  }
  return r;
}

nlohmann::json score_to_json(const ScoreReport& r) {
  return {{"basis", r.basis},
          {"total", r.agreement.total},
          {"matched", r.agreement.matched},
          {"mismatched", r.agreement.mismatched},
          {"surface_excluded", r.agreement.surface_excluded},
          {"match_fraction", r.agreement.match_fraction()},
          {"equivalent", r.agreement.equivalent()},
          {"inner_count", r.metrics.inner_count},
          {"leaf_count", r.metrics.leaf_count},
          {"height", r.metrics.height}};
}

}  // namespace csgsearch
