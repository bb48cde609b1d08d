// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "csgsearch/decomposition.hpp"

#include <algorithm>
#include <numeric>

#include "csgsearch/intersection_graph.hpp"

namespace csgsearch {

const char* dominance_name(DominanceKind k) {
  switch (k) {
    case DominanceKind::DominatesTarget: return "dominates_S";
    case DominanceKind::DominatesComplement: return "dominates_complement";
    case DominanceKind::NonDominant: return "non_dominant";
  }
  return "?";
}

std::vector<DominanceVerdict> find_dominant(const MembershipTable& table,
                                            std::span<const MembershipLabel> target,
                                            std::span<const std::uint8_t> region,
                                            const std::vector<std::size_t>& candidates) {
  if (target.size() != table.point_count())
    throw DecompositionError("target labels do not match the table");
  std::vector<DominanceVerdict> out;
  out.reserve(candidates.size());
  for (std::size_t c : candidates) {
    const auto col = table.column(c);
    DominanceVerdict v{table.primitives()[c].id, c};
    bool any_interior = false;
    for (std::size_t k = 0; k < col.size(); ++k) {
      if (col[k] != MembershipLabel::Inside) continue;
      any_interior = true;
      if (!region_contains(region, k)) continue;
      switch (target[k]) {
        case MembershipLabel::Inside: ++v.inside; break;
        case MembershipLabel::Outside: ++v.outside; break;
        case MembershipLabel::Surface: ++v.surface; break;
      }
    }
    if (!any_interior)
      throw DecompositionError("primitive '" + v.id +
                               "' has no interior samples at this resolution");
    if (v.inside + v.outside > 0) {
      if (v.outside == 0) v.kind = DominanceKind::DominatesTarget;
      else if (v.inside == 0) v.kind = DominanceKind::DominatesComplement;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<DominanceVerdict> find_dominant(const PrimitiveSet& ps, const TargetSolid& target,
                                            const SamplePlan& plan, std::uint64_t seed,
                                            double epsilon) {
  const MembershipTable table = MembershipTable::sample(ps, plan, seed, epsilon);
  const auto labels = target.labels_on(table, plan, seed);
  std::vector<std::size_t> all(ps.size());
  std::iota(all.begin(), all.end(), 0);
  return find_dominant(table, labels, {}, all);
}

Decomposition decompose(const MembershipTable& table, std::span<const MembershipLabel> target,
                        std::span<const std::uint8_t> region, std::vector<std::size_t> candidates) {
  Decomposition d;
  d.region = region.empty() ? RegionMask(table.point_count(), 1)
                            : RegionMask(region.begin(), region.end());
  if (candidates.empty()) {
    candidates.resize(table.primitive_count());
    std::iota(candidates.begin(), candidates.end(), 0);
  }
  d.remaining = std::move(candidates);

  for (std::size_t iteration = 0; !d.remaining.empty(); ++iteration) {
    d.visit_count += d.remaining.size();
    auto verdicts = find_dominant(table, target, d.region, d.remaining);

    std::vector<std::size_t> next;
    std::vector<std::size_t> carve;
    for (const DominanceVerdict& v : verdicts) {
      if (v.inside + v.outside == 0) {
        d.discarded_ids.push_back(v.id);
      } else if (v.kind == DominanceKind::NonDominant) {
        next.push_back(v.index);
      } else {
        const CsgOp op = v.kind == DominanceKind::DominatesTarget ? CsgOp::Union : CsgOp::Difference;
        d.steps.push_back({v.id, v.index, op, iteration});
        carve.push_back(v.index);
      }
    }
    // Carving happens after the whole iteration is judged on the same region.
    for (std::size_t c : carve) {
      const auto col = table.column(c);
      for (std::size_t k = 0; k < col.size(); ++k)
        if (col[k] == MembershipLabel::Inside) d.region[k] = 0;
    }
    d.iterations.push_back(std::move(verdicts));
    const bool progress = next.size() < d.remaining.size();
    d.remaining = std::move(next);
    if (!progress) break;
  }

  for (std::size_t i : d.remaining) d.remaining_ids.push_back(table.primitives()[i].id);
  d.remainder_empty = true;
  for (std::size_t k = 0; k < table.point_count() && d.remainder_empty; ++k)
    if (d.region[k] && target[k] == MembershipLabel::Inside) d.remainder_empty = false;
  return d;
}

Decomposition decompose(const PrimitiveSet& ps, const TargetSolid& target, const SamplePlan& plan,
                        std::uint64_t seed, double epsilon) {
  const MembershipTable table = MembershipTable::sample(ps, plan, seed, epsilon);
  const auto labels = target.labels_on(table, plan, seed);
  return decompose(table, labels);
}

CsgExpr fold_steps(const CsgExpr& remainder, const std::vector<DecompositionStep>& steps,
                   std::vector<std::string>* dropped) {
  CsgExpr e = remainder;
  std::size_t end = steps.size();
  while (end > 0) {
    std::size_t begin = end;
    while (begin > 0 && steps[begin - 1].iteration == steps[end - 1].iteration) --begin;
    for (CsgOp op : {CsgOp::Union, CsgOp::Difference}) {
      for (std::size_t k = begin; k < end; ++k) {
        if (steps[k].op != op) continue;
        CsgExpr leaf = CsgExpr::leaf(steps[k].id);
        if (op == CsgOp::Union) {
          e = e.is_empty() ? leaf : make_union(e, leaf);
        } else if (e.is_empty()) {
          if (dropped) dropped->push_back(steps[k].id);
        } else {
          e = make_difference(e, leaf);
        }
      }
    }
    end = begin;
  }
  return e;
}

namespace {

struct Pipeline {
  const MembershipTable& table;
  std::span<const MembershipLabel> target;
  const ReconstructOptions& options;

  CsgExpr dnf_component(const std::vector<std::size_t>& members, const RegionMask& region,
                        ComponentTrace& ct) const {
    const MembershipTable sub = table.select(members);
    const IntersectionGraph g = build_graph(sub, region);
    ProductSet products = enumerate_products(sub, g, region);
    classify_products(products, sub, target, options.tau, region);
    ct.method = "dnf";
    ct.nf = products.nf();
    ct.mixed = count_status(products, ProductStatus::Mixed);
    if (ct.mixed > 0) {
      if (!options.allow_mixed)
        throw DecompositionError(std::to_string(ct.mixed) +
                                 " fundamental product(s) are partly inside the target");
      resolve_mixed_by_majority(products);
    }
    CsgExpr e = minimize_products(products, options.use_dont_cares).expression;
    ct.expression = serialize(e);
    return e;
  }

  CsgExpr run(const RegionMask& region, std::vector<std::size_t> candidates, unsigned depth,
              ReconstructTrace* trace) const {
    if (depth > table.primitive_count())
      throw DecompositionError("recursion depth exceeded the primitive count");
    ReconstructTrace local;
    ReconstructTrace& t = trace ? *trace : local;
    t.depth = depth;
    t.decomposition = decompose(table, target, region, std::move(candidates));
    const Decomposition& d = t.decomposition;

    CsgExpr remainder = CsgExpr::empty();
    if (!d.remainder_empty && !d.remaining.empty()) {
      const MembershipTable sub = table.select(d.remaining);
      const ComponentPartition parts = connected_components(build_graph(sub, d.region));

      if (parts.size() == 1 && d.steps.empty()) {
        ComponentTrace ct;
        ct.ids = d.remaining_ids;
        remainder = dnf_component(d.remaining, d.region, ct);
        t.components.push_back(std::move(ct));
      } else {
        for (std::size_t pi = 0; pi < parts.size(); ++pi) {
          std::vector<std::size_t> members;
          for (std::size_t v : parts[pi]) members.push_back(d.remaining[v]);
          // Points inside other components' primitives are theirs to explain.
          RegionMask part_region = d.region;
          for (std::size_t pj = 0; pj < parts.size(); ++pj) {
            if (pj == pi) continue;
            for (std::size_t v : parts[pj]) {
              const auto col = table.column(d.remaining[v]);
              for (std::size_t k = 0; k < col.size(); ++k)
                if (col[k] == MembershipLabel::Inside) part_region[k] = 0;
            }
          }
          ComponentTrace ct;
          for (std::size_t m : members) ct.ids.push_back(table.primitives()[m].id);
          ct.method = "decompose";
          t.children.emplace_back();
          CsgExpr sub_expr = run(part_region, members, depth + 1, &t.children.back());
          ct.expression = serialize(sub_expr);
          t.components.push_back(std::move(ct));
          if (sub_expr.is_empty()) continue;
          remainder = remainder.is_empty() ? sub_expr : make_union(remainder, sub_expr);
        }
      }
    }
    return fold_steps(remainder, d.steps, &t.dropped_ids);
  }
};

}  // namespace

CsgExpr reconstruct(const MembershipTable& table, std::span<const MembershipLabel> target,
                    const ReconstructOptions& options, ReconstructTrace* trace) {
  if (target.size() != table.point_count())
    throw DecompositionError("target labels do not match the table");
  const Pipeline pipeline{table, target, options};
  std::vector<std::size_t> all(table.primitive_count());
  std::iota(all.begin(), all.end(), 0);
  return pipeline.run(RegionMask(table.point_count(), 1), all, 0, trace);
}

CsgExpr reconstruct(const PrimitiveSet& ps, const TargetSolid& target, const SamplePlan& plan,
                    std::uint64_t seed, double epsilon, const ReconstructOptions& options,
                    ReconstructTrace* trace) {
  const MembershipTable table = MembershipTable::sample(ps, plan, seed, epsilon);
  const auto labels = target.labels_on(table, plan, seed);
  return reconstruct(table, labels, options, trace);
}

nlohmann::json decomposition_to_json(const Decomposition& d) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : d.steps)
    steps.push_back({{"id", s.id}, {"op", op_keyword(s.op)}, {"iteration", s.iteration}});
  nlohmann::json iterations = nlohmann::json::array();
  for (const auto& it : d.iterations) {
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : it)
      verdicts.push_back({{"id", v.id},
                          {"kind", dominance_name(v.kind)},
                          {"inside", v.inside},
                          {"outside", v.outside},
                          {"surface", v.surface}});
    iterations.push_back(std::move(verdicts));
  }
  return {{"steps", std::move(steps)},
          {"remaining", d.remaining_ids},
          {"discarded", d.discarded_ids},
          {"remainder_empty", d.remainder_empty},
          {"visit_count", d.visit_count},
          {"iterations", std::move(iterations)}};
}

nlohmann::json trace_to_json(const ReconstructTrace& t) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : t.components)
    comps.push_back({{"ids", c.ids},
                     {"method", c.method},
                     {"expression", c.expression},
                     {"nf", c.nf},
                     {"mixed", c.mixed}});
  nlohmann::json children = nlohmann::json::array();
  for (const auto& c : t.children) children.push_back(trace_to_json(c));
  return {{"depth", t.depth},
          {"decomposition", decomposition_to_json(t.decomposition)},
          {"dropped", t.dropped_ids},
          {"components", std::move(comps)},
          {"children", std::move(children)}};
}

}  // namespace csgsearch
