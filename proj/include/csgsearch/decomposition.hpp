// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "csgsearch/csg_expr.hpp"
#include "csgsearch/dnf.hpp"
#include "csgsearch/membership.hpp"
#include "csgsearch/target.hpp"

namespace csgsearch {

enum class DominanceKind : std::uint8_t { DominatesTarget, DominatesComplement, NonDominant };

const char* dominance_name(DominanceKind k);

/// Evidence counts are over the primitive's Inside samples within the region.
struct DominanceVerdict {
  std::string id;
  std::size_t index = 0;  // column in the table
  DominanceKind kind = DominanceKind::NonDominant;
  std::size_t inside = 0;   // also Inside the target
  std::size_t outside = 0;  // Outside the target
  std::size_t surface = 0;  // on the target's surface, not counted either way
};

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One verdict per candidate primitive, in candidate order. A primitive
/// with no Inside samples anywhere on the grid is an error, because the grid
/// cannot say anything about it.
std::vector<DominanceVerdict> find_dominant(const MembershipTable& table,
                                            std::span<const MembershipLabel> target,
                                            std::span<const std::uint8_t> region,
                                            const std::vector<std::size_t>& candidates);

std::vector<DominanceVerdict> find_dominant(const PrimitiveSet& ps, const TargetSolid& target,
                                            const SamplePlan& plan, std::uint64_t seed,
                                            double epsilon);

struct DecompositionStep {
  std::string id;
  std::size_t index = 0;
  CsgOp op = CsgOp::Union;  // Union or Difference
  std::size_t iteration = 0;
};

struct Decomposition {
  /// Detection order. Step k was found with steps 0..k-1 already removed, so
  /// the first step is the outermost operation of the folded expression.
  std::vector<DecompositionStep> steps;
  std::vector<std::size_t> remaining;      // non-dominant primitives left over
  std::vector<std::string> remaining_ids;
  /// Primitives whose interior was entirely carved away by earlier steps.
  /// They can be dropped without changing the solid.
  std::vector<std::string> discarded_ids;
  RegionMask region;          // points the remainder must still explain
  bool remainder_empty = false;  // no target-Inside point left in the region
  std::size_t visit_count = 0;   // sum of per-iteration candidate counts
  std::vector<std::vector<DominanceVerdict>> iterations;
};

/// Repeatedly removes every dominant primitive of the current region
/// (carving its interior out of the region) until an iteration finds none.
Decomposition decompose(const MembershipTable& table, std::span<const MembershipLabel> target,
                        std::span<const std::uint8_t> region = {},
                        std::vector<std::size_t> candidates = {});

Decomposition decompose(const PrimitiveSet& ps, const TargetSolid& target, const SamplePlan& plan,
                        std::uint64_t seed, double epsilon);

/// Folds the steps around `remainder`: later iterations sit deeper in the
/// tree. Steps of one iteration commute on the samples; unions are applied
/// before differences so a difference never lands on the bare empty solid
/// unless nothing was unioned before it. The empty solid simplifies away
/// (empty ∪ d = d, empty − d = empty); ids lost to the second rule are
/// appended to `dropped`.
CsgExpr fold_steps(const CsgExpr& remainder, const std::vector<DecompositionStep>& steps,
                   std::vector<std::string>* dropped = nullptr);

struct ReconstructOptions {
  double tau = 1.0;
  bool allow_mixed = false;  // resolve mixed products by majority instead of failing
  bool use_dont_cares = true;
};

struct ComponentTrace {
  std::vector<std::string> ids;
  std::string method;  // "decompose" or "dnf"
  std::string expression;
  std::size_t nf = 0;
  std::size_t mixed = 0;
};

struct ReconstructTrace {
  unsigned depth = 0;
  Decomposition decomposition;
  std::vector<std::string> dropped_ids;  // redundant differences on an empty solid
  std::vector<ComponentTrace> components;
  std::vector<ReconstructTrace> children;
};

/// Full pipeline: decompose, split the remaining primitives into connected
/// components of their intersection graph, recurse into each component
/// (falling back to minimized DNF extraction when a component has no
/// dominant primitive), merge components by union and fold the steps.
CsgExpr reconstruct(const MembershipTable& table, std::span<const MembershipLabel> target,
                    const ReconstructOptions& options = {}, ReconstructTrace* trace = nullptr);

CsgExpr reconstruct(const PrimitiveSet& ps, const TargetSolid& target, const SamplePlan& plan,
                    std::uint64_t seed, double epsilon, const ReconstructOptions& options = {},
                    ReconstructTrace* trace = nullptr);

nlohmann::json decomposition_to_json(const Decomposition& d);
nlohmann::json trace_to_json(const ReconstructTrace& t);

}  // namespace csgsearch
