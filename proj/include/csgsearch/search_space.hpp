// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "csgsearch/csg_expr.hpp"
#include "csgsearch/target.hpp"

namespace csgsearch {

using BigInt = boost::multiprecision::cpp_int;

/// Number of binary tree shapes with n inner nodes, binom(2n, n) / (n + 1).
BigInt catalan(unsigned n);

struct SearchSpaceQuery {
  std::uint64_t primitive_count = 1;
  std::uint64_t operator_count = 3;
  unsigned n_min = 0;
  unsigned n_max = 0;

  static SearchSpaceQuery single(std::uint64_t primitives, std::uint64_t ops, unsigned n) {
    return {primitives, ops, n, n};
  }
  void validate() const;
};

/// Labeled trees with n inner nodes: |P|^(n+1) * |O|^n * C(n).
BigInt count_trees(std::uint64_t primitive_count, std::uint64_t operator_count, unsigned n);

struct NBounds {
  unsigned n_min = 0;
  double h_max = 0.0;
  unsigned n_max = 0;
};

/// n_min = |P| - 1; h_max = sqrt(pi/2 * |P| * (|P| - 1)); n_max is the inner
/// node count of a full binary tree of height ceil(h_max).
NBounds n_bounds(std::uint64_t primitive_count);

struct SearchSpaceReport {
  SearchSpaceQuery query;
  std::vector<BigInt> per_n;  // per_n[k] is the count for n = query.n_min + k
  BigInt total;
  std::optional<NBounds> heuristic;  // set when the range came from n_bounds
};

/// Upper limit on the number of per-n terms a range report will hold.
inline constexpr unsigned kMaxRangeTerms = 100000;

/// Per-n counts and their exact sum over [n_min, n_max].
SearchSpaceReport count_trees_range(const SearchSpaceQuery& q);
/// Range taken from n_bounds; `n_max_override` replaces the heuristic n_max.
SearchSpaceReport count_trees_auto(std::uint64_t primitive_count, std::uint64_t operator_count,
                                   std::optional<unsigned> n_max_override = std::nullopt);

nlohmann::json report_to_json(const SearchSpaceReport& report);

class EnumerationCapExceeded : public std::runtime_error {
 public:
  explicit EnumerationCapExceeded(BigInt requested);
  const BigInt& requested() const { return requested_; }

 private:
  BigInt requested_;
};

inline const BigInt kDefaultEnumerationCap{10'000'000};

/// Receives each tree; return false to stop the stream early.
using TreeVisitor = std::function<bool(const CsgExpr&)>;

/// Streams every labeled binary tree with n inner nodes exactly once.
///
/// Order: shapes by ascending left-subtree size (recursively), then operator
/// labels in operator-set order, then leaf labels in primitive order; label
/// sequences run lexicographically over preorder inner nodes and left-to-right
/// leaves. Throws EnumerationCapExceeded before yielding anything if
/// count_trees exceeds `cap`. Returns the number of trees yielded.
std::uint64_t enumerate_trees(const std::vector<std::string>& leaf_ids, const OperatorSet& ops,
                              unsigned n, const TreeVisitor& visit,
                              const BigInt& cap = kDefaultEnumerationCap);
std::uint64_t enumerate_trees(const PrimitiveSet& ps, const OperatorSet& ops, unsigned n,
                              const TreeVisitor& visit, const BigInt& cap = kDefaultEnumerationCap);

std::vector<CsgExpr> collect_trees(const std::vector<std::string>& leaf_ids,
                                   const OperatorSet& ops, unsigned n,
                                   const BigInt& cap = kDefaultEnumerationCap);

struct ExhaustiveResult {
  std::optional<CsgExpr> best;
  std::optional<unsigned> n;      // inner-node count of `best`
  std::uint64_t inspected = 0;    // candidates evaluated across all levels
  std::uint64_t matching = 0;     // matching candidates in the winning level
};

/// Smallest-n tree whose labels agree with the target on every sampled point
/// where neither side is Surface. Each level is inspected completely; the
/// first match in stream order wins.
ExhaustiveResult exhaustive_search(const MembershipTable& table,
                                   std::span<const MembershipLabel> target, const OperatorSet& ops,
                                   unsigned n_min, unsigned n_max,
                                   const BigInt& cap = kDefaultEnumerationCap);

ExhaustiveResult exhaustive_search(const PrimitiveSet& ps, const OperatorSet& ops,
                                   const TargetSolid& target, unsigned n_min, unsigned n_max,
                                   const SamplePlan& plan, std::uint64_t seed, double epsilon,
                                   const BigInt& cap = kDefaultEnumerationCap);

}  // namespace csgsearch
