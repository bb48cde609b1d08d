// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "csgsearch/search_space.hpp"

#include <cmath>
#include <deque>
#include <mutex>
#include <numbers>

namespace csgsearch {

BigInt catalan(unsigned n) {
  // binom(2n, n) by the multiplicative formula; every partial product is an
  // exact binomial coefficient binom(n + k, k).
  BigInt binom = 1;
  for (unsigned k = 1; k <= n; ++k) {
    binom *= n + k;
    binom /= k;
  }
  return binom / (n + 1);
}

void SearchSpaceQuery::validate() const {
  if (primitive_count < 1) throw std::invalid_argument("primitive count must be >= 1");
  if (operator_count < 1) throw std::invalid_argument("operator count must be >= 1");
  if (n_min > n_max) throw std::invalid_argument("n_min must not exceed n_max");
}

BigInt count_trees(std::uint64_t primitive_count, std::uint64_t operator_count, unsigned n) {
  SearchSpaceQuery::single(primitive_count, operator_count, n).validate();
  return boost::multiprecision::pow(BigInt(primitive_count), n + 1) *
         boost::multiprecision::pow(BigInt(operator_count), n) * catalan(n);
}

NBounds n_bounds(std::uint64_t primitive_count) {
  if (primitive_count < 1) throw std::invalid_argument("primitive count must be >= 1");
  const double p = static_cast<double>(primitive_count);
  NBounds b;
  b.n_min = static_cast<unsigned>(primitive_count - 1);
  b.h_max = std::sqrt(std::numbers::pi / 2.0 * p * (p - 1.0));
  const double height = std::ceil(b.h_max);
  if (height >= 32.0) throw std::overflow_error("h_max too large for an inner-node bound");
  b.n_max = static_cast<unsigned>((std::uint64_t{1} << static_cast<unsigned>(height)) - 1);
  return b;
}

SearchSpaceReport count_trees_range(const SearchSpaceQuery& q) {
  q.validate();
  if (q.n_max - q.n_min >= kMaxRangeTerms)
    throw std::invalid_argument("range spans more than " + std::to_string(kMaxRangeTerms) +
                                " values of n; lower n_max");
  SearchSpaceReport r;
  r.query = q;
  const BigInt po = BigInt(q.primitive_count) * q.operator_count;
  BigInt term = count_trees(q.primitive_count, q.operator_count, q.n_min);
  for (unsigned n = q.n_min;; ++n) {
    r.per_n.push_back(term);
    r.total += term;
    if (n == q.n_max) break;
    // term(n+1) = term(n) * |P||O| * C(n+1)/C(n), with C(n+1)/C(n) = 2(2n+1)/(n+2).
    term *= po * 2 * (2 * BigInt(n) + 1);
    term /= n + 2;
  }
  return r;
}

SearchSpaceReport count_trees_auto(std::uint64_t primitive_count, std::uint64_t operator_count,
                                   std::optional<unsigned> n_max_override) {
  NBounds b = n_bounds(primitive_count);
  if (n_max_override) b.n_max = *n_max_override;
  SearchSpaceReport r = count_trees_range({primitive_count, operator_count, b.n_min, b.n_max});
  r.heuristic = b;
  return r;
}

nlohmann::json report_to_json(const SearchSpaceReport& report) {
  nlohmann::json per_n = nlohmann::json::array();
  for (std::size_t k = 0; k < report.per_n.size(); ++k)
    per_n.push_back({{"n", report.query.n_min + k}, {"count", report.per_n[k].str()}});
  nlohmann::json doc{{"primitive_count", report.query.primitive_count},
                     {"operator_count", report.query.operator_count},
                     {"n_min", report.query.n_min},
                     {"n_max", report.query.n_max},
                     {"per_n", std::move(per_n)},
                     {"total", report.total.str()}};
  if (report.heuristic) {
    doc["heuristic"] = {{"n_min", report.heuristic->n_min},
                        {"h_max", report.heuristic->h_max},
                        {"n_max", report.heuristic->n_max},
                        {"n_max_rule", "2^ceil(h_max) - 1"}};
  }
  return doc;
}

EnumerationCapExceeded::EnumerationCapExceeded(BigInt requested)
    : std::runtime_error("enumeration would produce " + requested.str() +
                         " trees, above the configured cap"),
      requested_(std::move(requested)) {}

namespace {

// A tree shape as its preorder walk: true for an inner node, false for a leaf.
using TreeShape = std::vector<bool>;

// Memoized per n; deque growth keeps earlier levels' addresses stable.
const std::vector<TreeShape>& shapes(unsigned n) {
  static std::mutex lock;
  static std::deque<std::vector<TreeShape>> memo{{TreeShape{false}}};
  const std::scoped_lock guard(lock);
  while (memo.size() <= n) {
    const unsigned m = static_cast<unsigned>(memo.size());
    std::vector<TreeShape> level;
    for (unsigned left = 0; left < m; ++left) {
      for (const TreeShape& l : memo[left]) {
        for (const TreeShape& r : memo[m - 1 - left]) {
          TreeShape s{true};
          s.insert(s.end(), l.begin(), l.end());
          s.insert(s.end(), r.begin(), r.end());
          level.push_back(std::move(s));
        }
      }
    }
    memo.push_back(std::move(level));
  }
  return memo[n];
}

struct Labeler {
  const TreeShape& shape;
  const std::vector<CsgExpr>& leaves;  // one leaf expression per primitive
  const std::vector<CsgOp>& ops;
  const std::vector<std::size_t>& op_digits;
  const std::vector<std::size_t>& leaf_digits;
  std::size_t pos = 0;
  std::size_t inner = 0;
  std::size_t leaf = 0;

  CsgExpr build() {
    if (!shape[pos++]) return leaves[leaf_digits[leaf++]];
    const CsgOp op = ops[op_digits[inner++]];
    CsgExpr l = build();
    CsgExpr r = build();
    return CsgExpr::binary(op, std::move(l), std::move(r));
  }
};

// Odometer with the last digit fastest. Returns false after wrapping.
bool advance(std::vector<std::size_t>& digits, std::size_t base) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

std::uint64_t enumerate_trees(const std::vector<std::string>& leaf_ids, const OperatorSet& ops,
                              unsigned n, const TreeVisitor& visit, const BigInt& cap) {
  if (leaf_ids.empty()) throw std::invalid_argument("need at least one primitive");
  const BigInt requested = count_trees(leaf_ids.size(), ops.size(), n);
  if (requested > cap) throw EnumerationCapExceeded(requested);

  std::vector<CsgExpr> leaves;
  for (const std::string& id : leaf_ids) leaves.push_back(CsgExpr::leaf(id));

  std::uint64_t yielded = 0;
  for (const TreeShape& shape : shapes(n)) {
    std::vector<std::size_t> op_digits(n, 0);
    do {
      std::vector<std::size_t> leaf_digits(n + 1, 0);
      do {
        Labeler labeler{shape, leaves, ops.ops(), op_digits, leaf_digits};
        ++yielded;
        if (!visit(labeler.build())) return yielded;
      } while (advance(leaf_digits, leaves.size()));
    } while (advance(op_digits, ops.size()));
  }
  return yielded;
}

std::uint64_t enumerate_trees(const PrimitiveSet& ps, const OperatorSet& ops, unsigned n,
                              const TreeVisitor& visit, const BigInt& cap) {
  return enumerate_trees(ps.ids(), ops, n, visit, cap);
}

std::vector<CsgExpr> collect_trees(const std::vector<std::string>& leaf_ids,
                                   const OperatorSet& ops, unsigned n, const BigInt& cap) {
  std::vector<CsgExpr> out;
  enumerate_trees(leaf_ids, ops, n,
                  [&out](const CsgExpr& e) {
                    out.push_back(e);
                    return true;
                  },
                  cap);
  return out;
}

ExhaustiveResult exhaustive_search(const MembershipTable& table,
                                   std::span<const MembershipLabel> target, const OperatorSet& ops,
                                   unsigned n_min, unsigned n_max, const BigInt& cap) {
  if (target.size() != table.point_count())
    throw std::invalid_argument("target labels do not match the table");
  if (n_min > n_max) throw std::invalid_argument("n_min must not exceed n_max");
  // Checked up front so a cap violation never returns a partial answer.
  for (unsigned n = n_min; n <= n_max; ++n) {
    const BigInt c = count_trees(table.primitive_count(), ops.size(), n);
    if (c > cap) throw EnumerationCapExceeded(c);
  }

  ExhaustiveResult result;
  for (unsigned n = n_min; n <= n_max; ++n) {
    enumerate_trees(table.primitives(), ops, n, [&](const CsgExpr& candidate) {
      ++result.inspected;
      const auto labels = evaluate(candidate, table);
      if (compare_labels(labels, target).equivalent()) {
        if (!result.best) {
          result.best = candidate;
          result.n = n;
        }
        ++result.matching;
      }
      return true;
    }, cap);
    if (result.best) break;
  }
  return result;
}

ExhaustiveResult exhaustive_search(const PrimitiveSet& ps, const OperatorSet& ops,
                                   const TargetSolid& target, unsigned n_min, unsigned n_max,
                                   const SamplePlan& plan, std::uint64_t seed, double epsilon,
                                   const BigInt& cap) {
  const MembershipTable table = MembershipTable::sample(ps, plan, seed, epsilon);
  const auto labels = target.labels_on(table, plan, seed);
  return exhaustive_search(table, labels, ops, n_min, n_max, cap);
}

}  // namespace csgsearch
