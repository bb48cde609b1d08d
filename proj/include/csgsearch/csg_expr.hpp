// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "csgsearch/geometry.hpp"
#include "csgsearch/membership.hpp"
#include "json.hpp"

namespace csgsearch {

enum class CsgOp : std::uint8_t { Union, Intersection, Difference, Complement };

/// Text keyword: union, inter, diff, compl.
const char* op_keyword(CsgOp op);

/// Immutable CSG tree with shared structure. Copies are cheap.
///
/// Besides primitive leaves there is an explicit empty-solid leaf, produced
/// when an extraction finds nothing inside the target. It prints as `empty`.
class CsgExpr {
 public:
  enum class Kind : std::uint8_t { Leaf, Empty, Union, Intersection, Difference, Complement };

  static CsgExpr leaf(std::string id);
  static CsgExpr empty();
  static CsgExpr binary(CsgOp op, CsgExpr left, CsgExpr right);
  static CsgExpr complement(CsgExpr child);

  Kind kind() const;
  bool is_leaf() const { return kind() == Kind::Leaf; }
  bool is_empty() const { return kind() == Kind::Empty; }
  bool is_binary() const;
  /// Operator of an inner node. Precondition: not a leaf.
  CsgOp op() const;

  const std::string& id() const;
  const CsgExpr& left() const;
  const CsgExpr& right() const;
  const CsgExpr& child() const { return left(); }

  friend bool operator==(const CsgExpr& a, const CsgExpr& b);

 private:
  struct Node;
  explicit CsgExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

CsgExpr make_union(CsgExpr a, CsgExpr b);
CsgExpr make_intersection(CsgExpr a, CsgExpr b);
CsgExpr make_difference(CsgExpr a, CsgExpr b);

/// Admissible binary operators for enumeration and search.
class OperatorSet {
 public:
  /// {union, intersection, difference}
  OperatorSet();
  explicit OperatorSet(std::vector<CsgOp> ops);

  const std::vector<CsgOp>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }

 private:
  std::vector<CsgOp> ops_;
};

struct SizeMetrics {
  std::size_t inner_count = 0;
  std::size_t leaf_count = 0;
  std::size_t height = 0;
  friend bool operator==(const SizeMetrics&, const SizeMetrics&) = default;
};

SizeMetrics size_metrics(const CsgExpr& e);

/// Occurrences of each primitive id among the leaves.
std::map<std::string, std::size_t> leaf_occurrences(const CsgExpr& e);

class ExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ExprError {
 public:
  ParseError(std::string message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Prefix form, e.g. "(union A (diff B C))".
std::string serialize(const CsgExpr& e);
/// Inverse of serialize. Throws ParseError carrying the byte offset of the
/// first syntax error.
CsgExpr parse_expr(std::string_view text);

nlohmann::json expr_to_json(const CsgExpr& e);
CsgExpr expr_from_json(const nlohmann::json& j);

/// Throws ExprError if some leaf id is not in `ps`.
void check_resolves(const CsgExpr& e, const PrimitiveSet& ps);

// Three-valued combination. A Surface operand yields Surface unless the other
// operand already decides the result.
MembershipLabel combine(CsgOp op, MembershipLabel a, MembershipLabel b);
MembershipLabel complement_label(MembershipLabel a);

MembershipLabel evaluate(const CsgExpr& e, const PrimitiveSet& ps, Vec3 x, double epsilon);

/// Labels for every point of the table, computed from its columns.
std::vector<MembershipLabel> evaluate(const CsgExpr& e, const MembershipTable& table);

}  // namespace csgsearch
