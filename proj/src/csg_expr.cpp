// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "csgsearch/csg_expr.hpp"

#include <algorithm>
#include <cctype>

namespace csgsearch {

struct CsgExpr::Node {
  Kind kind;
  std::string id;
  std::vector<CsgExpr> children;
};

namespace {

CsgExpr::Kind kind_of(CsgOp op) {
  switch (op) {
    case CsgOp::Union: return CsgExpr::Kind::Union;
    case CsgOp::Intersection: return CsgExpr::Kind::Intersection;
    case CsgOp::Difference: return CsgExpr::Kind::Difference;
    case CsgOp::Complement: return CsgExpr::Kind::Complement;
  }
  return CsgExpr::Kind::Union;
}

}  // namespace

const char* op_keyword(CsgOp op) {
  switch (op) {
    case CsgOp::Union: return "union";
    case CsgOp::Intersection: return "inter";
    case CsgOp::Difference: return "diff";
    case CsgOp::Complement: return "compl";
  }
  return "?";
}

CsgExpr CsgExpr::leaf(std::string id) {
  return CsgExpr(std::make_shared<const Node>(Node{Kind::Leaf, std::move(id), {}}));
}

CsgExpr CsgExpr::empty() {
  static const CsgExpr e(std::make_shared<const Node>(Node{Kind::Empty, {}, {}}));
  return e;
}

CsgExpr CsgExpr::binary(CsgOp op, CsgExpr left, CsgExpr right) {
  if (op == CsgOp::Complement) throw ExprError("complement is unary");
  return CsgExpr(
      std::make_shared<const Node>(Node{kind_of(op), {}, {std::move(left), std::move(right)}}));
}

CsgExpr CsgExpr::complement(CsgExpr child) {
  return CsgExpr(std::make_shared<const Node>(Node{Kind::Complement, {}, {std::move(child)}}));
}

CsgExpr::Kind CsgExpr::kind() const { return node_->kind; }

bool CsgExpr::is_binary() const {
  const Kind k = kind();
  return k == Kind::Union || k == Kind::Intersection || k == Kind::Difference;
}

CsgOp CsgExpr::op() const {
  switch (kind()) {
    case Kind::Union: return CsgOp::Union;
    case Kind::Intersection: return CsgOp::Intersection;
    case Kind::Difference: return CsgOp::Difference;
    case Kind::Complement: return CsgOp::Complement;
    default: throw ExprError("leaf has no operator");
  }
}

const std::string& CsgExpr::id() const { return node_->id; }
const CsgExpr& CsgExpr::left() const { return node_->children.at(0); }
const CsgExpr& CsgExpr::right() const { return node_->children.at(1); }

bool operator==(const CsgExpr& a, const CsgExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.node_->id != b.node_->id) return false;
  return a.node_->children == b.node_->children;
}

CsgExpr make_union(CsgExpr a, CsgExpr b) {
  return CsgExpr::binary(CsgOp::Union, std::move(a), std::move(b));
}
CsgExpr make_intersection(CsgExpr a, CsgExpr b) {
  return CsgExpr::binary(CsgOp::Intersection, std::move(a), std::move(b));
}
CsgExpr make_difference(CsgExpr a, CsgExpr b) {
  return CsgExpr::binary(CsgOp::Difference, std::move(a), std::move(b));
}

OperatorSet::OperatorSet() : ops_{CsgOp::Union, CsgOp::Intersection, CsgOp::Difference} {}

OperatorSet::OperatorSet(std::vector<CsgOp> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw ExprError("operator set must be non-empty");
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i] == CsgOp::Complement) throw ExprError("operator set admits binary operators only");
    for (std::size_t j = 0; j < i; ++j)
      if (ops_[i] == ops_[j]) throw ExprError("duplicate operator in operator set");
  }
}

SizeMetrics size_metrics(const CsgExpr& e) {
  if (e.is_leaf() || e.is_empty()) return {0, 1, 0};
  if (e.kind() == CsgExpr::Kind::Complement) {
    SizeMetrics c = size_metrics(e.child());
    return {c.inner_count + 1, c.leaf_count, c.height + 1};
  }
  const SizeMetrics l = size_metrics(e.left());
  const SizeMetrics r = size_metrics(e.right());
  return {l.inner_count + r.inner_count + 1, l.leaf_count + r.leaf_count,
          std::max(l.height, r.height) + 1};
}

namespace {

void count_leaves(const CsgExpr& e, std::map<std::string, std::size_t>& out) {
  switch (e.kind()) {
    case CsgExpr::Kind::Leaf: ++out[e.id()]; return;
    case CsgExpr::Kind::Empty: return;
    case CsgExpr::Kind::Complement: count_leaves(e.child(), out); return;
    default:
      count_leaves(e.left(), out);
      count_leaves(e.right(), out);
  }
}

void write(const CsgExpr& e, std::string& out) {
  switch (e.kind()) {
    case CsgExpr::Kind::Leaf: out += e.id(); return;
    case CsgExpr::Kind::Empty: out += "empty"; return;
    case CsgExpr::Kind::Complement:
      out += "(compl ";
      write(e.child(), out);
      out += ')';
      return;
    default:
      out += '(';
      out += op_keyword(e.op());
      out += ' ';
      write(e.left(), out);
      out += ' ';
      write(e.right(), out);
      out += ')';
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  CsgExpr parse_all() {
    CsgExpr e = parse();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_), pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool is_atom_char(char c) {
    return c != '(' && c != ')' && !std::isspace(static_cast<unsigned char>(c));
  }

  std::string atom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_atom_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  CsgExpr parse() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] != '(') {
      const std::size_t start = pos_;
      std::string name = atom();
      if (name == "empty") return CsgExpr::empty();
      if (!is_valid_primitive_id(name)) {
        pos_ = start;
        fail("invalid primitive id '" + name + "'");
      }
      return CsgExpr::leaf(std::move(name));
    }
    ++pos_;
    skip_space();
    const std::size_t op_pos = pos_;
    const std::string op = atom();
    CsgExpr result = CsgExpr::empty();
    if (op == "compl") {
      result = CsgExpr::complement(parse());
    } else {
      CsgOp bin;
      if (op == "union") bin = CsgOp::Union;
      else if (op == "inter") bin = CsgOp::Intersection;
      else if (op == "diff") bin = CsgOp::Difference;
      else {
        pos_ = op_pos;
        fail(op.empty() ? std::string("missing operator") : "unknown operator '" + op + "'");
      }
      CsgExpr a = parse();
      CsgExpr b = parse();
      result = CsgExpr::binary(bin, std::move(a), std::move(b));
    }
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
    ++pos_;
    return result;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::map<std::string, std::size_t> leaf_occurrences(const CsgExpr& e) {
  std::map<std::string, std::size_t> out;
  count_leaves(e, out);
  return out;
}

ParseError::ParseError(std::string message, std::size_t position)
    : ExprError(std::move(message)), position_(position) {}

std::string serialize(const CsgExpr& e) {
  std::string out;
  write(e, out);
  return out;
}

CsgExpr parse_expr(std::string_view text) { return Parser(text).parse_all(); }

nlohmann::json expr_to_json(const CsgExpr& e) {
  switch (e.kind()) {
    case CsgExpr::Kind::Leaf: return {{"leaf", e.id()}};
    case CsgExpr::Kind::Empty: return {{"empty", true}};
    case CsgExpr::Kind::Complement:
      return {{"op", "compl"}, {"children", nlohmann::json::array({expr_to_json(e.child())})}};
    default:
      return {{"op", op_keyword(e.op())},
              {"children", nlohmann::json::array({expr_to_json(e.left()), expr_to_json(e.right())})}};
  }
}

CsgExpr expr_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ExprError("expression node must be an object");
  if (j.contains("leaf")) {
    std::string id = j.at("leaf").get<std::string>();
    if (!is_valid_primitive_id(id)) throw ExprError("invalid primitive id '" + id + "'");
    return CsgExpr::leaf(std::move(id));
  }
  if (j.contains("empty")) return CsgExpr::empty();
  const std::string op = j.at("op").get<std::string>();
  const auto& children = j.at("children");
  if (op == "compl") {
    if (children.size() != 1) throw ExprError("compl takes one child");
    return CsgExpr::complement(expr_from_json(children[0]));
  }
  if (children.size() != 2) throw ExprError(op + " takes two children");
  CsgOp bin;
  if (op == "union") bin = CsgOp::Union;
  else if (op == "inter") bin = CsgOp::Intersection;
  else if (op == "diff") bin = CsgOp::Difference;
  else throw ExprError("unknown operator '" + op + "'");
  return CsgExpr::binary(bin, expr_from_json(children[0]), expr_from_json(children[1]));
}

void check_resolves(const CsgExpr& e, const PrimitiveSet& ps) {
  for (const auto& [id, _] : leaf_occurrences(e))
    if (!ps.index_of(id)) throw ExprError("unresolved primitive id '" + id + "'");
}

MembershipLabel complement_label(MembershipLabel a) {
  switch (a) {
    case MembershipLabel::Inside: return MembershipLabel::Outside;
    case MembershipLabel::Outside: return MembershipLabel::Inside;
    default: return MembershipLabel::Surface;
  }
}

MembershipLabel combine(CsgOp op, MembershipLabel a, MembershipLabel b) {
  using L = MembershipLabel;
  switch (op) {
    case CsgOp::Union:
      if (a == L::Inside || b == L::Inside) return L::Inside;
      if (a == L::Surface || b == L::Surface) return L::Surface;
      return L::Outside;
    case CsgOp::Intersection:
      if (a == L::Outside || b == L::Outside) return L::Outside;
      if (a == L::Surface || b == L::Surface) return L::Surface;
      return L::Inside;
    case CsgOp::Difference:
      return combine(CsgOp::Intersection, a, complement_label(b));
    case CsgOp::Complement:
      break;
  }
  throw ExprError("complement is unary");
}

MembershipLabel evaluate(const CsgExpr& e, const PrimitiveSet& ps, Vec3 x, double epsilon) {
  switch (e.kind()) {
    case CsgExpr::Kind::Leaf: {
      const auto idx = ps.index_of(e.id());
      if (!idx) throw ExprError("unresolved primitive id '" + e.id() + "'");
      return classify(ps[*idx], x, epsilon);
    }
    case CsgExpr::Kind::Empty: return MembershipLabel::Outside;
    case CsgExpr::Kind::Complement: return complement_label(evaluate(e.child(), ps, x, epsilon));
    default:
      return combine(e.op(), evaluate(e.left(), ps, x, epsilon),
                     evaluate(e.right(), ps, x, epsilon));
  }
}

std::vector<MembershipLabel> evaluate(const CsgExpr& e, const MembershipTable& table) {
  const std::size_t n = table.point_count();
  switch (e.kind()) {
    case CsgExpr::Kind::Leaf: {
      const auto idx = table.primitives().index_of(e.id());
      if (!idx) throw ExprError("unresolved primitive id '" + e.id() + "'");
      const auto col = table.column(*idx);
      return {col.begin(), col.end()};
    }
    case CsgExpr::Kind::Empty: return std::vector<MembershipLabel>(n, MembershipLabel::Outside);
    case CsgExpr::Kind::Complement: {
      auto v = evaluate(e.child(), table);
      for (auto& l : v) l = complement_label(l);
      return v;
    }
    default: {
      auto a = evaluate(e.left(), table);
      const auto b = evaluate(e.right(), table);
      const CsgOp op = e.op();
      for (std::size_t i = 0; i < n; ++i) a[i] = combine(op, a[i], b[i]);
      return a;
    }
  }
}

}  // namespace csgsearch
