// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "csgsearch/membership.hpp"
#include "csgsearch/search_space.hpp"
#include "json.hpp"

namespace csgsearch {

/// Primitives as vertices, an edge wherever two primitives share interior
/// samples. Every edge keeps the sample point that proved it.
class IntersectionGraph {
 public:
  IntersectionGraph() = default;
  explicit IntersectionGraph(std::vector<std::string> vertices);

  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  std::size_t edge_count() const { return witnesses_.size(); }

  bool has_edge(std::size_t i, std::size_t j) const;
  void add_edge(std::size_t i, std::size_t j, Vec3 witness);
  /// Witness for edge (i, j). Precondition: has_edge(i, j).
  Vec3 witness(std::size_t i, std::size_t j) const;
  /// Edges as (i, j) with i < j, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  std::size_t pair_tests = 0;     // pairs whose samples were scanned
  std::size_t pruned_pairs = 0;   // pairs skipped by disjoint bounding boxes
  std::size_t witness_reuses = 0; // edges confirmed from a prior graph's witness

 private:
  static std::pair<std::size_t, std::size_t> key(std::size_t i, std::size_t j) {
    return i < j ? std::pair{i, j} : std::pair{j, i};
  }

  std::vector<std::string> vertices_;
  std::vector<std::uint8_t> adjacency_;
  std::map<std::pair<std::size_t, std::size_t>, Vec3> witnesses_;
};

/// Edge (i, j) iff some point of the region is Inside both primitives.
/// Pairs with disjoint bounding boxes are pruned without a scan. If `prior`
/// is given (same vertex ids), its witnesses are re-classified first and kept
/// when they still lie inside both primitives.
IntersectionGraph build_graph(const MembershipTable& table, std::span<const std::uint8_t> region = {},
                              const IntersectionGraph* prior = nullptr);

IntersectionGraph build_graph(const PrimitiveSet& ps, const SamplePlan& plan, std::uint64_t seed,
                              double epsilon, const IntersectionGraph* prior = nullptr);

/// Vertex-index parts, each sorted, ordered by smallest vertex index.
using ComponentPartition = std::vector<std::vector<std::size_t>>;

ComponentPartition connected_components(const IntersectionGraph& g);

enum class EdgeInfo { Disjoint, FullyConnected };

/// Extremes of the non-empty product count: |P| or 2^|P| - 1.
BigInt nf_bounds(std::uint64_t primitive_count, EdgeInfo info);

/// Undirected DOT with one line per vertex, then one per edge.
std::string to_dot(const IntersectionGraph& g);

/// {"vertices": [...], "edges": [[a, b], ...]} by id, plus witnesses.
nlohmann::json graph_to_json(const IntersectionGraph& g);

}  // namespace csgsearch
