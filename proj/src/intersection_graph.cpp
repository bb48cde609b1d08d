// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "csgsearch/intersection_graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "csgsearch/scene.hpp"

namespace csgsearch {

IntersectionGraph::IntersectionGraph(std::vector<std::string> vertices)
    : vertices_(std::move(vertices)), adjacency_(vertices_.size() * vertices_.size(), 0) {}

bool IntersectionGraph::has_edge(std::size_t i, std::size_t j) const {
  return adjacency_.at(i * vertices_.size() + j) != 0;
}

void IntersectionGraph::add_edge(std::size_t i, std::size_t j, Vec3 witness) {
  if (i == j) throw std::invalid_argument("intersection graph has no self-loops");
  const std::size_t n = vertices_.size();
  adjacency_.at(i * n + j) = 1;
  adjacency_.at(j * n + i) = 1;
  witnesses_[key(i, j)] = witness;
}

Vec3 IntersectionGraph::witness(std::size_t i, std::size_t j) const {
  return witnesses_.at(key(i, j));
}

std::vector<std::pair<std::size_t, std::size_t>> IntersectionGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(witnesses_.size());
  for (const auto& [k, _] : witnesses_) out.push_back(k);
  return out;
}

IntersectionGraph build_graph(const MembershipTable& table, std::span<const std::uint8_t> region,
                              const IntersectionGraph* prior) {
  const PrimitiveSet& ps = table.primitives();
  IntersectionGraph g(ps.ids());
  if (prior != nullptr && prior->vertices() != g.vertices())
    throw std::invalid_argument("prior graph has different vertices");

  std::vector<Aabb> boxes;
  for (const Primitive& p : ps) boxes.push_back(p.bounding_box().inflated(table.epsilon()));

  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if (!boxes[i].overlaps(boxes[j])) {
        ++g.pruned_pairs;
        continue;
      }
      if (prior != nullptr && prior->has_edge(i, j)) {
        const Vec3 w = prior->witness(i, j);
        if (classify(ps[i], w, table.epsilon()) == MembershipLabel::Inside &&
            classify(ps[j], w, table.epsilon()) == MembershipLabel::Inside) {
          g.add_edge(i, j, w);
          ++g.witness_reuses;
          continue;
        }
      }
      ++g.pair_tests;
      const auto a = table.column(i);
      const auto b = table.column(j);
      for (std::size_t k = 0; k < table.point_count(); ++k) {
        if (a[k] == MembershipLabel::Inside && b[k] == MembershipLabel::Inside &&
            region_contains(region, k)) {
          g.add_edge(i, j, table.points()[k]);
          break;
        }
      }
    }
  }
  return g;
}

IntersectionGraph build_graph(const PrimitiveSet& ps, const SamplePlan& plan, std::uint64_t seed,
                              double epsilon, const IntersectionGraph* prior) {
  return build_graph(MembershipTable::sample(ps, plan, seed, epsilon), {}, prior);
}

ComponentPartition connected_components(const IntersectionGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [a, b] : g.edges()) {
    const std::size_t ra = find(a);
    const std::size_t rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  ComponentPartition parts;
  std::vector<std::size_t> part_of_root(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = find(v);
    if (part_of_root[r] == n) {
      part_of_root[r] = parts.size();
      parts.emplace_back();
    }
    parts[part_of_root[r]].push_back(v);
  }
  return parts;
}

BigInt nf_bounds(std::uint64_t primitive_count, EdgeInfo info) {
  if (primitive_count < 1) throw std::invalid_argument("primitive count must be >= 1");
  if (info == EdgeInfo::Disjoint) return primitive_count;
  return boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(primitive_count)) - 1;
}

std::string to_dot(const IntersectionGraph& g) {
  std::ostringstream out;
  out << "graph intersection {\n";
  for (const std::string& v : g.vertices()) out << "  \"" << v << "\";\n";
  for (const auto& [a, b] : g.edges())
    out << "  \"" << g.vertices()[a] << "\" -- \"" << g.vertices()[b] << "\";\n";
  out << "}\n";
  return out.str();
}

nlohmann::json graph_to_json(const IntersectionGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& [a, b] : g.edges()) {
    edges.push_back({g.vertices()[a], g.vertices()[b]});
    witnesses.push_back(vec_to_json(g.witness(a, b)));
  }
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& part : connected_components(g)) {
    nlohmann::json ids = nlohmann::json::array();
    for (std::size_t v : part) ids.push_back(g.vertices()[v]);
    comps.push_back(std::move(ids));
  }
  return {{"vertices", g.vertices()},
          {"edges", std::move(edges)},
          {"witnesses", std::move(witnesses)},
          {"components", std::move(comps)},
          {"pair_tests", g.pair_tests},
          {"pruned_pairs", g.pruned_pairs}};
}

}  // namespace csgsearch
