// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <random>
#include <set>

#include "csgsearch/dnf.hpp"
#include "csgsearch/intersection_graph.hpp"
#include "csgsearch/scene_gen.hpp"
#include "csgsearch/target.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace csgsearch;
using namespace csgsearch::testing;

namespace {

struct Fixture {
  PrimitiveSet ps;
  MembershipTable table;
  IntersectionGraph graph;
  ProductSet products;

  Fixture(PrimitiveSet p, const SamplePlan& plan, double eps = 1e-4)
      : ps(std::move(p)), table(MembershipTable::sample(ps, plan, 1, eps)), graph(build_graph(table)),
        products(enumerate_products(table, graph)) {}

  std::vector<std::string> signatures() const {
    std::vector<std::string> out;
    for (const auto& p : products.products) out.push_back(signature_string(p.signature, ps.size()));
    return out;
  }
  std::map<std::string, ProductStatus> classify(const CsgExpr& target) {
    classify_products(products, table, evaluate(target, table));
    std::map<std::string, ProductStatus> out;
    for (const auto& p : products.products) out[signature_string(p.signature, ps.size())] = p.status;
    return out;
  }
};

const CsgExpr A = CsgExpr::leaf("A");
const CsgExpr B = CsgExpr::leaf("B");
const SamplePlan kPairPlan{{{-2, -2, -2}, {5, 2, 2}}, 40, 0.0, 3};

std::vector<Signature> sigs(std::initializer_list<const char*> texts) {
  std::vector<Signature> out;
  for (const char* t : texts) out.push_back(parse_signature(t));
  return out;
}

}  // namespace

TEST_CASE("signature text form") {
  CHECK(signature_string(1, 2) == "10");
  CHECK(parse_signature("01") == 2);
  CHECK(parse_signature("110") == 3);
  CHECK_THROWS_AS(parse_signature("1x"), DnfError);
  CHECK(Cube{1, 1}.to_string(2) == "1-");
}

TEST_CASE("enumerate_products examples") {
  Fixture disjoint(sphere_pair(3.0), kPairPlan);
  CHECK(disjoint.signatures() == std::vector<std::string>{"10", "01"});
  Fixture overlap(sphere_pair(1.5), kPairPlan);
  CHECK(overlap.signatures() == std::vector<std::string>{"10", "01", "11"});
  const Scene fig2 = load_scene(data_path("scenes/fig2.json"));
  Fixture golden(fig2.primitives, fig2.plan(256), fig2.default_epsilon());
  CHECK(golden.products.nf() == 15);
}

TEST_CASE("products partition the non-Surface samples") {
  const GeneratedScene g = random_scene(5, 3, 21);
  Fixture f(g.scene.primitives, g.scene.plan(32), g.scene.default_epsilon());
  std::size_t counted = 0, expected = 0;
  for (const auto& p : f.products.products) counted += p.samples;
  for (std::size_t i = 0; i < f.table.point_count(); ++i) {
    const auto s = point_signature(f.table, i);
    if (s && *s != 0) ++expected;
    if (s && *s != 0) {
      const auto it = std::find_if(f.products.products.begin(), f.products.products.end(),
                                   [&](const auto& p) { return p.signature == *s; });
      CHECK(it != f.products.products.end());
    }
  }
  CHECK(counted == expected);
  CHECK(f.products.nf() >= g.scene.primitives.size());
  CHECK(f.products.nf() <= (std::size_t{1} << g.scene.primitives.size()) - 1);
}

TEST_CASE("classify_products examples") {
  {
    Fixture single(PrimitiveSet({sphere("A", {0, 0, 0}, 1)}), plan3(-2, 2, 20));
    const auto st = single.classify(A);
    CHECK(st.size() == 1);
    CHECK(st.at("1") == ProductStatus::InsideTarget);
  }
  {
    Fixture disjoint(sphere_pair(3.0), kPairPlan);
    const auto st = disjoint.classify(make_union(A, B));
    CHECK(st.at("10") == ProductStatus::InsideTarget);
    CHECK(st.at("01") == ProductStatus::InsideTarget);
  }
  {
    Fixture overlap(sphere_pair(1.5), kPairPlan);
    const auto st = overlap.classify(make_difference(A, B));
    CHECK(st.at("10") == ProductStatus::InsideTarget);
    CHECK(st.at("11") == ProductStatus::OutsideTarget);
    CHECK(st.at("01") == ProductStatus::OutsideTarget);
  }
  Fixture overlap(sphere_pair(1.5), kPairPlan);
  CHECK_THROWS_AS(classify_products(overlap.products, overlap.table, evaluate(A, overlap.table), 0.5), DnfError);
}

TEST_CASE("mixed products and tau") {
  // The target is a sphere that no product boundary follows.
  Fixture f(sphere_pair(1.5), kPairPlan);
  const PrimitiveSet with_c({sphere("A", {0, 0, 0}, 1), sphere("B", {1.5, 0, 0}, 1), sphere("C", {0.75, 0, 0}, 0.9)});
  const MembershipTable tc = MembershipTable::sample(with_c, kPairPlan, 1, 1e-4);
  const auto target = evaluate(CsgExpr::leaf("C"), tc);
  classify_products(f.products, f.table, target, 1.0);
  CHECK(count_status(f.products, ProductStatus::Mixed) > 0);
  classify_products(f.products, f.table, target, 0.6);
  const std::size_t mixed_lenient = count_status(f.products, ProductStatus::Mixed);
  ProductSet copy = f.products;
  CHECK(resolve_mixed_by_majority(copy) == mixed_lenient);
  CHECK(count_status(copy, ProductStatus::Mixed) == 0);
}

TEST_CASE("build_dnf examples") {
  ProductSet one{{"A", "B"}, {{parse_signature("11"), ProductStatus::InsideTarget}}, 0, 0, 0};
  CHECK(serialize(build_dnf(one)) == "(inter A B)");
  CHECK(serialize(product_clause(parse_signature("01"), {"A", "B"})) == "(diff B A)");
  CHECK(build_dnf(ProductSet{{"A"}, {}, 0, 0, 0}).is_empty());

  Fixture disjoint(sphere_pair(3.0), kPairPlan);
  disjoint.classify(make_union(A, B));
  const CsgExpr dnf = build_dnf(disjoint.products);
  CHECK(serialize(dnf) == "(union (diff A B) (diff B A))");
  CHECK(compare_labels(evaluate(dnf, disjoint.table), evaluate(make_union(A, B), disjoint.table)).equivalent());

  const GeneratedScene g = fig2_scene();
  Fixture golden(g.scene.primitives, g.scene.plan(256), g.scene.default_epsilon());
  golden.classify(g.truth);
  const auto target = evaluate(g.truth, golden.table);
  const CsgExpr full = build_dnf(golden.products);
  const CsgExpr minimized = minimize_products(golden.products).expression;
  CHECK(compare_labels(evaluate(full, golden.table), target).equivalent());
  CHECK(compare_labels(evaluate(minimized, golden.table), target).equivalent());
  CHECK(size_metrics(minimized).leaf_count <= size_metrics(full).leaf_count);
}

TEST_CASE("prime implicant examples") {
  {
    const auto m = minimize(2, sigs({"11", "10"}));
    REQUIRE(m.primes.size() == 1);
    CHECK(m.primes[0].to_string(2) == "1-");
    CHECK(cover_expression(m.cover, {"A", "B"}) == A);
  }
  {
    const auto m = minimize(2, sigs({"10", "01"}));
    CHECK(m.primes.size() == 2);
    CHECK(m.cover.size() == 2);
    std::set<std::string> text;
    for (const Cube& c : m.primes) text.insert(c.to_string(2));
    CHECK(text == std::set<std::string>{"10", "01"});
  }
  {
    const auto m = minimize(3, sigs({"111", "110", "101", "100"}));
    REQUIRE(m.primes.size() == 1);
    CHECK(m.primes[0].to_string(3) == "1--");
    CHECK(cover_expression(m.cover, {"A", "B", "C"}) == A);
  }
  {
    // Don't-cares let "10" grow into "1-".
    const auto m = minimize(2, sigs({"10"}), sigs({"11"}));
    REQUIRE(m.cover.size() == 1);
    CHECK(m.cover[0].to_string(2) == "1-");
  }
}

TEST_CASE("primes are maximal and exact on random functions up to 10 variables") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t bits = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    const Signature universe = Signature{1} << bits;
    std::vector<Signature> on, dc;
    std::vector<int> kind(universe, 0);  // 0 off, 1 on, 2 don't-care
    for (Signature s = 0; s < universe; ++s) {
      const double r = uniform(rng, 0, 1);
      kind[s] = r < 0.35 ? 1 : r < 0.45 ? 2 : 0;
      if (kind[s] == 1) on.push_back(s);
      if (kind[s] == 2) dc.push_back(s);
    }
    if (on.empty()) continue;
    const auto primes = prime_implicants(bits, on, dc);
    for (const Cube& c : primes) {
      bool covers_on = false;
      for (Signature s : Implicant{c}.covered(bits)) {
        CHECK(kind[s] != 0);
        covers_on = covers_on || kind[s] == 1;
      }
      CHECK(covers_on);
      for (std::size_t b = 0; b < bits; ++b) {
        if (!(c.care >> b & 1)) continue;
        const Cube grown{c.value & ~(Signature{1} << b), c.care & ~(Signature{1} << b)};
        const auto cov = Implicant{grown}.covered(bits);
        CHECK(std::any_of(cov.begin(), cov.end(), [&](Signature s) { return kind[s] == 0; }));
      }
    }
    const Minimization m = minimize(bits, on, dc);
    for (Signature s = 0; s < universe; ++s) {
      const bool covered = std::any_of(m.cover.begin(), m.cover.end(), [&](const Cube& c) { return c.covers(s); });
      if (kind[s] == 1) CHECK(covered);
      if (kind[s] == 0) CHECK_FALSE(covered);
    }
  }
}

TEST_CASE("minimization limits") {
  ProductSet wide;
  for (std::size_t i = 0; i <= kMinimizeMaxBits; ++i) wide.primitive_ids.push_back("P" + std::to_string(i));
  wide.products.push_back({1, ProductStatus::InsideTarget});
  CHECK_THROWS_AS(minimize_products(wide), DnfError);
}
