// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "csgsearch/cli.hpp"
#include "csgsearch/decomposition.hpp"
#include "csgsearch/dnf.hpp"
#include "csgsearch/intersection_graph.hpp"
#include "csgsearch/scene_gen.hpp"
#include "csgsearch/search_space.hpp"
#include "csgsearch/target.hpp"

using namespace csgsearch;

namespace {

std::string data_path(const std::string& rel) { return std::string(CSGSEARCH_DATA_DIR) + "/" + rel; }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Criterion {
  int number;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::vector<std::string> ids_of(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::string(1, static_cast<char>('A' + i)));
  return ids;
}

OperatorSet first_ops(std::size_t n) {
  const std::vector<CsgOp> all{CsgOp::Union, CsgOp::Intersection, CsgOp::Difference};
  return OperatorSet({all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n)});
}

std::uint64_t stream_length(std::size_t p, std::size_t o, unsigned n) {
  std::uint64_t count = 0;
  enumerate_trees(ids_of(p), first_ops(o), n, [&](const CsgExpr&) {
    ++count;
    return true;
  });
  return count;
}

// Catalan numbers from the convolution recurrence alone.
std::vector<BigInt> catalan_by_recurrence(unsigned up_to) {
  std::vector<BigInt> c{1};
  for (unsigned n = 0; n < up_to; ++n) {
    BigInt sum = 0;
    for (unsigned k = 0; k <= n; ++k) sum += c[k] * c[n - k];
    c.push_back(sum);
  }
  return c;
}

Outcome criterion_catalan() {
  Outcome o;
  const BigInt fig1[] = {1, 1, 2, 5};
  for (unsigned n = 0; n < 4; ++n) o.require(catalan(n) == fig1[n], "catalan(" + std::to_string(n) + ")");
  const auto rec = catalan_by_recurrence(8);
  for (unsigned n = 0; n <= 8; ++n) {
    const std::uint64_t streamed = stream_length(1, 1, n);
    o.require(BigInt(streamed) == rec[n], "shape stream length at n=" + std::to_string(n));
    o.require(catalan(n) == rec[n], "catalan vs recurrence at n=" + std::to_string(n));
  }
  o.require(rec[8] == 1430, "C(8)");
  if (o.pass) o.detail = "shapes 1,1,2,5 for n=0..3; streamed C(8)=1430";
  return o;
}

Outcome criterion_stream_lengths() {
  Outcome o;
  std::size_t cases = 0;
  for (std::size_t p = 1; p <= 3; ++p)
    for (std::size_t ops = 1; ops <= 3; ++ops)
      for (unsigned n = 0; n <= 4; ++n, ++cases)
        o.require(BigInt(stream_length(p, ops, n)) == count_trees(p, ops, n),
                  "P=" + std::to_string(p) + " O=" + std::to_string(ops) + " n=" + std::to_string(n));
  if (o.pass) o.detail = std::to_string(cases) + " (|P|,|O|,n) cases equal";
  return o;
}

Outcome criterion_heuristic_range() {
  Outcome o;
  BigInt previous = 0;
  std::string totals;
  for (std::uint64_t p = 1; p <= 8; ++p) {
    const NBounds nb = n_bounds(p);
    o.require(nb.n_min == p - 1, "n_min for |P|=" + std::to_string(p));
    const SearchSpaceReport r = count_trees_range({p, 3, nb.n_min, nb.n_max});
    // Independent evaluation of the per-n terms from factorials.
    BigInt expected = 0;
    for (unsigned n = nb.n_min; n <= nb.n_max; ++n) {
      BigInt num = 1, den = 1;
      for (unsigned k = n + 2; k <= 2 * n; ++k) num *= k;
      for (unsigned k = 2; k <= n; ++k) den *= k;
      expected += boost::multiprecision::pow(BigInt(p), n + 1) * boost::multiprecision::pow(BigInt(3), n) * (num / den);
    }
    o.require(r.total == expected, "total for |P|=" + std::to_string(p));
    o.require(r.total > previous, "totals not increasing at |P|=" + std::to_string(p));
    previous = r.total;
    totals = std::to_string(r.total.str().size());
  }
  o.require(previous > BigInt(std::numeric_limits<std::uint64_t>::max()), "|P|=8 total fits in 64 bits");
  if (o.pass) o.detail = "n_min=|P|-1, totals strictly increasing, |P|=8 total has " + totals + " digits";
  return o;
}

std::size_t measured_nf(const std::string& scene_file, int resolution) {
  const Scene s = load_scene(data_path(scene_file));
  const MembershipTable table = MembershipTable::sample(s.primitives, s.plan(resolution), 1, s.default_epsilon());
  return enumerate_products(table, build_graph(table)).nf();
}

Outcome criterion_nf_bounds() {
  Outcome o;
  const std::size_t disjoint = measured_nf("scenes/disjoint6.json", 64);
  const std::size_t overlap = measured_nf("scenes/overlap3.json", 64);
  o.require(disjoint == 6, "disjoint6 n_f=" + std::to_string(disjoint));
  o.require(overlap == 7, "overlap3 n_f=" + std::to_string(overlap));
  o.require(nf_bounds(6, EdgeInfo::Disjoint) == 6 && nf_bounds(3, EdgeInfo::FullyConnected) == 7, "nf_bounds");
  if (o.pass) o.detail = "disjoint6 n_f=6, overlap3 n_f=7 at 64^3";
  return o;
}

Outcome criterion_golden_scene() {
  Outcome o;
  std::ifstream in(data_path("golden/fig2_adjacency.json"));
  const nlohmann::json golden = nlohmann::json::parse(in);
  o.require(golden["nf"] == 15, "oracle n_f");

  const Scene s = load_scene(data_path("scenes/fig2.json"));
  const MembershipTable table = MembershipTable::sample(s.primitives, s.plan(256), 1, s.default_epsilon());
  const ProductSet products = enumerate_products(table, build_graph(table));
  std::vector<std::string> measured;
  for (const auto& p : products.products) measured.push_back(signature_string(p.signature, s.primitives.size()));
  o.require(measured == golden["products"].get<std::vector<std::string>>(), "products differ from the oracle");

  std::set<std::string> oracle_dominant;
  for (const auto& id : golden["dominates_S"]) oracle_dominant.insert(id.get<std::string>());
  for (const auto& id : golden["dominates_complement"]) oracle_dominant.insert(id.get<std::string>());
  o.require(oracle_dominant.size() >= 2, "fewer than two dominant primitives");

  std::ostringstream out, err;
  const int code = run_cli({"extract", "--scene", data_path("scenes/fig2.json"), "--truth",
                            data_path("scenes/fig2.csg"), "--strategy", "decompose", "--json"},
                           out, err);
  o.require(code == 0, "extract exit code " + std::to_string(code) + ": " + err.str());
  if (code != 0) return o;
  const nlohmann::json doc = nlohmann::json::parse(out.str());
  const double match = doc["score"]["match_fraction"].get<double>();
  o.require(match == 1.0, "match fraction " + std::to_string(match));
  std::set<std::string> used_dominant;
  for (const auto& step : doc["trace"]["decomposition"]["steps"]) used_dominant.insert(step["id"].get<std::string>());
  o.require(used_dominant == oracle_dominant, "decomposition dominants differ from the oracle");
  const auto occ = leaf_occurrences(parse_expr(doc["expression"].get<std::string>()));
  for (const auto& id : oracle_dominant)
    o.require(occ.count(id) && occ.at(id) == 1, "dominant " + id + " not used exactly once");
  if (o.pass)
    o.detail = "n_f=15 (oracle), dominant {A, F} once each, match fraction 1.0: " + doc["expression"].get<std::string>();
  return o;
}

struct SweepScene {
  GeneratedScene scene;
  std::size_t visits = 0;
};

std::vector<SweepScene>& sweep_scenes() {
  static std::vector<SweepScene> scenes;
  return scenes;
}

Outcome criterion_dnf_sweep() {
  Outcome o;
  auto& scenes = sweep_scenes();
  scenes.clear();
  std::size_t decided = 0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const std::size_t count = 3 + k % 4;
    GeneratedScene g = random_scene(count, 3, 1000 + k);
    const double eps = g.scene.default_epsilon();
    const MembershipTable table = MembershipTable::sample(g.scene.primitives, g.scene.plan(64), k, eps);
    const auto target = evaluate(g.truth, table);
    ProductSet products = enumerate_products(table, build_graph(table));
    classify_products(products, table, target);
    const std::string tag = "seed " + std::to_string(1000 + k);
    o.require(count_status(products, ProductStatus::Mixed) == 0, tag + ": mixed products");
    const CsgExpr full = build_dnf(products);
    const CsgExpr minimized = minimize_products(products).expression;
    const LabelAgreement a = compare_labels(evaluate(full, table), target);
    const LabelAgreement b = compare_labels(evaluate(minimized, table), target);
    o.require(a.equivalent(), tag + ": DNF mismatches " + std::to_string(a.mismatched));
    o.require(b.equivalent(), tag + ": minimized mismatches " + std::to_string(b.mismatched));
    o.require(size_metrics(minimized).leaf_count <= size_metrics(full).leaf_count, tag + ": minimized larger");
    decided += a.matched;

    const Decomposition d = decompose(table, target);
    scenes.push_back({std::move(g), d.visit_count});
  }
  if (o.pass) o.detail = "50 scenes, " + std::to_string(decided) + " decided samples, all equivalent";
  return o;
}

Outcome criterion_visit_bound() {
  Outcome o;
  for (const SweepScene& s : sweep_scenes()) {
    const std::size_t p = s.scene.scene.primitives.size();
    o.require(s.visits <= (p * p + p) / 2, s.scene.name + ": visit_count " + std::to_string(s.visits));
  }
  o.require(sweep_scenes().size() == 50, "sweep scenes missing");
  const GeneratedScene chain = chain_scene(4);
  const Decomposition d = decompose(chain.scene.primitives, TargetSolid::oracle(chain.truth), chain.scene.plan(64), 1,
                                    chain.scene.default_epsilon());
  o.require(d.visit_count == (4 * 4 + 4) / 2, "chain visit_count " + std::to_string(d.visit_count));
  o.require(d.steps.size() == 4, "chain did not shed one dominant per iteration");
  if (o.pass) o.detail = "bound holds on 50 scenes; chain4 visit_count=10=(16+4)/2";
  return o;
}

// Exhaustive oracle: every one of the 3^k cubes, prime iff an implicant that
// stays an implicant under no single literal removal.
std::vector<Cube> brute_primes(std::size_t bits, std::uint32_t truth_table) {
  const Signature universe = Signature{1} << bits;
  auto implicant = [&](const Cube& c) {
    for (Signature s = 0; s < universe; ++s)
      if (c.covers(s) && !(truth_table >> s & 1)) return false;
    return true;
  };
  std::vector<Cube> primes;
  std::size_t cubes = 1;
  for (std::size_t i = 0; i < bits; ++i) cubes *= 3;
  for (std::size_t code = 0; code < cubes; ++code) {
    Cube c;
    std::size_t rest = code;
    for (std::size_t i = 0; i < bits; ++i, rest /= 3) {
      if (rest % 3 == 2) continue;
      c.care |= Signature{1} << i;
      if (rest % 3 == 1) c.value |= Signature{1} << i;
    }
    if (!implicant(c)) continue;
    bool prime = true;
    for (std::size_t i = 0; i < bits && prime; ++i) {
      if (!(c.care >> i & 1)) continue;
      const Signature bit = Signature{1} << i;
      prime = !implicant({c.value & ~bit, c.care & ~bit});
    }
    if (prime) primes.push_back(c);
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

Outcome criterion_prime_implicants() {
  Outcome o;
  std::size_t functions = 0;
  for (std::size_t bits = 1; bits <= 4; ++bits) {
    const Signature universe = Signature{1} << bits;
    const std::uint64_t count = std::uint64_t{1} << universe;
    for (std::uint64_t f = 0; f < count; ++f, ++functions) {
      std::vector<Signature> on;
      for (Signature s = 0; s < universe; ++s)
        if (f >> s & 1) on.push_back(s);
      const Minimization m = minimize(bits, on);
      const std::string tag = std::to_string(bits) + "-variable function " + std::to_string(f);
      o.require(m.primes == brute_primes(bits, static_cast<std::uint32_t>(f)), tag + ": prime set differs");
      o.require(m.optimal, tag + ": cover not exact");
      for (Signature s = 0; s < universe; ++s) {
        const bool covered = std::any_of(m.cover.begin(), m.cover.end(), [&](const Cube& c) { return c.covers(s); });
        o.require(covered == static_cast<bool>(f >> s & 1), tag + ": cover differs from the function");
      }
      if (!o.pass) return o;
    }
  }
  o.detail = std::to_string(functions) + " functions over 1..4 variables (all 65536 for 4)";
  return o;
}

Outcome criterion_exhaustive_search() {
  Outcome o;
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const CsgOp ops[] = {CsgOp::Union, CsgOp::Intersection, CsgOp::Difference};
  std::string found;
  for (int k = 0; k < 10; ++k) {
    const double ra = 0.8 + 0.6 * u(rng), rb = 0.8 + 0.6 * u(rng);
    const double gap = 0.5 * (ra + rb) + 0.3 * u(rng);
    const PrimitiveSet ps({{"A", Sphere{{0, 0, 0}, ra}}, {"B", Sphere{{gap, 0.3 * u(rng), 0}, rb}}});
    const Scene scene{3, {{-2, -2, -2}, {gap + 2, 2, 2}}, ps};
    const CsgOp op = ops[k % 3];
    const CsgExpr truth = k % 2 == 0 ? CsgExpr::binary(op, CsgExpr::leaf("A"), CsgExpr::leaf("B"))
                                     : CsgExpr::binary(op, CsgExpr::leaf("B"), CsgExpr::leaf("A"));
    const SamplePlan plan = scene.plan(32);
    const double eps = scene.default_epsilon();
    const ExhaustiveResult r =
        exhaustive_search(ps, OperatorSet(), TargetSolid::oracle(truth), 1, 1, plan, 7, eps);
    const std::string tag = "scene " + std::to_string(k) + " " + serialize(truth);
    o.require(r.inspected == 12, tag + ": inspected " + std::to_string(r.inspected));
    o.require(r.best.has_value(), tag + ": no tree found");
    if (!r.best) continue;
    const MembershipTable fresh = MembershipTable::sample(ps, plan, 99, eps);
    o.require(compare_labels(evaluate(*r.best, fresh), evaluate(truth, fresh)).equivalent(),
              tag + ": result " + serialize(*r.best) + " not equivalent");
  }
  if (o.pass) o.detail = "10 scenes, 12 candidates each, all results grid-equivalent";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "catalan-shape-counts", 1.0, criterion_catalan},
      {2, "stream-length-equals-count", 30.0, criterion_stream_lengths},
      {3, "heuristic-range-counts", 60.0, criterion_heuristic_range},
      {4, "nf-bounds-committed-scenes", 10.0, criterion_nf_bounds},
      {5, "golden-scene-decompose", 30.0, criterion_golden_scene},
      {6, "dnf-soundness-sweep", 300.0, criterion_dnf_sweep},
      {7, "decomposition-visit-bound", 60.0, criterion_visit_bound},
      {8, "prime-implicant-correctness", 120.0, criterion_prime_implicants},
      {9, "exhaustive-search-sanity", 60.0, criterion_exhaustive_search},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.time_limit_s) {
      o.pass = false;
      o.detail = "took " + std::to_string(secs) + " s, limit " + std::to_string(c.time_limit_s) + " s";
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.number, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
