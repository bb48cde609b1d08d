// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "csgsearch/dnf.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "csgsearch/scene.hpp"

namespace csgsearch {

namespace {

constexpr std::size_t kMaxCandidates = std::size_t{1} << 24;

Signature full_mask(std::size_t bits) {
  return bits == 64 ? ~Signature{0} : (Signature{1} << bits) - 1;
}

void require_bits(std::size_t bits) {
  if (bits == 0) throw DnfError("need at least one primitive");
  if (bits > kMaxSignatureBits)
    throw DnfError("fundamental products support at most " + std::to_string(kMaxSignatureBits) +
                   " primitives");
}

// Extends cliques in increasing vertex order so each is produced once.
void for_each_clique(const IntersectionGraph& g, Signature clique, std::size_t next,
                     std::size_t& budget, const std::function<void(Signature)>& fn) {
  for (std::size_t v = next; v < g.vertex_count(); ++v) {
    bool adjacent = true;
    for (Signature rest = clique; rest != 0 && adjacent; rest &= rest - 1)
      adjacent = g.has_edge(static_cast<std::size_t>(std::countr_zero(rest)), v);
    if (!adjacent) continue;
    if (budget-- == 0) throw DnfError("too many clique-compatible signatures to enumerate");
    const Signature grown = clique | (Signature{1} << v);
    fn(grown);
    for_each_clique(g, grown, v + 1, budget, fn);
  }
}

bool is_clique(const IntersectionGraph& g, Signature s) {
  for (Signature a = s; a != 0; a &= a - 1) {
    const auto i = static_cast<std::size_t>(std::countr_zero(a));
    for (Signature b = a & (a - 1); b != 0; b &= b - 1)
      if (!g.has_edge(i, static_cast<std::size_t>(std::countr_zero(b)))) return false;
  }
  return true;
}

CsgExpr literal_clause(Signature positive, Signature negative, const std::vector<std::string>& ids) {
  std::optional<CsgExpr> e;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!(positive >> i & 1)) continue;
    CsgExpr leaf = CsgExpr::leaf(ids[i]);
    e = e ? make_intersection(*e, leaf) : leaf;
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!(negative >> i & 1)) continue;
    CsgExpr leaf = CsgExpr::leaf(ids[i]);
    e = e ? make_difference(*e, leaf) : CsgExpr::complement(leaf);
  }
  return e ? *e : CsgExpr::complement(CsgExpr::empty());
}

CsgExpr union_all(const std::vector<CsgExpr>& clauses) {
  if (clauses.empty()) return CsgExpr::empty();
  CsgExpr e = clauses.front();
  for (std::size_t i = 1; i < clauses.size(); ++i) e = make_union(e, clauses[i]);
  return e;
}

}  // namespace

std::string signature_string(Signature s, std::size_t bits) {
  std::string out(bits, '0');
  for (std::size_t i = 0; i < bits; ++i)
    if (s >> i & 1) out[i] = '1';
  return out;
}

Signature parse_signature(std::string_view text) {
  require_bits(text.size());
  Signature s = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') s |= Signature{1} << i;
    else if (text[i] != '0') throw DnfError("signature must consist of 0 and 1");
  }
  return s;
}

const char* status_name(ProductStatus s) {
  switch (s) {
    case ProductStatus::Empty: return "empty";
    case ProductStatus::InsideTarget: return "inside_target";
    case ProductStatus::OutsideTarget: return "outside_target";
    case ProductStatus::Mixed: return "mixed";
  }
  return "?";
}

std::optional<Signature> point_signature(const MembershipTable& table, std::size_t point) {
  Signature s = 0;
  for (std::size_t p = 0; p < table.primitive_count(); ++p) {
    const MembershipLabel l = table.label(p, point);
    if (l == MembershipLabel::Surface) return std::nullopt;
    if (l == MembershipLabel::Inside) s |= Signature{1} << p;
  }
  return s;
}

ProductSet enumerate_products(const MembershipTable& table, const IntersectionGraph& g,
                              std::span<const std::uint8_t> region) {
  require_bits(table.primitive_count());
  if (g.vertices() != table.primitives().ids())
    throw DnfError("intersection graph was built on a different primitive set");

  struct Seen {
    std::size_t count = 0;
    std::size_t first = 0;
  };
  std::unordered_map<Signature, Seen> sampled;
  for (std::size_t k = 0; k < table.point_count(); ++k) {
    if (!region_contains(region, k)) continue;
    const auto s = point_signature(table, k);
    if (!s || *s == 0) continue;
    auto [it, fresh] = sampled.try_emplace(*s, Seen{0, k});
    ++it->second.count;
  }

  ProductSet out;
  out.primitive_ids = table.primitives().ids();
  std::size_t budget = kMaxCandidates;
  for_each_clique(g, 0, 0, budget, [&](Signature s) {
    ++out.candidates_considered;
    const auto it = sampled.find(s);
    if (it == sampled.end()) return;
    FundamentalProduct p;
    p.signature = s;
    p.samples = it->second.count;
    p.witness = table.points()[it->second.first];
    out.products.push_back(p);
  });
  for (const auto& [s, _] : sampled)
    if (!is_clique(g, s)) ++out.pruned_by_graph;
  std::sort(out.products.begin(), out.products.end(),
            [](const auto& a, const auto& b) { return a.signature < b.signature; });
  return out;
}

ProductSet enumerate_products(const PrimitiveSet& ps, const IntersectionGraph& g,
                              const SamplePlan& plan, std::uint64_t seed, double epsilon) {
  return enumerate_products(MembershipTable::sample(ps, plan, seed, epsilon), g);
}

void classify_products(ProductSet& products, const MembershipTable& table,
                       std::span<const MembershipLabel> target, double tau,
                       std::span<const std::uint8_t> region) {
  if (!(tau > 0.5 && tau <= 1.0)) throw DnfError("tau must lie in (0.5, 1]");
  if (target.size() != table.point_count()) throw DnfError("target labels do not match the table");
  std::unordered_map<Signature, std::size_t> index;
  for (std::size_t i = 0; i < products.products.size(); ++i) {
    auto& p = products.products[i];
    p.inside_target = p.outside_target = 0;
    index.emplace(p.signature, i);
  }
  products.uncovered_target_samples = 0;

  for (std::size_t k = 0; k < table.point_count(); ++k) {
    if (!region_contains(region, k) || target[k] == MembershipLabel::Surface) continue;
    const auto s = point_signature(table, k);
    if (!s) continue;
    if (*s == 0) {
      if (target[k] == MembershipLabel::Inside) ++products.uncovered_target_samples;
      continue;
    }
    const auto it = index.find(*s);
    if (it == index.end()) continue;
    auto& p = products.products[it->second];
    if (target[k] == MembershipLabel::Inside) ++p.inside_target;
    else ++p.outside_target;
  }

  for (auto& p : products.products) {
    const double decided = static_cast<double>(p.inside_target + p.outside_target);
    if (decided == 0.0) p.status = ProductStatus::Empty;
    else if (static_cast<double>(p.inside_target) >= tau * decided) p.status = ProductStatus::InsideTarget;
    else if (static_cast<double>(p.outside_target) >= tau * decided) p.status = ProductStatus::OutsideTarget;
    else p.status = ProductStatus::Mixed;
  }
}

std::size_t count_status(const ProductSet& products, ProductStatus status) {
  return static_cast<std::size_t>(std::count_if(products.products.begin(), products.products.end(),
                                                [status](const auto& p) { return p.status == status; }));
}

std::size_t resolve_mixed_by_majority(ProductSet& products) {
  std::size_t n = 0;
  for (auto& p : products.products) {
    if (p.status != ProductStatus::Mixed) continue;
    p.status = p.inside_target >= p.outside_target ? ProductStatus::InsideTarget
                                                   : ProductStatus::OutsideTarget;
    ++n;
  }
  return n;
}

CsgExpr product_clause(Signature s, const std::vector<std::string>& ids) {
  const Signature all = full_mask(ids.size());
  return literal_clause(s & all, ~s & all, ids);
}

CsgExpr build_dnf(const ProductSet& products) {
  std::vector<CsgExpr> clauses;
  for (const auto& p : products.products)
    if (p.status == ProductStatus::InsideTarget)
      clauses.push_back(product_clause(p.signature, products.primitive_ids));
  return union_all(clauses);
}

std::size_t Cube::literal_count() const { return static_cast<std::size_t>(std::popcount(care)); }

std::string Cube::to_string(std::size_t bits) const {
  std::string out(bits, '-');
  for (std::size_t i = 0; i < bits; ++i)
    if (care >> i & 1) out[i] = (value >> i & 1) ? '1' : '0';
  return out;
}

std::vector<Signature> Implicant::covered(std::size_t bits) const {
  const Signature free = ~cube.care & full_mask(bits);
  std::vector<Signature> out;
  // Walk the subsets of `free` in increasing order.
  Signature sub = 0;
  do {
    out.push_back(cube.value | sub);
    sub = (sub - free) & free;
  } while (sub != 0);
  return out;
}

namespace {

struct CubeHash {
  std::size_t operator()(const Cube& c) const {
    return std::hash<Signature>{}(c.value * 0x9E3779B97F4A7C15ull ^ c.care);
  }
};

}  // namespace

std::vector<Cube> prime_implicants(std::size_t bits, std::span<const Signature> on_set,
                                   std::span<const Signature> dont_care) {
  require_bits(bits);
  const Signature all = full_mask(bits);
  std::unordered_set<Cube, CubeHash> current;
  for (Signature s : on_set) current.insert({s & all, all});
  for (Signature s : dont_care) current.insert({s & all, all});

  std::vector<Cube> primes;
  while (!current.empty()) {
    std::unordered_set<Cube, CubeHash> next;
    std::unordered_set<Cube, CubeHash> merged;
    for (const Cube& c : current) {
      for (Signature rest = c.care & ~c.value; rest != 0; rest &= rest - 1) {
        const Signature bit = rest & (~rest + 1);
        const Cube partner{c.value | bit, c.care};
        if (!current.contains(partner)) continue;
        next.insert({c.value, c.care & ~bit});
        merged.insert(c);
        merged.insert(partner);
      }
    }
    for (const Cube& c : current)
      if (!merged.contains(c)) primes.push_back(c);
    current = std::move(next);
  }

  std::erase_if(primes, [&](const Cube& c) {
    return std::none_of(on_set.begin(), on_set.end(), [&](Signature s) { return c.covers(s & all); });
  });
  std::sort(primes.begin(), primes.end());
  return primes;
}

namespace {

using Bitset = std::vector<std::uint64_t>;

struct CoverProblem {
  std::vector<Bitset> covers;              // per prime, over on-set indices
  std::vector<std::vector<std::size_t>> by_minterm;  // primes covering each minterm
  std::vector<std::size_t> literals;
  std::size_t minterms = 0;
};

bool test(const Bitset& b, std::size_t i) { return b[i / 64] >> (i % 64) & 1; }

struct BestCover {
  std::vector<std::size_t> chosen;
  std::size_t literals = 0;
  bool found = false;
};

void search(const CoverProblem& pb, std::vector<std::size_t>& chosen, std::size_t literals,
            const Bitset& covered, BestCover& best) {
  std::size_t pick = pb.minterms;
  std::size_t fewest = SIZE_MAX;
  for (std::size_t m = 0; m < pb.minterms; ++m) {
    if (test(covered, m)) continue;
    if (pb.by_minterm[m].size() < fewest) {
      fewest = pb.by_minterm[m].size();
      pick = m;
    }
  }
  if (pick == pb.minterms) {
    const bool better = !best.found || chosen.size() < best.chosen.size() ||
                        (chosen.size() == best.chosen.size() && literals < best.literals);
    if (better) best = {chosen, literals, true};
    return;
  }
  if (best.found && chosen.size() + 1 > best.chosen.size()) return;
  for (std::size_t prime : pb.by_minterm[pick]) {
    Bitset next = covered;
    for (std::size_t w = 0; w < next.size(); ++w) next[w] |= pb.covers[prime][w];
    chosen.push_back(prime);
    search(pb, chosen, literals + pb.literals[prime], next, best);
    chosen.pop_back();
  }
}

std::vector<std::size_t> greedy_cover(const CoverProblem& pb) {
  Bitset covered((pb.minterms + 63) / 64, 0);
  std::size_t remaining = pb.minterms;
  std::vector<std::size_t> chosen;
  while (remaining > 0) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t p = 0; p < pb.covers.size(); ++p) {
      std::size_t gain = 0;
      for (std::size_t w = 0; w < covered.size(); ++w)
        gain += static_cast<std::size_t>(std::popcount(pb.covers[p][w] & ~covered[w]));
      if (gain > best_gain || (gain == best_gain && gain > 0 && pb.literals[p] < pb.literals[best])) {
        best = p;
        best_gain = gain;
      }
    }
    if (best_gain == 0) throw DnfError("primes do not cover the on-set");
    chosen.push_back(best);
    for (std::size_t w = 0; w < covered.size(); ++w) covered[w] |= pb.covers[best][w];
    remaining -= best_gain;
  }
  return chosen;
}

}  // namespace

Minimization minimize(std::size_t bits, std::span<const Signature> on_set,
                      std::span<const Signature> dont_care) {
  Minimization m;
  m.primes = prime_implicants(bits, on_set, dont_care);
  if (on_set.empty()) return m;

  std::vector<Signature> on(on_set.begin(), on_set.end());
  std::sort(on.begin(), on.end());
  on.erase(std::unique(on.begin(), on.end()), on.end());

  CoverProblem pb;
  pb.minterms = on.size();
  pb.by_minterm.resize(on.size());
  for (std::size_t p = 0; p < m.primes.size(); ++p) {
    Bitset b((on.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < on.size(); ++i) {
      if (m.primes[p].covers(on[i])) {
        b[i / 64] |= std::uint64_t{1} << (i % 64);
        pb.by_minterm[i].push_back(p);
      }
    }
    pb.covers.push_back(std::move(b));
    pb.literals.push_back(m.primes[p].literal_count());
  }

  std::vector<std::size_t> chosen;
  if (m.primes.size() <= kExactCoverLimit) {
    BestCover best;
    std::vector<std::size_t> scratch;
    search(pb, scratch, 0, Bitset((on.size() + 63) / 64, 0), best);
    chosen = best.chosen;
  } else {
    chosen = greedy_cover(pb);
    m.optimal = false;
  }
  for (std::size_t p : chosen) m.cover.push_back(m.primes[p]);
  std::sort(m.cover.begin(), m.cover.end());
  return m;
}

CsgExpr cover_expression(std::span<const Cube> cover, const std::vector<std::string>& ids) {
  std::vector<CsgExpr> clauses;
  for (const Cube& c : cover) clauses.push_back(literal_clause(c.value & c.care, ~c.value & c.care, ids));
  return union_all(clauses);
}

MinimizedDnf minimize_products(const ProductSet& products, bool use_dont_cares) {
  const std::size_t bits = products.primitive_ids.size();
  require_bits(bits);
  if (bits > kMinimizeMaxBits)
    throw DnfError("minimization supports at most " + std::to_string(kMinimizeMaxBits) +
                   " primitives per component");

  std::vector<Signature> on;
  std::vector<std::uint8_t> care(std::size_t{1} << bits, 0);
  care[0] = 1;
  for (const auto& p : products.products) {
    if (p.status == ProductStatus::InsideTarget) on.push_back(p.signature);
    if (p.status != ProductStatus::Empty) care[p.signature] = 1;
  }
  std::vector<Signature> dc;
  if (use_dont_cares)
    for (Signature s = 1; s < care.size(); ++s)
      if (!care[s]) dc.push_back(s);

  MinimizedDnf out;
  out.minimization = minimize(bits, on, dc);
  out.expression = cover_expression(out.minimization.cover, products.primitive_ids);
  return out;
}

nlohmann::json products_to_json(const ProductSet& products) {
  const std::size_t bits = products.primitive_ids.size();
  nlohmann::json list = nlohmann::json::array();
  for (const auto& p : products.products) {
    nlohmann::json j{{"signature", signature_string(p.signature, bits)},
                     {"status", status_name(p.status)},
                     {"samples", p.samples},
                     {"inside_target", p.inside_target},
                     {"outside_target", p.outside_target}};
    if (p.witness) j["witness"] = vec_to_json(*p.witness);
    list.push_back(std::move(j));
  }
  return {{"primitives", products.primitive_ids},
          {"nf", products.nf()},
          {"candidates_considered", products.candidates_considered},
          {"uncovered_target_samples", products.uncovered_target_samples},
          {"products", std::move(list)}};
}

nlohmann::json minimization_to_json(const Minimization& m, std::size_t bits) {
  nlohmann::json primes = nlohmann::json::array();
  for (const Cube& c : m.primes) primes.push_back(c.to_string(bits));
  nlohmann::json cover = nlohmann::json::array();
  for (const Cube& c : m.cover) cover.push_back(c.to_string(bits));
  return {{"primes", std::move(primes)}, {"cover", std::move(cover)}, {"optimal", m.optimal}};
}

}  // namespace csgsearch
