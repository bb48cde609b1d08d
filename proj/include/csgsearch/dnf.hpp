// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "csgsearch/csg_expr.hpp"
#include "csgsearch/intersection_graph.hpp"
#include "csgsearch/membership.hpp"
#include "csgsearch/target.hpp"

namespace csgsearch {

/// Signatures are |P|-bit words: bit i set selects primitive i, clear selects
/// its complement. Text form puts primitive 0 first, e.g. "10" = A and not B.
using Signature = std::uint64_t;

inline constexpr std::size_t kMaxSignatureBits = 63;

std::string signature_string(Signature s, std::size_t bits);
Signature parse_signature(std::string_view text);

enum class ProductStatus : std::uint8_t { Empty, InsideTarget, OutsideTarget, Mixed };

const char* status_name(ProductStatus s);

struct FundamentalProduct {
  Signature signature = 0;
  ProductStatus status = ProductStatus::Empty;
  std::optional<Vec3> witness;
  std::size_t samples = 0;         // non-Surface points with this signature
  std::size_t inside_target = 0;   // filled by classify_products
  std::size_t outside_target = 0;
};

struct ProductSet {
  std::vector<std::string> primitive_ids;
  std::vector<FundamentalProduct> products;  // non-empty only, ascending signature
  std::size_t candidates_considered = 0;      // clique-compatible signatures examined
  std::size_t pruned_by_graph = 0;            // sampled signatures contradicting the graph
  std::size_t uncovered_target_samples = 0;   // target-Inside points outside every primitive

  std::size_t nf() const { return products.size(); }
};

class DnfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Signature of a point, or nullopt when it lies on some primitive's surface.
std::optional<Signature> point_signature(const MembershipTable& table, std::size_t point);

/// Non-empty fundamental products over the region. Candidates are the
/// signatures whose positive literals form a clique of `g`; a candidate is
/// kept when some non-Surface sample carries it. The all-complement
/// signature is never a product.
ProductSet enumerate_products(const MembershipTable& table, const IntersectionGraph& g,
                              std::span<const std::uint8_t> region = {});

ProductSet enumerate_products(const PrimitiveSet& ps, const IntersectionGraph& g,
                              const SamplePlan& plan, std::uint64_t seed, double epsilon);

/// Marks each product inside_target when at least `tau` of its decided
/// samples are Inside the target, outside_target when at least `tau` are
/// Outside, mixed otherwise. Products whose samples all sit on the target's
/// surface become Empty (don't-care). tau must lie in (0.5, 1].
void classify_products(ProductSet& products, const MembershipTable& table,
                       std::span<const MembershipLabel> target, double tau = 1.0,
                       std::span<const std::uint8_t> region = {});

std::size_t count_status(const ProductSet& products, ProductStatus status);

/// Reassigns every mixed product to the side holding the majority of its
/// decided samples (ties go inside). Returns how many were reassigned.
std::size_t resolve_mixed_by_majority(ProductSet& products);

/// Clause for one signature: positive literals intersected in id order, then
/// each complemented primitive subtracted in id order.
CsgExpr product_clause(Signature s, const std::vector<std::string>& ids);

/// Two-level representation: left-deep union, ascending signature, of the
/// clauses of every inside_target product. Empty solid if there are none.
CsgExpr build_dnf(const ProductSet& products);

/// Product cube: `care` bits are bound to the matching bit of `value`.
struct Cube {
  Signature value = 0;  // bits outside `care` are zero
  Signature care = 0;

  bool covers(Signature s) const { return (s & care) == value; }
  bool contains(const Cube& o) const { return (o.care & care) == care && (o.value & care) == value; }
  std::size_t literal_count() const;
  std::string to_string(std::size_t bits) const;  // '1', '0', '-' per position
  friend bool operator==(const Cube&, const Cube&) = default;
  friend auto operator<=>(const Cube&, const Cube&) = default;
};

struct Implicant {
  Cube cube;
  /// All signatures compatible with the cube.
  std::vector<Signature> covered(std::size_t bits) const;
};

/// Maximal cubes of on-set plus don't-care set that cover at least one
/// on-set minterm, by iterative merging to a fixpoint. Sorted.
std::vector<Cube> prime_implicants(std::size_t bits, std::span<const Signature> on_set,
                                   std::span<const Signature> dont_care = {});

inline constexpr std::size_t kExactCoverLimit = 20;
inline constexpr std::size_t kMinimizeMaxBits = 16;

struct Minimization {
  std::vector<Cube> primes;
  std::vector<Cube> cover;  // sorted
  bool optimal = true;      // false when the greedy cover was used
};

/// Prime implicants plus a minimum cover of the on-set: exact (fewest cubes,
/// then fewest literals) for at most kExactCoverLimit primes, greedy beyond.
Minimization minimize(std::size_t bits, std::span<const Signature> on_set,
                      std::span<const Signature> dont_care = {});

/// Left-deep union of the cube clauses, in cube order.
CsgExpr cover_expression(std::span<const Cube> cover, const std::vector<std::string>& ids);

struct MinimizedDnf {
  Minimization minimization;
  CsgExpr expression = CsgExpr::empty();
};

/// Minimizes the inside_target products, with Empty products (and every
/// unsampled signature) as don't-cares when `use_dont_cares` is set. The
/// all-complement signature is always off.
MinimizedDnf minimize_products(const ProductSet& products, bool use_dont_cares = true);

nlohmann::json products_to_json(const ProductSet& products);
nlohmann::json minimization_to_json(const Minimization& m, std::size_t bits);

}  // namespace csgsearch
