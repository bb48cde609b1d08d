// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace csgsearch {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline bool is_finite(Vec3 a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Axis-aligned box, closed. Used for scene bounds and primitive bounding volumes.
struct Aabb {
  Vec3 min;
  Vec3 max;

  bool contains(Vec3 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
           p.z >= min.z && p.z <= max.z;
  }
  bool overlaps(const Aabb& o) const {
    return min.x <= o.max.x && o.min.x <= max.x && min.y <= o.max.y &&
           o.min.y <= max.y && min.z <= o.max.z && o.min.z <= max.z;
  }
  Aabb inflated(double d) const {
    return {{min.x - d, min.y - d, min.z - d}, {max.x + d, max.y + d, max.z + d}};
  }
  static Aabb unbounded() {
    const double inf = HUGE_VAL;
    return {{-inf, -inf, -inf}, {inf, inf, inf}};
  }
  friend bool operator==(const Aabb&, const Aabb&) = default;
};

struct Sphere {
  Vec3 center;
  double radius = 1.0;
};

struct Box {
  Vec3 min;
  Vec3 max;
};

/// Finite capped cylinder from `base` along unit `axis` for `height`.
struct Cylinder {
  Vec3 base;
  Vec3 axis{0.0, 0.0, 1.0};
  double radius = 1.0;
  double height = 1.0;
};

/// Solid half of space behind the plane; `normal` points outward.
struct Halfspace {
  Vec3 point;
  Vec3 normal{0.0, 0.0, 1.0};
};

using Shape = std::variant<Sphere, Box, Cylinder, Halfspace>;

enum class ShapeKind : std::uint8_t { Sphere, Box, Cylinder, Halfspace };

const char* shape_kind_name(ShapeKind kind);
std::optional<ShapeKind> parse_shape_kind(const std::string& name);

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ids are tokens of [A-Za-z0-9_.-] that do not collide with expression
/// keywords (union, inter, diff, compl, empty).
bool is_valid_primitive_id(const std::string& id);

/// A CSG leaf: an implicit solid with a short unique id.
struct Primitive {
  std::string id;
  Shape shape;

  ShapeKind kind() const { return static_cast<ShapeKind>(shape.index()); }
  /// Throws GeometryError when the shape parameters are degenerate.
  void validate() const;
  /// Tight bounds; halfspaces are unbounded.
  Aabb bounding_box() const;
};

/// Ordered primitives. Index i is bit i of every product signature.
class PrimitiveSet {
 public:
  PrimitiveSet() = default;
  explicit PrimitiveSet(std::vector<Primitive> primitives);

  std::size_t size() const { return primitives_.size(); }
  bool empty() const { return primitives_.empty(); }
  const Primitive& operator[](std::size_t i) const { return primitives_[i]; }
  const std::vector<Primitive>& primitives() const { return primitives_; }
  auto begin() const { return primitives_.begin(); }
  auto end() const { return primitives_.end(); }

  std::optional<std::size_t> index_of(const std::string& id) const;
  std::vector<std::string> ids() const;
  /// Subset in the given index order.
  PrimitiveSet select(const std::vector<std::size_t>& indices) const;

 private:
  std::vector<Primitive> primitives_;
};

enum class MembershipLabel : std::uint8_t { Outside = 0, Inside = 1, Surface = 2 };

const char* label_name(MembershipLabel label);

/// Negative inside, positive outside, zero on the boundary.
double signed_value(const Primitive& p, Vec3 x);

MembershipLabel classify(const Primitive& p, Vec3 x, double epsilon);

inline MembershipLabel label_from_value(double value, double epsilon) {
  if (value < -epsilon) return MembershipLabel::Inside;
  if (value > epsilon) return MembershipLabel::Outside;
  return MembershipLabel::Surface;
}

/// Jittered sample lattice over `bounds`. In 2D scenes z is pinned to the
/// middle of the z-extent and only x and y are sampled.
struct SamplePlan {
  Aabb bounds;
  int resolution = 64;
  double jitter = 0.0;
  int dimension = 3;

  std::size_t point_count() const;
  Vec3 cell_size() const;
  void validate() const;
  friend bool operator==(const SamplePlan&, const SamplePlan&) = default;
};

/// resolution^dimension points, x fastest. Deterministic for (plan, seed).
std::vector<Vec3> sample_grid(const SamplePlan& plan, std::uint64_t seed);

/// Checks that `plan.bounds` strictly contains every bounded primitive's
/// box inflated by epsilon. Returns the offending id, if any.
std::optional<std::string> first_uncontained(const SamplePlan& plan, const PrimitiveSet& ps,
                                             double epsilon);

}  // namespace csgsearch
