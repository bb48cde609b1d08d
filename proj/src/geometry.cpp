// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "csgsearch/geometry.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "kernels/sdf_formulas.hpp"

namespace csgsearch {

namespace {

constexpr double kUnitTolerance = 1e-9;

bool is_unit(Vec3 v) { return std::fabs(norm(v) - 1.0) <= kUnitTolerance; }

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

const char* shape_kind_name(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Sphere: return "sphere";
    case ShapeKind::Box: return "box";
    case ShapeKind::Cylinder: return "cylinder";
    case ShapeKind::Halfspace: return "halfspace";
  }
  return "?";
}

std::optional<ShapeKind> parse_shape_kind(const std::string& name) {
  for (ShapeKind k : {ShapeKind::Sphere, ShapeKind::Box, ShapeKind::Cylinder, ShapeKind::Halfspace})
    if (name == shape_kind_name(k)) return k;
  return std::nullopt;
}

const char* label_name(MembershipLabel label) {
  switch (label) {
    case MembershipLabel::Inside: return "inside";
    case MembershipLabel::Outside: return "outside";
    case MembershipLabel::Surface: return "surface";
  }
  return "?";
}

bool is_valid_primitive_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return id != "union" && id != "inter" && id != "diff" && id != "compl" && id != "empty";
}

void Primitive::validate() const {
  if (!is_valid_primitive_id(id)) throw GeometryError("invalid primitive id '" + id + "'");
  auto fail = [this](const std::string& what) {
    throw GeometryError("primitive '" + id + "': " + what);
  };
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Sphere>) {
          if (!is_finite(s.center)) fail("non-finite center");
          if (!(s.radius > 0.0)) fail("radius must be positive");
        } else if constexpr (std::is_same_v<S, Box>) {
          if (!is_finite(s.min) || !is_finite(s.max)) fail("non-finite corner");
          if (!(s.min.x < s.max.x && s.min.y < s.max.y && s.min.z < s.max.z))
            fail("box min must be < max componentwise");
        } else if constexpr (std::is_same_v<S, Cylinder>) {
          if (!is_finite(s.base)) fail("non-finite base");
          if (!(s.radius > 0.0)) fail("radius must be positive");
          if (!(s.height > 0.0)) fail("height must be positive");
          if (!is_unit(s.axis)) fail("axis must be unit length");
        } else {
          if (!is_finite(s.point)) fail("non-finite point");
          if (!is_unit(s.normal)) fail("normal must be unit length");
        }
      },
      shape);
}

Aabb Primitive::bounding_box() const {
  return std::visit(
      [](const auto& s) -> Aabb {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Sphere>) {
          const Vec3 r{s.radius, s.radius, s.radius};
          return {s.center - r, s.center + r};
        } else if constexpr (std::is_same_v<S, Box>) {
          return {s.min, s.max};
        } else if constexpr (std::is_same_v<S, Cylinder>) {
          // Disk of radius r orthogonal to the axis spans r*sqrt(1 - a_i^2) along axis i.
          const Vec3 e{s.radius * std::sqrt(std::max(0.0, 1.0 - s.axis.x * s.axis.x)),
                       s.radius * std::sqrt(std::max(0.0, 1.0 - s.axis.y * s.axis.y)),
                       s.radius * std::sqrt(std::max(0.0, 1.0 - s.axis.z * s.axis.z))};
          const Vec3 top = s.base + s.height * s.axis;
          return {Vec3{std::min(s.base.x, top.x), std::min(s.base.y, top.y),
                       std::min(s.base.z, top.z)} - e,
                  Vec3{std::max(s.base.x, top.x), std::max(s.base.y, top.y),
                       std::max(s.base.z, top.z)} + e};
        } else {
          return Aabb::unbounded();
        }
      },
      shape);
}

PrimitiveSet::PrimitiveSet(std::vector<Primitive> primitives) : primitives_(std::move(primitives)) {
  std::set<std::string> seen;
  for (const Primitive& p : primitives_) {
    p.validate();
    if (!seen.insert(p.id).second) throw GeometryError("duplicate primitive id '" + p.id + "'");
  }
}

std::optional<std::size_t> PrimitiveSet::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < primitives_.size(); ++i)
    if (primitives_[i].id == id) return i;
  return std::nullopt;
}

std::vector<std::string> PrimitiveSet::ids() const {
  std::vector<std::string> out;
  out.reserve(primitives_.size());
  for (const Primitive& p : primitives_) out.push_back(p.id);
  return out;
}

PrimitiveSet PrimitiveSet::select(const std::vector<std::size_t>& indices) const {
  std::vector<Primitive> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(primitives_.at(i));
  return PrimitiveSet(std::move(out));
}

double signed_value(const Primitive& p, Vec3 x) {
  return std::visit(
      [x](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Sphere>) return kernels::ref::sphere(s, x.x, x.y, x.z);
        else if constexpr (std::is_same_v<S, Box>) return kernels::ref::box(s, x.x, x.y, x.z);
        else if constexpr (std::is_same_v<S, Cylinder>)
          return kernels::ref::cylinder(s, x.x, x.y, x.z);
        else return kernels::ref::halfspace(s, x.x, x.y, x.z);
      },
      p.shape);
}

MembershipLabel classify(const Primitive& p, Vec3 x, double epsilon) {
  return label_from_value(signed_value(p, x), epsilon);
}

std::size_t SamplePlan::point_count() const {
  std::size_t n = 1;
  for (int d = 0; d < dimension; ++d) n *= static_cast<std::size_t>(resolution);
  return n;
}

Vec3 SamplePlan::cell_size() const {
  const double r = resolution;
  return {(bounds.max.x - bounds.min.x) / r, (bounds.max.y - bounds.min.y) / r,
          dimension == 3 ? (bounds.max.z - bounds.min.z) / r : 0.0};
}

void SamplePlan::validate() const {
  if (resolution < 2) throw GeometryError("sample plan resolution must be >= 2");
  if (dimension != 2 && dimension != 3) throw GeometryError("scene dimension must be 2 or 3");
  if (!(jitter >= 0.0 && jitter <= 0.5)) throw GeometryError("jitter must lie in [0, 0.5]");
  if (!is_finite(bounds.min) || !is_finite(bounds.max))
    throw GeometryError("sample bounds must be finite");
  if (!(bounds.min.x < bounds.max.x && bounds.min.y < bounds.max.y))
    throw GeometryError("sample bounds must have positive extent");
  if (dimension == 3 && !(bounds.min.z < bounds.max.z))
    throw GeometryError("3D sample bounds must have positive z extent");
}

std::vector<Vec3> sample_grid(const SamplePlan& plan, std::uint64_t seed) {
  plan.validate();
  const Vec3 cell = plan.cell_size();
  const std::size_t res = static_cast<std::size_t>(plan.resolution);
  const std::size_t nz = plan.dimension == 3 ? res : 1;
  const double zmid = 0.5 * (plan.bounds.min.z + plan.bounds.max.z);
  std::mt19937_64 rng(seed);
  auto offset = [&](double index) {
    if (plan.jitter == 0.0) return index + 0.5;
    return index + 0.5 + plan.jitter * (2.0 * unit_interval(rng) - 1.0);
  };

  std::vector<Vec3> points;
  points.reserve(plan.point_count());
  for (std::size_t k = 0; k < nz; ++k) {
    for (std::size_t j = 0; j < res; ++j) {
      for (std::size_t i = 0; i < res; ++i) {
        Vec3 p;
        p.x = plan.bounds.min.x + offset(static_cast<double>(i)) * cell.x;
        p.y = plan.bounds.min.y + offset(static_cast<double>(j)) * cell.y;
        p.z = plan.dimension == 3 ? plan.bounds.min.z + offset(static_cast<double>(k)) * cell.z
                                  : zmid;
        points.push_back(p);
      }
    }
  }
  return points;
}

std::optional<std::string> first_uncontained(const SamplePlan& plan, const PrimitiveSet& ps,
                                             double epsilon) {
  for (const Primitive& p : ps) {
    if (p.kind() == ShapeKind::Halfspace) continue;
    const Aabb b = p.bounding_box().inflated(epsilon);
    bool ok = plan.bounds.min.x < b.min.x && b.max.x < plan.bounds.max.x &&
              plan.bounds.min.y < b.min.y && b.max.y < plan.bounds.max.y;
    if (plan.dimension == 3)
      ok = ok && plan.bounds.min.z < b.min.z && b.max.z < plan.bounds.max.z;
    if (!ok) return p.id;
  }
  return std::nullopt;
}

}  // namespace csgsearch
