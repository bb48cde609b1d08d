// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include <cassert>

#include "csgsearch/kernels.hpp"
#include "sdf_formulas.hpp"

namespace csgsearch::kernels {

namespace {

template <typename Fn>
void for_each_point(const PointColumns& pts, std::span<double> out, Fn&& fn) {
  const std::size_t n = pts.size();
  const double* xs = pts.x.data();
  const double* ys = pts.y.data();
  const double* zs = pts.z.data();
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(xs[i], ys[i], zs[i]);
}

}  // namespace

void signed_values_scalar(const Primitive& p, const PointColumns& pts, std::span<double> out) {
  assert(out.size() >= pts.size());
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        for_each_point(pts, out, [&s](double x, double y, double z) {
          if constexpr (std::is_same_v<S, Sphere>) return ref::sphere(s, x, y, z);
          else if constexpr (std::is_same_v<S, Box>) return ref::box(s, x, y, z);
          else if constexpr (std::is_same_v<S, Cylinder>) return ref::cylinder(s, x, y, z);
          else return ref::halfspace(s, x, y, z);
        });
      },
      p.shape);
}

void classify_scalar(const Primitive& p, const PointColumns& pts, double epsilon,
                     std::span<MembershipLabel> out) {
  std::vector<double> values(pts.size());
  signed_values_scalar(p, pts, values);
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = label_from_value(values[i], epsilon);
}

}  // namespace csgsearch::kernels
