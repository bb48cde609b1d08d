// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

// Reference per-point distance formulas. The AVX2 kernel mirrors these
// operation for operation; keep the two in sync.

#pragma once

#include <algorithm>
#include <cmath>

#include "csgsearch/geometry.hpp"

namespace csgsearch::kernels::ref {

inline double sphere(const Sphere& s, double px, double py, double pz) {
  const double dx = px - s.center.x;
  const double dy = py - s.center.y;
  const double dz = pz - s.center.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz) - s.radius;
}

inline double box(const Box& b, double px, double py, double pz) {
  const double cx = 0.5 * (b.min.x + b.max.x);
  const double cy = 0.5 * (b.min.y + b.max.y);
  const double cz = 0.5 * (b.min.z + b.max.z);
  const double hx = 0.5 * (b.max.x - b.min.x);
  const double hy = 0.5 * (b.max.y - b.min.y);
  const double hz = 0.5 * (b.max.z - b.min.z);
  const double qx = std::fabs(px - cx) - hx;
  const double qy = std::fabs(py - cy) - hy;
  const double qz = std::fabs(pz - cz) - hz;
  const double ox = std::max(qx, 0.0);
  const double oy = std::max(qy, 0.0);
  const double oz = std::max(qz, 0.0);
  const double outside = std::sqrt(ox * ox + oy * oy + oz * oz);
  const double inside = std::min(std::max(qx, std::max(qy, qz)), 0.0);
  return outside + inside;
}

inline double cylinder(const Cylinder& c, double px, double py, double pz) {
  const double vx = px - c.base.x;
  const double vy = py - c.base.y;
  const double vz = pz - c.base.z;
  const double h = vx * c.axis.x + vy * c.axis.y + vz * c.axis.z;
  const double wx = vx - h * c.axis.x;
  const double wy = vy - h * c.axis.y;
  const double wz = vz - h * c.axis.z;
  const double half = 0.5 * c.height;
  const double dr = std::sqrt(wx * wx + wy * wy + wz * wz) - c.radius;
  const double dh = std::fabs(h - half) - half;
  const double or_ = std::max(dr, 0.0);
  const double oh = std::max(dh, 0.0);
  return std::sqrt(or_ * or_ + oh * oh) + std::min(std::max(dr, dh), 0.0);
}

inline double halfspace(const Halfspace& h, double px, double py, double pz) {
  return (px - h.point.x) * h.normal.x + (py - h.point.y) * h.normal.y +
         (pz - h.point.z) * h.normal.z;
}

}  // namespace csgsearch::kernels::ref
