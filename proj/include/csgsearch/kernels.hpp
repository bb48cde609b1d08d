// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "csgsearch/geometry.hpp"

namespace csgsearch {

/// Structure-of-arrays copy of a point list, the layout the batch kernels read.
struct PointColumns {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;

  PointColumns() = default;
  explicit PointColumns(std::span<const Vec3> points);

  std::size_t size() const { return x.size(); }
  Vec3 at(std::size_t i) const { return {x[i], y[i], z[i]}; }
};

namespace kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);

/// Best instruction set the running CPU supports.
Isa detected_isa();
/// Instruction set the dispatching entry points currently use. Starts at
/// detected_isa() unless CSGSEARCH_FORCE_SCALAR is set in the environment.
Isa active_isa();
/// Throws std::invalid_argument if `isa` is not supported on this CPU.
void set_active_isa(Isa isa);

// Every variant computes the same operation sequence per lane, so results are
// bit-identical across variants (up to the sign of zero).
void signed_values_scalar(const Primitive& p, const PointColumns& pts, std::span<double> out);
void signed_values_avx2(const Primitive& p, const PointColumns& pts, std::span<double> out);

void signed_values(const Primitive& p, const PointColumns& pts, std::span<double> out);

void classify_scalar(const Primitive& p, const PointColumns& pts, double epsilon,
                     std::span<MembershipLabel> out);
void classify_avx2(const Primitive& p, const PointColumns& pts, double epsilon,
                   std::span<MembershipLabel> out);

void classify(const Primitive& p, const PointColumns& pts, double epsilon,
              std::span<MembershipLabel> out);

}  // namespace kernels
}  // namespace csgsearch
