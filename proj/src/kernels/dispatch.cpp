// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "csgsearch/kernels.hpp"

namespace csgsearch {

PointColumns::PointColumns(std::span<const Vec3> points) {
  x.reserve(points.size());
  y.reserve(points.size());
  z.reserve(points.size());
  for (const Vec3& p : points) {
    x.push_back(p.x);
    y.push_back(p.y);
    z.push_back(p.z);
  }
}

namespace kernels {

namespace {

Isa initial_isa() {
  const char* force = std::getenv("CSGSEARCH_FORCE_SCALAR");
  if (force != nullptr && *force != '\0' && *force != '0') return Isa::Scalar;
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
  static const bool avx2 = __builtin_cpu_supports("avx2");
  if (avx2) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2)
    throw std::invalid_argument("AVX2 not supported on this CPU");
  active().store(isa, std::memory_order_relaxed);
}

void signed_values(const Primitive& p, const PointColumns& pts, std::span<double> out) {
  if (active_isa() == Isa::Avx2) signed_values_avx2(p, pts, out);
  else signed_values_scalar(p, pts, out);
}

void classify(const Primitive& p, const PointColumns& pts, double epsilon,
              std::span<MembershipLabel> out) {
  if (active_isa() == Isa::Avx2) classify_avx2(p, pts, epsilon, out);
  else classify_scalar(p, pts, epsilon, out);
}

}  // namespace kernels
}  // namespace csgsearch
