// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

// Four points per iteration in double precision; the tail falls back to the
// reference formulas. Built with -mavx2 and only entered after the dispatcher
// has checked the CPU.

#include <cassert>
#include <stdexcept>

#include "csgsearch/kernels.hpp"
#include "sdf_formulas.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define CSGSEARCH_HAVE_AVX2_KERNELS 1
#endif

namespace csgsearch::kernels {

#ifdef CSGSEARCH_HAVE_AVX2_KERNELS

namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

inline __m256d dot3(__m256d ax, __m256d ay, __m256d az, __m256d bx, __m256d by, __m256d bz) {
  return _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ax, bx), _mm256_mul_pd(ay, by)),
                       _mm256_mul_pd(az, bz));
}

inline __m256d sphere4(const Sphere& s, __m256d px, __m256d py, __m256d pz) {
  const __m256d dx = _mm256_sub_pd(px, _mm256_set1_pd(s.center.x));
  const __m256d dy = _mm256_sub_pd(py, _mm256_set1_pd(s.center.y));
  const __m256d dz = _mm256_sub_pd(pz, _mm256_set1_pd(s.center.z));
  return _mm256_sub_pd(_mm256_sqrt_pd(dot3(dx, dy, dz, dx, dy, dz)), _mm256_set1_pd(s.radius));
}

inline __m256d box4(const Box& b, __m256d px, __m256d py, __m256d pz) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d qx = _mm256_sub_pd(abs_pd(_mm256_sub_pd(px, _mm256_set1_pd(0.5 * (b.min.x + b.max.x)))),
                                    _mm256_set1_pd(0.5 * (b.max.x - b.min.x)));
  const __m256d qy = _mm256_sub_pd(abs_pd(_mm256_sub_pd(py, _mm256_set1_pd(0.5 * (b.min.y + b.max.y)))),
                                    _mm256_set1_pd(0.5 * (b.max.y - b.min.y)));
  const __m256d qz = _mm256_sub_pd(abs_pd(_mm256_sub_pd(pz, _mm256_set1_pd(0.5 * (b.min.z + b.max.z)))),
                                    _mm256_set1_pd(0.5 * (b.max.z - b.min.z)));
  const __m256d ox = _mm256_max_pd(qx, zero);
  const __m256d oy = _mm256_max_pd(qy, zero);
  const __m256d oz = _mm256_max_pd(qz, zero);
  const __m256d outside = _mm256_sqrt_pd(dot3(ox, oy, oz, ox, oy, oz));
  const __m256d inside =
      _mm256_min_pd(_mm256_max_pd(qx, _mm256_max_pd(qy, qz)), zero);
  return _mm256_add_pd(outside, inside);
}

inline __m256d cylinder4(const Cylinder& c, __m256d px, __m256d py, __m256d pz) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d ax = _mm256_set1_pd(c.axis.x);
  const __m256d ay = _mm256_set1_pd(c.axis.y);
  const __m256d az = _mm256_set1_pd(c.axis.z);
  const __m256d vx = _mm256_sub_pd(px, _mm256_set1_pd(c.base.x));
  const __m256d vy = _mm256_sub_pd(py, _mm256_set1_pd(c.base.y));
  const __m256d vz = _mm256_sub_pd(pz, _mm256_set1_pd(c.base.z));
  const __m256d h = dot3(vx, vy, vz, ax, ay, az);
  const __m256d wx = _mm256_sub_pd(vx, _mm256_mul_pd(h, ax));
  const __m256d wy = _mm256_sub_pd(vy, _mm256_mul_pd(h, ay));
  const __m256d wz = _mm256_sub_pd(vz, _mm256_mul_pd(h, az));
  const __m256d half = _mm256_set1_pd(0.5 * c.height);
  const __m256d dr = _mm256_sub_pd(_mm256_sqrt_pd(dot3(wx, wy, wz, wx, wy, wz)),
                                   _mm256_set1_pd(c.radius));
  const __m256d dh = _mm256_sub_pd(abs_pd(_mm256_sub_pd(h, half)), half);
  const __m256d orr = _mm256_max_pd(dr, zero);
  const __m256d oh = _mm256_max_pd(dh, zero);
  const __m256d outside =
      _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(orr, orr), _mm256_mul_pd(oh, oh)));
  return _mm256_add_pd(outside, _mm256_min_pd(_mm256_max_pd(dr, dh), zero));
}

inline __m256d halfspace4(const Halfspace& hs, __m256d px, __m256d py, __m256d pz) {
  const __m256d dx = _mm256_sub_pd(px, _mm256_set1_pd(hs.point.x));
  const __m256d dy = _mm256_sub_pd(py, _mm256_set1_pd(hs.point.y));
  const __m256d dz = _mm256_sub_pd(pz, _mm256_set1_pd(hs.point.z));
  return dot3(dx, dy, dz, _mm256_set1_pd(hs.normal.x), _mm256_set1_pd(hs.normal.y),
              _mm256_set1_pd(hs.normal.z));
}

template <typename S, typename Vec4Fn, typename RefFn>
void run(const S& s, const PointColumns& pts, std::span<double> out, Vec4Fn vec4, RefFn ref) {
  const std::size_t n = pts.size();
  const double* xs = pts.x.data();
  const double* ys = pts.y.data();
  const double* zs = pts.z.data();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = vec4(s, _mm256_loadu_pd(xs + i), _mm256_loadu_pd(ys + i),
                           _mm256_loadu_pd(zs + i));
    _mm256_storeu_pd(out.data() + i, r);
  }
  for (; i < n; ++i) out[i] = ref(s, xs[i], ys[i], zs[i]);
}

}  // namespace

void signed_values_avx2(const Primitive& p, const PointColumns& pts, std::span<double> out) {
  assert(out.size() >= pts.size());
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Sphere>) run(s, pts, out, sphere4, ref::sphere);
        else if constexpr (std::is_same_v<S, Box>) run(s, pts, out, box4, ref::box);
        else if constexpr (std::is_same_v<S, Cylinder>) run(s, pts, out, cylinder4, ref::cylinder);
        else run(s, pts, out, halfspace4, ref::halfspace);
      },
      p.shape);
}

void classify_avx2(const Primitive& p, const PointColumns& pts, double epsilon,
                   std::span<MembershipLabel> out) {
  const std::size_t n = pts.size();
  std::vector<double> values(n);
  signed_values_avx2(p, pts, values);
  const __m256d lo = _mm256_set1_pd(-epsilon);
  const __m256d hi = _mm256_set1_pd(epsilon);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(values.data() + i);
    const int inside = _mm256_movemask_pd(_mm256_cmp_pd(v, lo, _CMP_LT_OQ));
    const int outside = _mm256_movemask_pd(_mm256_cmp_pd(v, hi, _CMP_GT_OQ));
    for (int lane = 0; lane < 4; ++lane) {
      out[i + lane] = (inside >> lane & 1)    ? MembershipLabel::Inside
                      : (outside >> lane & 1) ? MembershipLabel::Outside
                                              : MembershipLabel::Surface;
    }
  }
  for (; i < n; ++i) out[i] = label_from_value(values[i], epsilon);
}

#else

void signed_values_avx2(const Primitive&, const PointColumns&, std::span<double>) {
  throw std::logic_error("AVX2 kernels not compiled for this target");
}

void classify_avx2(const Primitive&, const PointColumns&, double, std::span<MembershipLabel>) {
  throw std::logic_error("AVX2 kernels not compiled for this target");
}

#endif

}  // namespace csgsearch::kernels
