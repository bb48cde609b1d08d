// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "csgsearch/point_cloud.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace csgsearch {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

double to_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw PointCloudError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
  return v;
}

}  // namespace

std::vector<Vec3> read_xyz(std::istream& in) {
  std::vector<Vec3> points;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const auto tok = split(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok.size() < 3)
      throw PointCloudError("line " + std::to_string(line_no) + ": expected x y z");
    points.push_back({to_double(tok[0], line_no), to_double(tok[1], line_no),
                      to_double(tok[2], line_no)});
  }
  return points;
}

std::vector<Vec3> read_ply(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || split(line) != std::vector<std::string>{"ply"})
    throw PointCloudError("missing 'ply' magic");

  std::size_t vertex_count = 0;
  std::size_t before_vertices = 0;  // lines of elements declared ahead of "vertex"
  bool in_vertex = false;
  bool seen_vertex = false;
  std::vector<std::string> props;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = split(line);
    if (tok.empty() || tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "format") {
      if (tok.size() < 2 || tok[1] != "ascii") throw PointCloudError("only ASCII PLY is supported");
    } else if (tok[0] == "element" && tok.size() == 3) {
      in_vertex = tok[1] == "vertex";
      const std::size_t count = static_cast<std::size_t>(to_double(tok[2], line_no));
      if (in_vertex) {
        vertex_count = count;
        seen_vertex = true;
      } else if (!seen_vertex) {
        before_vertices += count;
      }
    } else if (tok[0] == "property") {
      if (in_vertex) props.push_back(tok.back());
    } else if (tok[0] == "end_header") {
      break;
    } else {
      throw PointCloudError("line " + std::to_string(line_no) + ": unexpected header entry");
    }
  }
  if (!seen_vertex) throw PointCloudError("PLY has no vertex element");
  auto find = [&](const char* name) {
    for (std::size_t i = 0; i < props.size(); ++i)
      if (props[i] == name) return i;
    throw PointCloudError(std::string("PLY vertex lacks property ") + name);
  };
  const std::size_t ix = find("x"), iy = find("y"), iz = find("z");

  for (std::size_t skipped = 0; skipped < before_vertices && std::getline(in, line); ++line_no)
    ++skipped;
  std::vector<Vec3> points;
  points.reserve(vertex_count);
  while (points.size() < vertex_count && std::getline(in, line)) {
    ++line_no;
    const auto tok = split(line);
    if (tok.empty()) continue;
    if (tok.size() < props.size())
      throw PointCloudError("line " + std::to_string(line_no) + ": short vertex record");
    points.push_back({to_double(tok[ix], line_no), to_double(tok[iy], line_no),
                      to_double(tok[iz], line_no)});
  }
  if (points.size() != vertex_count) throw PointCloudError("PLY ended before all vertices");
  return points;
}

std::vector<Vec3> read_point_cloud(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PointCloudError("cannot open point cloud " + path.string());
  if (path.extension() == ".ply") return read_ply(in);
  return read_xyz(in);
}

void write_xyz(std::ostream& out, const std::vector<Vec3>& points) {
  char buf[64];
  for (const Vec3& p : points) {
    const double xyz[3] = {p.x, p.y, p.z};
    for (int i = 0; i < 3; ++i) {
      const auto r = std::to_chars(buf, buf + sizeof buf, xyz[i]);
      out.write(buf, r.ptr - buf);
      out.put(i == 2 ? '\n' : ' ');
    }
  }
}

void write_xyz(const std::filesystem::path& path, const std::vector<Vec3>& points) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PointCloudError("cannot write " + path.string());
  write_xyz(out, points);
}

namespace {

struct GridIndex {
  std::size_t res;
  std::size_t nz;
  std::size_t operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return (k * res + j) * res + i;
  }
};

template <typename Fn>
void for_each_neighbor(const GridIndex& gi, std::size_t idx, int dimension, Fn&& fn) {
  const std::size_t i = idx % gi.res;
  const std::size_t j = (idx / gi.res) % gi.res;
  const std::size_t k = idx / (gi.res * gi.res);
  if (i > 0) fn(gi(i - 1, j, k));
  if (i + 1 < gi.res) fn(gi(i + 1, j, k));
  if (j > 0) fn(gi(i, j - 1, k));
  if (j + 1 < gi.res) fn(gi(i, j + 1, k));
  if (dimension == 3) {
    if (k > 0) fn(gi(i, j, k - 1));
    if (k + 1 < gi.nz) fn(gi(i, j, k + 1));
  }
}

}  // namespace

std::vector<Vec3> sample_surface(const CsgExpr& e, const PrimitiveSet& ps, const SamplePlan& plan,
                                 std::uint64_t seed, double epsilon) {
  check_resolves(e, ps);
  const auto grid = sample_grid(plan, seed);
  std::vector<MembershipLabel> labels;
  labels.reserve(grid.size());
  for (const Vec3& p : grid) labels.push_back(evaluate(e, ps, p, epsilon));

  const GridIndex gi{static_cast<std::size_t>(plan.resolution),
                     plan.dimension == 3 ? static_cast<std::size_t>(plan.resolution) : 1};
  std::vector<Vec3> out;
  for (std::size_t a = 0; a < grid.size(); ++a) {
    if (labels[a] != MembershipLabel::Inside) continue;
    for_each_neighbor(gi, a, plan.dimension, [&](std::size_t b) {
      if (labels[b] != MembershipLabel::Outside) return;
      Vec3 in = grid[a];
      Vec3 outp = grid[b];
      for (int iter = 0; iter < 200; ++iter) {
        const Vec3 mid = 0.5 * (in + outp);
        const MembershipLabel l = evaluate(e, ps, mid, epsilon);
        if (l == MembershipLabel::Surface) {
          out.push_back(mid);
          return;
        }
        (l == MembershipLabel::Inside ? in : outp) = mid;
      }
    });
  }
  return out;
}

std::vector<MembershipLabel> labels_from_cloud(const std::vector<Vec3>& cloud,
                                               const SamplePlan& plan, std::uint64_t seed,
                                               double barrier) {
  const auto grid = sample_grid(plan, seed);
  const Vec3 cell = plan.cell_size();
  if (barrier <= 0.0) barrier = 1.5 * std::max({cell.x, cell.y, cell.z});

  // Bucket the cloud on a lattice of pitch `barrier`; a query only needs the
  // 3x3(x3) neighborhood of its bucket.
  auto bucket = [&](Vec3 p) {
    return std::array<long, 3>{static_cast<long>(std::floor(p.x / barrier)),
                               static_cast<long>(std::floor(p.y / barrier)),
                               static_cast<long>(std::floor(p.z / barrier))};
  };
  auto hash = [](const std::array<long, 3>& b) {
    return static_cast<std::size_t>(b[0] * 73856093L ^ b[1] * 19349663L ^ b[2] * 83492791L);
  };
  std::unordered_multimap<std::size_t, std::size_t> buckets;
  for (std::size_t i = 0; i < cloud.size(); ++i) buckets.emplace(hash(bucket(cloud[i])), i);

  const double r2 = barrier * barrier;
  auto near_cloud = [&](Vec3 p) {
    const auto b = bucket(p);
    for (long dz = -1; dz <= 1; ++dz)
      for (long dy = -1; dy <= 1; ++dy)
        for (long dx = -1; dx <= 1; ++dx) {
          const auto [lo, hi] = buckets.equal_range(hash({b[0] + dx, b[1] + dy, b[2] + dz}));
          for (auto it = lo; it != hi; ++it) {
            const Vec3 d = cloud[it->second] - p;
            if (dot(d, d) <= r2) return true;
          }
        }
    return false;
  };

  std::vector<MembershipLabel> labels(grid.size(), MembershipLabel::Inside);
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (near_cloud(grid[i])) labels[i] = MembershipLabel::Surface;

  const GridIndex gi{static_cast<std::size_t>(plan.resolution),
                     plan.dimension == 3 ? static_cast<std::size_t>(plan.resolution) : 1};
  std::deque<std::size_t> queue;
  auto seed_outside = [&](std::size_t idx) {
    if (labels[idx] == MembershipLabel::Inside) {
      labels[idx] = MembershipLabel::Outside;
      queue.push_back(idx);
    }
  };
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const std::size_t i = idx % gi.res;
    const std::size_t j = (idx / gi.res) % gi.res;
    const std::size_t k = idx / (gi.res * gi.res);
    const bool border = i == 0 || j == 0 || i + 1 == gi.res || j + 1 == gi.res ||
                        (plan.dimension == 3 && (k == 0 || k + 1 == gi.nz));
    if (border) seed_outside(idx);
  }
  while (!queue.empty()) {
    const std::size_t idx = queue.front();
    queue.pop_front();
    for_each_neighbor(gi, idx, plan.dimension, seed_outside);
  }
  return labels;
}

}  // namespace csgsearch
