/*
 * Copyright 2026 The m2r authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "m2r/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace m2r {

double dice(const BinaryMask& a, const BinaryMask& b) {
  if (!a.grid.same_lattice(b.grid)) throw ValidationError("dice: masks on different grids");
  std::int64_t na = 0, nb = 0, nab = 0;
  for (std::size_t i = 0; i < a.bits.size(); ++i) {
    na += a.bits[i] != 0;
    nb += b.bits[i] != 0;
    nab += (a.bits[i] != 0) && (b.bits[i] != 0);
  }
  if (na + nb == 0) return 1.0;
  return 2.0 * static_cast<double>(nab) / static_cast<double>(na + nb);
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

namespace {

double point_segment_distance_3d(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  // Barycentric coordinates of the in-plane projection.
  const double d00 = ab.dot(ab), d01 = ab.dot(ac), d11 = ac.dot(ac);
  const double d20 = ap.dot(ab), d21 = ap.dot(ac);
  const double det = d00 * d11 - d01 * d01;
  if (det > 0.0) {
    const double v = (d11 * d20 - d01 * d21) / det;
    const double w = (d00 * d21 - d01 * d20) / det;
    if (v >= 0.0 && w >= 0.0 && v + w <= 1.0) return (p - (a + v * ab + w * ac)).norm();
  }
  return std::min({point_segment_distance_3d(p, a, b), point_segment_distance_3d(p, b, c),
                   point_segment_distance_3d(p, c, a)});
}

std::vector<double> directed_distances(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  if (a.empty() || b.empty()) throw ValidationError("hausdorff: empty point set");
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : b) best = std::min(best, (p - q).norm());
    out.push_back(best);
  }
  return out;
}

std::vector<double> directed_distances(const Contour& a, const Contour& b) {
  if (a.points.empty() || b.num_segments() == 0)
    throw ValidationError("hausdorff: empty contour");
  std::vector<double> out;
  out.reserve(a.points.size());
  for (const auto& p : a.points) {
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < b.num_segments(); ++s) {
      auto [q1, q2] = b.segment(s);
      best = std::min(best, point_segment_distance(p, q1, q2));
    }
    out.push_back(best);
  }
  return out;
}

std::vector<double> directed_distances(const TriMesh& a, const TriMesh& b) {
  if (a.vertices.empty() || b.triangles.empty()) throw ValidationError("hausdorff: empty mesh");
  std::vector<double> out;
  out.reserve(a.vertices.size());
  for (const auto& p : a.vertices) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& tr : b.triangles)
      best = std::min(best, point_triangle_distance(p, b.vertices[tr[0]], b.vertices[tr[1]],
                                                    b.vertices[tr[2]]));
    out.push_back(best);
  }
  return out;
}

namespace {

template <typename T>
HausdorffResult hausdorff_impl(const T& a, const T& b) {
  const std::vector<double> dab = directed_distances(a, b);
  const std::vector<double> dba = directed_distances(b, a);
  HausdorffResult r;
  r.d_ab = *std::max_element(dab.begin(), dab.end());
  r.d_ba = *std::max_element(dba.begin(), dba.end());
  r.symmetric = std::max(r.d_ab, r.d_ba);
  return r;
}

}  // namespace

HausdorffResult hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  return hausdorff_impl(a, b);
}
HausdorffResult hausdorff(const Contour& a, const Contour& b) { return hausdorff_impl(a, b); }
HausdorffResult hausdorff(const TriMesh& a, const TriMesh& b) { return hausdorff_impl(a, b); }

double nearest_rank_percentile(std::vector<double> samples, double pct) {
  if (samples.empty()) throw ValidationError("percentile: no samples");
  if (!(pct > 0.0) || pct > 100.0) throw ValidationError("percentile: pct must be in (0,100]");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<std::int64_t>(samples.size());
  std::int64_t rank = static_cast<std::int64_t>(std::ceil(pct / 100.0 * static_cast<double>(n)));
  rank = std::clamp<std::int64_t>(rank, 1, n);
  return samples[rank - 1];
}

double hausdorff_percentile(const Contour& a, const Contour& b, double pct) {
  return nearest_rank_percentile(directed_distances(a, b), pct);
}
double hausdorff_percentile(const TriMesh& a, const TriMesh& b, double pct) {
  return nearest_rank_percentile(directed_distances(a, b), pct);
}
double hausdorff_percentile(const std::vector<Vec3>& a, const std::vector<Vec3>& b, double pct) {
  return nearest_rank_percentile(directed_distances(a, b), pct);
}

}  // namespace m2r
