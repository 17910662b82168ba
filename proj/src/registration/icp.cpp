#include "sgbot/registration/icp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sgbot/core/error.hpp"

namespace sgbot {

void IcpConfig::validate() const {
  if (n_segments < 1) throw Error(ErrorCode::kInvalidArgument, "icp.n must be >= 1");
  if (max_iterations < 1) throw Error(ErrorCode::kInvalidArgument, "icp.max_iters must be >= 1");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::kInvalidArgument, "icp.tol must be > 0");
  if (!(max_correspondence_distance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "icp.max_correspondence_distance must be > 0");
  }
  if (!(trim_fraction > 0.0) || trim_fraction > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "icp.trim_fraction must be in (0, 1]");
  }
}

std::vector<Mat3> candidate_rotations(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "candidate_rotations needs n >= 1");
  std::vector<double> angles(n);
  for (int k = 0; k < n; ++k) angles[k] = -kPi + (k + 0.5) * (2.0 * kPi / n);
  std::vector<Mat3> out;
  out.reserve(static_cast<std::size_t>(n) * n * n);
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) out.push_back(rot_z(angles[iz]) * rot_y(angles[iy]) * rot_x(angles[ix]));
    }
  }
  return out;
}

namespace {

void transform_into(std::span<const Vec3> in, const RigidTransform& t, std::vector<Vec3>& out) {
  out.resize(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = t.rotation * in[i] + t.translation;
}

double mean_sq(const std::vector<simd::Nearest>& nn) {
  double sum = 0.0;
  for (const auto& n : nn) sum += n.sq_distance;
  return sum / static_cast<double>(nn.size());
}

}  // namespace

double registration_objective(std::span<const Vec3> source, const NearestIndex& target,
                              const RigidTransform& transform) {
  if (source.empty()) throw Error(ErrorCode::kEmptyCloud, "registration source is empty");
  std::vector<Vec3> moved;
  transform_into(source, transform, moved);
  std::vector<simd::Nearest> nn(moved.size());
  target.query(moved, nn);
  return mean_sq(nn);
}

RegistrationResult icp_refine(std::span<const Vec3> source, const NearestIndex& target, const Mat3& r0,
                              const Vec3& t0, const IcpConfig& cfg) {
  cfg.validate();
  if (source.empty()) throw Error(ErrorCode::kEmptyCloud, "registration source is empty");
  RigidTransform current{r0, t0};
  if (!current.is_proper(1e-9)) throw Error(ErrorCode::kInvalidArgument, "initial rotation is not in SO(3)");

  const std::size_t n = source.size();
  const double max_sq = cfg.max_correspondence_distance * cfg.max_correspondence_distance;
  const auto keep_target =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(cfg.trim_fraction * static_cast<double>(n))));

  std::vector<Vec3> moved;
  std::vector<simd::Nearest> nn(n), next_nn(n);
  std::vector<std::size_t> order(n);
  std::vector<Vec3> src_pairs, tgt_pairs;
  src_pairs.reserve(n);
  tgt_pairs.reserve(n);

  transform_into(source, current, moved);
  target.query(moved, nn);
  double residual = mean_sq(nn);

  RegistrationResult result;
  result.residual_history.push_back(residual);

  for (int it = 1; it <= cfg.max_iterations && residual > 0.0; ++it) {
    order.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (nn[i].sq_distance <= max_sq) order.push_back(i);
    }
    if (order.empty()) break;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return nn[a].sq_distance < nn[b].sq_distance || (nn[a].sq_distance == nn[b].sq_distance && a < b);
    });
    order.resize(std::min(order.size(), keep_target));

    src_pairs.clear();
    tgt_pairs.clear();
    for (std::size_t i : order) {
      src_pairs.push_back(source[i]);
      tgt_pairs.push_back(target.points()[nn[i].index]);
    }
    const RigidTransform candidate = fit_rigid(src_pairs, tgt_pairs);

    transform_into(source, candidate, moved);
    target.query(moved, next_nn);
    const double next_residual = mean_sq(next_nn);
    if (next_residual > residual) break;

    const double previous = residual;
    current = candidate;
    residual = next_residual;
    nn.swap(next_nn);
    result.iterations = it;
    result.residual_history.push_back(residual);
    if (previous - residual <= cfg.tolerance * previous) break;
  }

  result.transform = current;
  result.residual = residual;
  return result;
}

RegistrationResult icp_refine(const PointCloud& source, const PointCloud& target, const Mat3& r0,
                              const Vec3& t0, const IcpConfig& cfg) {
  if (source.empty() || target.empty()) throw Error(ErrorCode::kEmptyCloud, "registration cloud is empty");
  const NearestIndex index(target.points);
  return icp_refine(source.points, index, r0, t0, cfg);
}

// Residuals this close count as equal; the start nearest the identity wins.
constexpr double kResidualTie = 1e-12;

RegistrationResult multistart_register(const PointCloud& source, const PointCloud& target, const IcpConfig& cfg) {
  cfg.validate();
  if (source.empty() || target.empty()) throw Error(ErrorCode::kEmptyCloud, "registration cloud is empty");

  const Vec3 cs = centroid(source.points);
  const Vec3 ct = centroid(target.points);
  std::vector<Vec3> src(source.size()), tgt(target.size());
  for (std::size_t i = 0; i < source.size(); ++i) src[i] = source.points[i] - cs;
  for (std::size_t i = 0; i < target.size(); ++i) tgt[i] = target.points[i] - ct;
  const NearestIndex centered_index(tgt);

  const std::vector<Mat3> starts = candidate_rotations(cfg.n_segments);
  RegistrationResult best;
  double best_offset = 0.0;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    RegistrationResult r = icp_refine(src, centered_index, starts[k], Vec3::Zero(), cfg);
    const double offset = geodesic_angle(starts[k], Mat3::Identity());
    const bool better = best.candidate_index < 0 || r.residual < best.residual - kResidualTie ||
                        (r.residual <= best.residual + kResidualTie && offset < best_offset);
    if (better) {
      best = std::move(r);
      best.candidate_index = static_cast<int>(k);
      best_offset = offset;
    }
  }

  // Undo the centering: x -> R (x - cs) + t + ct.
  const Mat3 r = best.transform.rotation;
  best.transform.translation = best.transform.translation + ct - r * cs;
  const NearestIndex original_index(target.points);
  best.residual = registration_objective(source.points, original_index, best.transform);
  return best;
}

}  // namespace sgbot
