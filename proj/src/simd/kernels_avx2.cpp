// Compiled with -mavx2; only reached through dispatch after a CPU check.

#include <limits>

#include "sgbot/simd/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace sgbot::simd::avx2 {

#if defined(__AVX2__)

namespace {

inline __m256d sq_dist(__m256d qx, __m256d qy, __m256d qz, const double* x, const double* y,
                       const double* z) {
  const __m256d dx = _mm256_sub_pd(qx, _mm256_loadu_pd(x));
  const __m256d dy = _mm256_sub_pd(qy, _mm256_loadu_pd(y));
  const __m256d dz = _mm256_sub_pd(qz, _mm256_loadu_pd(z));
  return _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                       _mm256_mul_pd(dz, dz));
}

inline void take_better(double d, std::size_t i, double& best, std::size_t& best_index) {
  if (d < best || (d == best && i < best_index)) {
    best = d;
    best_index = i;
  }
}

}  // namespace

void nearest_neighbors(const PointsSoA& target, std::span<const Vec3> queries, std::span<Nearest> out) {
  const std::size_t n = target.size();
  const std::size_t blocked = n - n % 8;
  const double* xs = target.x.data();
  const double* ys = target.y.data();
  const double* zs = target.z.data();
  const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  const __m256i step = _mm256_set1_epi64x(8);

  for (std::size_t k = 0; k < queries.size(); ++k) {
    const __m256d qx = _mm256_set1_pd(queries[k].x());
    const __m256d qy = _mm256_set1_pd(queries[k].y());
    const __m256d qz = _mm256_set1_pd(queries[k].z());
    __m256d best_a = inf, best_b = inf;
    __m256i idx_a = _mm256_setr_epi64x(0, 1, 2, 3);
    __m256i idx_b = _mm256_setr_epi64x(4, 5, 6, 7);
    __m256i best_idx_a = idx_a, best_idx_b = idx_b;

    for (std::size_t i = 0; i < blocked; i += 8) {
      const __m256d da = sq_dist(qx, qy, qz, xs + i, ys + i, zs + i);
      const __m256d db = sq_dist(qx, qy, qz, xs + i + 4, ys + i + 4, zs + i + 4);
      const __m256d ma = _mm256_cmp_pd(da, best_a, _CMP_LT_OQ);
      const __m256d mb = _mm256_cmp_pd(db, best_b, _CMP_LT_OQ);
      best_a = _mm256_blendv_pd(best_a, da, ma);
      best_b = _mm256_blendv_pd(best_b, db, mb);
      best_idx_a = _mm256_castpd_si256(
          _mm256_blendv_pd(_mm256_castsi256_pd(best_idx_a), _mm256_castsi256_pd(idx_a), ma));
      best_idx_b = _mm256_castpd_si256(
          _mm256_blendv_pd(_mm256_castsi256_pd(best_idx_b), _mm256_castsi256_pd(idx_b), mb));
      idx_a = _mm256_add_epi64(idx_a, step);
      idx_b = _mm256_add_epi64(idx_b, step);
    }

    alignas(32) double lane_d[8];
    alignas(32) long long lane_i[8];
    _mm256_store_pd(lane_d, best_a);
    _mm256_store_pd(lane_d + 4, best_b);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane_i), best_idx_a);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane_i + 4), best_idx_b);

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    if (blocked > 0) {
      for (int l = 0; l < 8; ++l) take_better(lane_d[l], static_cast<std::size_t>(lane_i[l]), best, best_index);
    }
    const double px = queries[k].x(), py = queries[k].y(), pz = queries[k].z();
    for (std::size_t i = blocked; i < n; ++i) {
      const double dx = px - xs[i];
      const double dy = py - ys[i];
      const double dz = pz - zs[i];
      const double d = (dx * dx + dy * dy) + dz * dz;
      if (d < best) {
        best = d;
        best_index = i;
      }
    }
    out[k] = {best_index, best};
  }
}

double min_squared_distance(const PointsSoA& target, std::span<const Vec3> queries) {
  const std::size_t n = target.size();
  const std::size_t blocked = n - n % 8;
  const double* xs = target.x.data();
  const double* ys = target.y.data();
  const double* zs = target.z.data();
  __m256d best_a = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d best_b = best_a;
  double best = std::numeric_limits<double>::infinity();

  for (const Vec3& q : queries) {
    const __m256d qx = _mm256_set1_pd(q.x());
    const __m256d qy = _mm256_set1_pd(q.y());
    const __m256d qz = _mm256_set1_pd(q.z());
    for (std::size_t i = 0; i < blocked; i += 8) {
      best_a = _mm256_min_pd(best_a, sq_dist(qx, qy, qz, xs + i, ys + i, zs + i));
      best_b = _mm256_min_pd(best_b, sq_dist(qx, qy, qz, xs + i + 4, ys + i + 4, zs + i + 4));
    }
    for (std::size_t i = blocked; i < n; ++i) {
      const double dx = q.x() - xs[i];
      const double dy = q.y() - ys[i];
      const double dz = q.z() - zs[i];
      const double d = (dx * dx + dy * dy) + dz * dz;
      if (d < best) best = d;
    }
  }
  alignas(32) double lanes[8];
  _mm256_store_pd(lanes, best_a);
  _mm256_store_pd(lanes + 4, best_b);
  for (double d : lanes) {
    if (d < best) best = d;
  }
  return best;
}

#else

void nearest_neighbors(const PointsSoA& target, std::span<const Vec3> queries, std::span<Nearest> out) {
  scalar::nearest_neighbors(target, queries, out);
}

double min_squared_distance(const PointsSoA& target, std::span<const Vec3> queries) {
  return scalar::min_squared_distance(target, queries);
}

#endif

}  // namespace sgbot::simd::avx2
