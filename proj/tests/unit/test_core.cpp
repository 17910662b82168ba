#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "sgbot/core/error.hpp"
#include "sgbot/core/geometry.hpp"
#include "sgbot/core/scene_graph.hpp"

using namespace sgbot;

TEST_CASE("apply_transform examples") {
  std::mt19937_64 rng(1);
  const PointCloud cloud = test::random_cloud(rng, 20, 1.0);
  const PointCloud same = apply_transform(RigidTransform::identity(), cloud);
  for (std::size_t i = 0; i < cloud.size(); ++i) CHECK(same.points[i] == cloud.points[i]);

  PointCloud origin;
  origin.points.push_back(Vec3::Zero());
  const PointCloud moved = apply_transform(RigidTransform::from_translation(Vec3(0.1, 0, 0)), origin);
  CHECK(moved.points[0] == Vec3(0.1, 0, 0));

  PointCloud x;
  x.points.emplace_back(1, 0, 0);
  const PointCloud turned = apply_transform({rot_z(kPi / 2), Vec3::Zero()}, x);
  const Mat3 by_hand = (Mat3() << 0, -1, 0, 1, 0, 0, 0, 0, 1).finished();
  CHECK((turned.points[0] - by_hand * Vec3(1, 0, 0)).norm() < 1e-12);
  CHECK((turned.points[0] - Vec3(0, 1, 0)).norm() < 1e-12);
}

TEST_CASE("apply_transform keeps pairwise distances") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const PointCloud c = test::random_cloud(rng, 12, 2.0);
    const RigidTransform t{test::random_rotation(rng), test::random_vec(rng, 3.0)};
    const PointCloud m = apply_transform(t, c);
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        CHECK(std::abs((c.points[i] - c.points[j]).norm() - (m.points[i] - m.points[j]).norm()) < 1e-9);
      }
    }
  }
}

TEST_CASE("compose examples") {
  std::mt19937_64 rng(3);
  const RigidTransform t{test::random_rotation(rng), test::random_vec(rng, 1.0)};
  const RigidTransform a = compose(t, RigidTransform::identity());
  CHECK(a.rotation.isApprox(t.rotation, 1e-15));
  CHECK(a.translation.isApprox(t.translation, 1e-15));
  const RigidTransform id = compose(invert(t), t);
  CHECK((id.rotation - Mat3::Identity()).norm() < 1e-9);
  CHECK(id.translation.norm() < 1e-9);

  for (double x : {-3.0, -1.2, 0.4, 2.9}) {
    for (double y : {-2.5, 0.7, 3.1}) {
      const RigidTransform rx{rot_z(x), Vec3::Zero()}, ry{rot_z(y), Vec3::Zero()};
      const double sum = wrap_angle(x + y);
      CHECK(sum >= -kPi);
      CHECK(sum < kPi);
      CHECK((compose(rx, ry).rotation - rot_z(sum)).norm() < 1e-12);
      CHECK(std::abs(wrap_angle(yaw_of(compose(rx, ry).rotation) - sum)) < 1e-12);
    }
  }
}

TEST_CASE("invert is an involution and compose is associative") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const RigidTransform a{test::random_rotation(rng), test::random_vec(rng, 1.0)};
    const RigidTransform b{test::random_rotation(rng), test::random_vec(rng, 1.0)};
    const RigidTransform c{test::random_rotation(rng), test::random_vec(rng, 1.0)};
    const RigidTransform aa = invert(invert(a));
    CHECK((aa.rotation - a.rotation).norm() < 1e-9);
    CHECK((aa.translation - a.translation).norm() < 1e-9);
    const RigidTransform l = compose(compose(a, b), c), r = compose(a, compose(b, c));
    CHECK((l.rotation - r.rotation).norm() < 1e-9);
    CHECK((l.translation - r.translation).norm() < 1e-9);
    CHECK(l.is_proper());
  }
}

TEST_CASE("box_from_cloud examples") {
  const Box3 cube = box_from_cloud(test::cube_corners(), YawMode::kAxisAligned);
  CHECK(cube.center.norm() < 1e-12);
  CHECK((cube.half_extents - Vec3::Constant(0.5)).norm() < 1e-12);
  CHECK(cube.yaw == 0.0);
  const Box3 principal = box_from_cloud(test::cube_corners(), YawMode::kPrincipalAxis);
  CHECK(principal.yaw == 0.0);
  CHECK((principal.half_extents - Vec3::Constant(0.5)).norm() < 1e-12);

  const Box3 moved = box_from_cloud(test::cube_corners(Vec3(1, 0, 0)), YawMode::kAxisAligned);
  CHECK((moved.center - Vec3(1, 0, 0)).norm() < 1e-12);
  CHECK((moved.half_extents - Vec3::Constant(0.5)).norm() < 1e-12);

  PointCloud stick;
  const Vec3 dir(std::cos(0.3), std::sin(0.3), 0.0);
  const Vec3 side(-std::sin(0.3), std::cos(0.3), 0.0);
  for (int i = 0; i <= 40; ++i) {
    for (int s : {-1, 1}) stick.points.push_back(dir * (-0.1 + 0.005 * i) + side * (0.005 * s) + Vec3(0, 0, 0.002 * (i % 2)));
  }
  // Covariance oracle: principal eigenvector angle 0.5 * atan2(2 sxy, sxx - syy).
  const Vec3 m = centroid(stick.points);
  double sxx = 0, syy = 0, sxy = 0;
  for (const Vec3& p : stick.points) {
    sxx += (p.x() - m.x()) * (p.x() - m.x());
    syy += (p.y() - m.y()) * (p.y() - m.y());
    sxy += (p.x() - m.x()) * (p.y() - m.y());
  }
  const double oracle = 0.5 * std::atan2(2 * sxy, sxx - syy);
  const Box3 b = box_from_cloud(stick, YawMode::kPrincipalAxis);
  CHECK(std::abs(b.yaw - 0.3) < 0.01);
  CHECK(std::abs(b.yaw - oracle) < 1e-9);
}

TEST_CASE("box_from_cloud contains every input point") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const PointCloud c = apply_transform({rot_z(trial * 0.1), test::random_vec(rng, 1.0)}, test::random_cloud(rng, 30, 0.2));
    for (YawMode mode : {YawMode::kAxisAligned, YawMode::kPrincipalAxis}) {
      const Box3 b = box_from_cloud(c, mode);
      CHECK(b.is_valid());
      CHECK(b.yaw >= -kPi);
      CHECK(b.yaw < kPi);
      for (const Vec3& p : c.points) CHECK(b.contains(p, 1e-9));
    }
  }
}

TEST_CASE("box_from_cloud rejects degenerate clouds") {
  PointCloud two;
  two.points = {Vec3::Zero(), Vec3(1, 0, 0)};
  CHECK_THROWS_AS(box_from_cloud(two, YawMode::kAxisAligned), Error);
  PointCloud line;
  for (int i = 0; i < 5; ++i) line.points.emplace_back(i, 0, 0);
  try {
    box_from_cloud(line, YawMode::kPrincipalAxis);
    FAIL("expected DegenerateCloud");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateCloud);
  }
}

TEST_CASE("fit_rigid recovers random transforms") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const PointCloud c = test::random_cloud(rng, 15, 1.0);
    const RigidTransform t{test::random_rotation(rng), test::random_vec(rng, 2.0)};
    const RigidTransform fit = fit_rigid(c.points, apply_transform(t, c).points);
    CHECK((fit.rotation - t.rotation).norm() < 1e-9);
    CHECK((fit.translation - t.translation).norm() < 1e-9);
    CHECK(fit.is_proper());
  }
}

TEST_CASE("geodesic angle and projection") {
  CHECK(std::abs(geodesic_angle(Mat3::Identity(), rot_z(0.2)) - 0.2) < 1e-12);
  CHECK(std::abs(geodesic_angle(rot_x(0.5), rot_x(-0.5)) - 1.0) < 1e-12);
  const Mat3 noisy = rot_y(0.4) + 1e-4 * Mat3::Ones();
  const Mat3 p = project_to_so3(noisy);
  CHECK(RigidTransform{p, Vec3::Zero()}.is_proper(1e-12));
  CHECK(wrap_angle(kPi) == doctest::Approx(-kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(-kPi));
}

TEST_CASE("relation labels") {
  CHECK(kAllRelations.size() == 6);
  CHECK(inverse(RelationLabel::kLeft) == RelationLabel::kRight);
  CHECK(inverse(RelationLabel::kFront) == RelationLabel::kBehind);
  CHECK(inverse(RelationLabel::kCloseBy) == RelationLabel::kCloseBy);
  CHECK_FALSE(inverse(RelationLabel::kStandingOn).has_value());
  for (RelationLabel r : kAllRelations) {
    if (auto i = inverse(r)) CHECK(inverse(*i) == r);
    CHECK(parse_relation(to_string(r)) == r);
  }
  CHECK_FALSE(parse_relation("above").has_value());
}

TEST_CASE("scene graph invariants") {
  const std::vector<GraphNode> nodes{{1, "plate"}, {2, "fork"}};
  CHECK_NOTHROW(SceneGraph(nodes, {{2, 1, RelationLabel::kLeft}}));
  auto code_of = [&](std::vector<GraphNode> n, std::vector<GraphEdge> e) {
    try {
      SceneGraph g(std::move(n), std::move(e));
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  CHECK(code_of(nodes, {{1, 1, RelationLabel::kLeft}}) == ErrorCode::kInvariantViolation);
  CHECK(code_of(nodes, {{2, 3, RelationLabel::kLeft}}) == ErrorCode::kInvariantViolation);
  CHECK(code_of(nodes, {{2, 1, RelationLabel::kLeft}, {2, 1, RelationLabel::kLeft}}) == ErrorCode::kInvariantViolation);
  CHECK(code_of({{1, "plate"}, {1, "cup"}}, {}) == ErrorCode::kInvariantViolation);
  CHECK(SceneGraph::check(nodes, {{1, 2, RelationLabel::kRight}}).empty());
}

TEST_CASE("error names") {
  CHECK(error_name(ErrorCode::kInvariantViolation) == "InvariantViolation");
  CHECK(error_slug(ErrorCode::kFileNotFound) == "file_not_found");
  CHECK(error_slug(ErrorCode::kLayoutInfeasible) == "layout_infeasible");
  const Error e(ErrorCode::kUnknownReference, "edge", 3);
  CHECK(e.index() == 3u);
  CHECK(e.detail() == "edge");
}
