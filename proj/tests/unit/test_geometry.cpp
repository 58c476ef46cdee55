#include <cmath>
#include <random>

#include "doctest.h"
#include "jointgaze/errors.hpp"
#include "jointgaze/geometry.hpp"

using namespace jointgaze;

TEST_CASE("pixel_scale_at_face uses the 0.15 m face width") {
  CHECK(pixel_scale_at_face(50).meters_per_pixel == 0.15 / 50);
  CHECK(pixel_scale_at_face(50).meters_per_pixel == doctest::Approx(0.003).epsilon(1e-15));
  CHECK(pixel_scale_at_face(150).meters_per_pixel == doctest::Approx(0.001).epsilon(1e-15));
  CHECK_THROWS_AS(pixel_scale_at_face(0), InvalidFaceError);
  CHECK_THROWS_AS(pixel_scale_at_face(-3), InvalidFaceError);
}

TEST_CASE("gaze_projection_2d") {
  const auto a = gaze_projection_2d(GazeVector(0.6, 0, 0.8));
  REQUIRE(a);
  CHECK(a->x == doctest::Approx(1.0));
  CHECK(a->y == doctest::Approx(0.0));
  const auto b = gaze_projection_2d(GazeVector(0, -0.6, 0.8));
  REQUIRE(b);
  CHECK(b->x == doctest::Approx(0.0));
  CHECK(b->y == doctest::Approx(-1.0));
  CHECK_FALSE(gaze_projection_2d(GazeVector(0, 0, 1)));
  // Just below the threshold is degenerate, just above is not.
  CHECK_FALSE(gaze_projection_2d(GazeVector::from_direction({0.0009, 0, 1})));
  CHECK(gaze_projection_2d(GazeVector::from_direction({0.0011, 0, 1})));
}

TEST_CASE("GazeVector rejects non-unit components") {
  CHECK_THROWS_AS(GazeVector(0.707, 0, 0.707), PreconditionError);
  CHECK_THROWS_AS(GazeVector::from_direction({0, 0, 0}), PreconditionError);
}

TEST_CASE("ray_depth_at_pixel worked examples") {
  const PixelScale s{0.003};
  CHECK(std::abs(ray_depth_at_pixel({200, 100}, 2.0, GazeVector::from_direction({0.707, 0, 0.707}), s, {300, 100}) -
                 2.3) < 1e-9);
  CHECK(std::abs(ray_depth_at_pixel({200, 100}, 2.0, GazeVector(0.6, 0, -0.8), s, {300, 100}) - 1.6) < 1e-9);
  CHECK(std::abs(ray_depth_at_pixel({200, 100}, 2.0, GazeVector(0, 0.6, 0.8), s, {200, 150}) - 2.2) < 1e-9);
}

TEST_CASE("ray_depth_at_pixel preconditions") {
  const PixelScale s{0.003};
  CHECK_THROWS_AS(ray_depth_at_pixel({200, 100}, 2.0, GazeVector(0, 0, 1), s, {300, 100}), PreconditionError);
  CHECK_THROWS_AS(ray_depth_at_pixel({200, 100}, 2.0, GazeVector(0.6, 0, 0.8), s, {100, 100}), PreconditionError);
  CHECK_THROWS_AS(ray_depth_at_pixel({200, 100}, 2.0, GazeVector(0.6, 0, 0.8), s, {200, 100}), PreconditionError);
}

TEST_CASE("ray_depth_at_pixel properties on random inputs") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_real_distribution<double> pos(0.5, 6);
  for (int i = 0; i < 2000; ++i) {
    const GazeVector g = GazeVector::from_direction({u(rng), u(rng), u(rng)});
    const auto dir = gaze_projection_2d(g);
    if (!dir) continue;
    const Vec2 eye{u(rng) * 300 + 320, u(rng) * 200 + 240};
    const double z0 = pos(rng);
    const PixelScale s{pos(rng) * 1e-3};
    const double t = pos(rng) * 20;
    const Vec2 p1 = eye + t * *dir;
    const Vec2 p2 = eye + 2 * t * *dir;
    const double d1 = ray_depth_at_pixel(eye, z0, g, s, p1) - z0;
    const double d2 = ray_depth_at_pixel(eye, z0, g, s, p2) - z0;
    CHECK(d2 == doctest::Approx(2 * d1).epsilon(1e-9).scale(1e-12));
    const double dk = ray_depth_at_pixel(eye, z0, g, PixelScale{3 * s.meters_per_pixel}, p1) - z0;
    CHECK(dk == doctest::Approx(3 * d1).epsilon(1e-9).scale(1e-12));
  }
}

TEST_CASE("fronto-parallel gaze keeps the face depth") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 200; ++i) {
    const GazeVector g = GazeVector::from_direction({u(rng), u(rng), 0.0});
    const Vec2 eye{100, 100};
    const Vec2 p = eye + (5 + 50 * std::abs(u(rng))) * *gaze_projection_2d(g);
    CHECK(ray_depth_at_pixel(eye, 2.5, g, PixelScale{0.004}, p) == 2.5);
  }
}

// The similar-triangles depth is a weak-perspective estimate. With the exact
// per-pixel scale Z0/f, evaluating it at the projection of q = head + t*g
// differs from q.z by -dz^2 * q_a / (d_a * q.z) (a = dominant axis, d = q - head).
// It is exact when q lies on the plane a = 0.
TEST_CASE("weak-perspective error matches its closed form") {
  const CameraModel cam{500.0, {320.0, 240.0}, 640, 480};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  int checked = 0;
  for (int i = 0; i < 5000 && checked < 500; ++i) {
    const Vec3 head{u(rng), 0.6 * u(rng), 2.5 + u(rng)};
    const GazeVector g = GazeVector::from_direction({u(rng), u(rng), 0.8 * u(rng)});
    const bool use_x = std::abs(g.x()) >= std::abs(g.y());
    const double ga = use_x ? g.x() : g.y();
    if (std::abs(ga) < 0.1) continue;
    const double t = 0.2 + 1.5 * std::abs(u(rng));
    const Vec3 q = head + t * g.vec();
    if (q.z <= 0.3) continue;
    const Vec2 eye = project_world_point(cam, head);
    const Vec2 pq = project_world_point(cam, q);
    if ((pq - eye).dot(*gaze_projection_2d(g)) <= 0) continue;
    const double est = ray_depth_at_pixel(eye, head.z, g, PixelScale{head.z / cam.focal_px}, pq);
    const Vec3 d = q - head;
    const double qa = use_x ? q.x : q.y;
    const double da = use_x ? d.x : d.y;
    const double predicted_error = -d.z * d.z * qa / (da * q.z);
    CHECK(est - q.z == doctest::Approx(predicted_error).epsilon(1e-6).scale(1e-9));
    ++checked;
  }
  CHECK(checked == 500);

  // On the a = 0 plane the estimate is exact.
  for (int i = 0; i < 200; ++i) {
    const Vec3 head{0.3 + std::abs(u(rng)), 0.2 * u(rng), 2.0 + std::abs(u(rng))};
    const GazeVector g = GazeVector::from_direction({-(0.5 + 0.5 * std::abs(u(rng))), 0.2 * u(rng), u(rng)});
    const double t = -head.x / g.x();
    const Vec3 q = head + t * g.vec();
    if (q.z <= 0.3) continue;
    const double est = ray_depth_at_pixel(project_world_point(cam, head), head.z, g,
                                          PixelScale{head.z / cam.focal_px}, project_world_point(cam, q));
    CHECK(std::abs(est - q.z) <= 1e-6 * (1 + std::abs(q.z)));
  }
}

TEST_CASE("project_world_point") {
  const CameraModel cam{500.0, {320.0, 240.0}, 640, 480};
  const Vec2 a = project_world_point(cam, {0.3, 0, 2.0});
  CHECK(a.x == doctest::Approx(395));
  CHECK(a.y == doctest::Approx(240));
  const Vec2 b = project_world_point(cam, {0, 0, 1.0});
  CHECK(b.x == 320);
  CHECK(b.y == 240);
  CHECK_THROWS_AS(project_world_point(cam, {0, 0, -1}), BehindCameraError);
  CHECK_THROWS_AS(project_world_point(cam, {0, 0, 0}), BehindCameraError);
}

TEST_CASE("project and unproject round-trip") {
  const CameraModel cam{612.5, {311.0, 250.5}, 640, 480};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 px{u(rng) * 640, u(rng) * 480};
    const double z = 0.5 + 10 * u(rng);
    const Vec2 back = project_world_point(cam, unproject_pixel(cam, px, z));
    CHECK((back - px).norm() < 1e-6);
  }
}

TEST_CASE("angular_error_deg") {
  const GazeVector x(1, 0, 0), y(0, 1, 0), z(0, 0, 1), mz(0, 0, -1);
  CHECK(angular_error_deg(x, x) == 0.0);
  CHECK(angular_error_deg(x, y) == doctest::Approx(90.0));
  CHECK(angular_error_deg(z, mz) == doctest::Approx(180.0));

  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  for (int i = 0; i < 2000; ++i) {
    const auto a = GazeVector::from_direction({n(rng), n(rng), n(rng)});
    const auto b = GazeVector::from_direction({n(rng), n(rng), n(rng)});
    const auto c = GazeVector::from_direction({n(rng), n(rng), n(rng)});
    CHECK(angular_error_deg(a, b) == angular_error_deg(b, a));
    CHECK(angular_error_deg(a, c) <= angular_error_deg(a, b) + angular_error_deg(b, c) + 1e-9);
    const double e = angular_error_deg(a, b);
    CHECK(e >= 0.0);
    CHECK(e <= 180.0);
  }
}
