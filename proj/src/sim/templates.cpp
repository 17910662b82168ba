#include "sgbot/sim/templates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgbot/core/error.hpp"

namespace sgbot {
namespace {

constexpr int kFold = 12;

using Points = std::vector<Vec3>;

void ring(Points& out, double radius, double z, int count) {
  for (int k = 0; k < count; ++k) {
    const double a = 2.0 * kPi * k / count;
    out.emplace_back(radius * std::cos(a), radius * std::sin(a), z);
  }
}

// Filled disc of concentric rings; ring i carries 12*i points.
void disc(Points& out, double radius, double z, int rings) {
  out.emplace_back(0.0, 0.0, z);
  for (int i = 1; i <= rings; ++i) ring(out, radius * i / rings, z, kFold * i);
}

PointCloud finish(Points pts) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Vec3 lo(inf, inf, inf), hi(-inf, -inf, -inf);
  for (const Vec3& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Vec3 shift(-(lo.x() + hi.x()) / 2.0, -(lo.y() + hi.y()) / 2.0, -lo.z());
  PointCloud cloud;
  cloud.points.reserve(pts.size());
  for (const Vec3& p : pts) cloud.points.push_back(p + shift);
  return cloud;
}

PointCloud make_plate() {
  Points p;
  disc(p, 0.09, 0.0, 4);
  ring(p, 0.100, 0.006, 48);
  ring(p, 0.110, 0.012, 48);
  ring(p, 0.120, 0.018, 48);
  return finish(p);
}

PointCloud make_bowl() {
  Points p;
  disc(p, 0.03, 0.0, 2);
  for (int j = 1; j <= 7; ++j) {
    const double t = j / 7.0 * (kPi / 2);
    ring(p, 0.035 + 0.045 * std::sin(t), 0.065 * (1.0 - std::cos(t)), 36);
  }
  return finish(p);
}

PointCloud make_cup() {
  Points p;
  disc(p, 0.036, 0.0, 2);
  for (int j = 0; j <= 9; ++j) ring(p, 0.04, 0.01 * j, 24);
  return finish(p);
}

PointCloud make_bottle() {
  Points p;
  disc(p, 0.03, 0.0, 2);
  for (int j = 0; j <= 9; ++j) ring(p, 0.035, 0.017 * j, 24);
  ring(p, 0.028, 0.168, 24);
  ring(p, 0.020, 0.178, 12);
  for (int j = 0; j <= 3; ++j) ring(p, 0.014, 0.188 + 0.014 * j, 12);
  return finish(p);
}

PointCloud make_can() {
  Points p;
  disc(p, 0.03, 0.0, 2);
  for (int j = 0; j <= 8; ++j) ring(p, 0.033, 0.015 * j, 24);
  ring(p, 0.024, 0.12, 24);
  return finish(p);
}

// Open-top container; only the half-turn about z maps it onto itself.
PointCloud make_box() {
  Points p;
  const double hx = 0.08, hy = 0.05, h = 0.07;
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j <= 5; ++j) p.emplace_back(-hx + 2 * hx * i / 8, -hy + 2 * hy * j / 5, 0.0);
  }
  for (int k = 1; k <= 5; ++k) {
    const double z = h * k / 5;
    for (int i = 0; i <= 8; ++i) {
      const double x = -hx + 2 * hx * i / 8;
      p.emplace_back(x, -hy, z);
      p.emplace_back(x, hy, z);
    }
    for (int j = 1; j < 5; ++j) {
      const double y = -hy + 2 * hy * j / 5;
      p.emplace_back(-hx, y, z);
      p.emplace_back(hx, y, z);
    }
  }
  for (int i = 1; i < 8; ++i) {
    for (int j = 1; j < 5; ++j) p.emplace_back(-hx + 2 * hx * i / 8, -hy + 2 * hy * j / 5, h);
  }
  return finish(p);
}

// Graded spacing along a long axis; a uniform lattice lets ICP lock onto
// shifts of whole grid steps.
double graded(int i, int n) {
  const double s = static_cast<double>(i) / n;
  return (s + 0.6 * s * s) / 1.6;
}

// Two surface layers following a bent profile so the shape is not symmetric
// under a half-turn about its long axis.
template <typename HalfWidth, typename Height>
void slab(Points& out, double x0, double x1, int nx, int ny, HalfWidth half_width, Height height,
          double thickness) {
  for (int i = 0; i <= nx; ++i) {
    const double x = x0 + (x1 - x0) * graded(i, nx);
    const auto [ylo, yhi] = half_width(x);
    const double z = height(x);
    for (int j = 0; j <= ny; ++j) {
      const double y = ylo + (yhi - ylo) * j / ny;
      out.emplace_back(x, y, z);
      out.emplace_back(x, y, z + thickness);
    }
  }
}

PointCloud make_fork() {
  Points p;
  auto lift = [](double x) {
    const double head = std::max(0.0, (x - 0.03) / 0.06);
    const double tail = std::max(0.0, (-x - 0.05) / 0.04);
    return 0.012 * head * head + 0.006 * tail * tail;
  };
  slab(p, -0.09, 0.02, 30, 3, [](double) { return std::pair{-0.006, 0.006}; }, lift, 0.003);
  slab(p, 0.025, 0.05, 5, 5, [](double) { return std::pair{-0.0125, 0.0125}; }, lift, 0.003);
  for (double y : {-0.011, -0.0037, 0.0037, 0.011}) {
    for (int i = 1; i <= 12; ++i) {
      const double x = 0.05 + 0.04 * graded(i, 12);
      p.emplace_back(x, y, lift(x));
      p.emplace_back(x, y, lift(x) + 0.003);
    }
  }
  return finish(p);
}

PointCloud make_knife() {
  Points p;
  slab(p, -0.10, 0.0, 16, 3, [](double) { return std::pair{-0.008, 0.008}; }, [](double) { return 0.0; }, 0.012);
  slab(p, 0.005, 0.11, 20, 4,
       [](double x) {
         const double t = x / 0.11;
         return std::pair{-0.004, -0.004 + 0.018 * (1.0 - t * t) + 0.002};
       },
       [](double) { return 0.004; }, 0.002);
  return finish(p);
}

PointCloud make_spoon() {
  Points p;
  slab(p, -0.10, 0.015, 20, 2, [](double) { return std::pair{-0.006, 0.006}; },
       [](double x) {
         const double t = std::max(0.0, (-x - 0.04) / 0.06);
         return 0.01 * t * t;
       },
       0.003);
  const double cx = 0.055, ax = 0.035, ay = 0.022;
  for (int i = 0; i <= 5; ++i) {
    const double rho = i / 5.0;
    const int count = i == 0 ? 1 : 6 * i;
    for (int k = 0; k < count; ++k) {
      const double a = 2.0 * kPi * (k + 0.5 * (i % 2)) / count;
      const double z = 0.002 + 0.016 * rho * rho;
      p.emplace_back(cx + ax * rho * std::cos(a), ay * rho * std::sin(a), z);
    }
  }
  return finish(p);
}

PointCloud make_teapot() {
  Points p;
  const double a = 0.09, b = 0.07, c = 0.065;
  for (int i = 0; i <= 10; ++i) {
    const double v = -kPi / 2 + kPi * i / 10;
    const int count = i == 0 || i == 10 ? 1 : 24;
    for (int k = 0; k < count; ++k) {
      const double u = 2.0 * kPi * k / count;
      p.emplace_back(a * std::cos(v) * std::cos(u), b * std::cos(v) * std::sin(u), c + c * std::sin(v));
    }
  }
  // Spout rising along +x.
  for (int i = 0; i <= 8; ++i) {
    const double t = i / 8.0;
    const Vec3 axis(0.08 + 0.07 * t, 0.0, 0.05 + 0.06 * t);
    const double r = 0.014 - 0.006 * t;
    for (int k = 0; k < 6; ++k) {
      const double u = 2.0 * kPi * k / 6;
      p.push_back(axis + Vec3(0.0, r * std::cos(u), r * std::sin(u)));
    }
  }
  // Handle loop on -x.
  for (int i = 0; i <= 12; ++i) {
    const double t = kPi * i / 12;
    const Vec3 axis(-0.085 - 0.04 * std::sin(t), 0.0, 0.1 - 0.065 * (1.0 - std::cos(t)) / 2.0);
    for (int k = 0; k < 4; ++k) {
      const double u = 2.0 * kPi * k / 4;
      p.push_back(axis + Vec3(0.006 * std::cos(u), 0.006 * std::sin(u), 0.0));
    }
  }
  // Lid knob.
  ring(p, 0.012, 0.135, 8);
  p.emplace_back(0.0, 0.0, 0.145);
  return finish(p);
}

std::vector<ObjectTemplate> build() {
  return {
      {"plate", make_plate(), Symmetry::kZRotInf},   {"bowl", make_bowl(), Symmetry::kZRotInf},
      {"cup", make_cup(), Symmetry::kZRotInf},       {"fork", make_fork(), Symmetry::kNone},
      {"knife", make_knife(), Symmetry::kNone},      {"spoon", make_spoon(), Symmetry::kNone},
      {"bottle", make_bottle(), Symmetry::kZRotInf}, {"can", make_can(), Symmetry::kZRotInf},
      {"box", make_box(), Symmetry::kZRot180},       {"teapot", make_teapot(), Symmetry::kNone},
  };
}

}  // namespace

std::string_view to_string(Symmetry s) {
  switch (s) {
    case Symmetry::kNone: return "none";
    case Symmetry::kZRot180: return "z_rot_180";
    case Symmetry::kZRotInf: return "z_rot_inf";
  }
  return "?";
}

Symmetry parse_symmetry(std::string_view s) {
  if (s == "none") return Symmetry::kNone;
  if (s == "z_rot_180") return Symmetry::kZRot180;
  if (s == "z_rot_inf") return Symmetry::kZRotInf;
  throw Error(ErrorCode::kInvalidArgument, "unknown symmetry '" + std::string(s) + "'");
}

const std::vector<ObjectTemplate>& standard_templates() {
  static const std::vector<ObjectTemplate> templates = build();
  return templates;
}

const ObjectTemplate* find_template(std::string_view category) {
  for (const auto& t : standard_templates()) {
    if (t.category == category) return &t;
  }
  return nullptr;
}

Symmetry category_symmetry(std::string_view category) {
  const ObjectTemplate* t = find_template(category);
  return t ? t->symmetry : Symmetry::kNone;
}

}  // namespace sgbot
