#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace llma {

// 2D point / vector in normalized table units. The table is the unit square
// [0,1]x[0,1], x rightward, y upward, origin at the bottom-left corner.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend Vec2 operator*(double s, Vec2 a) { return a * s; }
  friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

using Point2 = Vec2;

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

inline Vec2 normalized(Vec2 a) {
  const double n = norm(a);
  return n > 0.0 ? Vec2{a.x / n, a.y / n} : Vec2{0.0, 0.0};
}

inline bool finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

inline Point2 clamp_to_unit(Point2 p) {
  return {std::clamp(p.x, 0.0, 1.0), std::clamp(p.y, 0.0, 1.0)};
}

inline bool inside_unit(Point2 p) {
  return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

// Axis-aligned unit vector closest to a; ties resolve to the x axis.
inline Vec2 dominant_axis(Vec2 a) {
  if (std::abs(a.x) >= std::abs(a.y)) return {a.x >= 0.0 ? 1.0 : -1.0, 0.0};
  return {0.0, a.y >= 0.0 ? 1.0 : -1.0};
}

// Surface distance between two axis-aligned squares given their centers and
// half extents; zero when they overlap or touch.
inline double square_gap(Point2 ca, double ha, Point2 cb, double hb) {
  const double gx = std::max(0.0, std::abs(ca.x - cb.x) - (ha + hb));
  const double gy = std::max(0.0, std::abs(ca.y - cb.y) - (ha + hb));
  return std::hypot(gx, gy);
}

// Fixed 3-decimal coordinate printing; the one format used in prompts,
// scene descriptions, and golden files.
inline std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

inline std::string fmt_point(Point2 p) {
  return "(" + fmt_coord(p.x) + ", " + fmt_coord(p.y) + ")";
}

}  // namespace llma
