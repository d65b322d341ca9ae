#pragma once

#include <algorithm>
#include <cmath>

namespace hjhom {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// 90-degree rotation used throughout: x_hat = (x2, -x1).
inline Vec2 hat(Vec2 p) { return {p.y, -p.x}; }

/// Closed axis-aligned box [x0,x1] x [y0,y1].
struct Box {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  bool contains(Vec2 p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
  bool intersects(const Box& o) const {
    return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1;
  }
  Box shrunk(double margin) const {
    return {x0 + margin, y0 + margin, x1 - margin, y1 - margin};
  }
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }

  static Box centered(Vec2 c, double half_w, double half_h) {
    return {c.x - half_w, c.y - half_h, c.x + half_w, c.y + half_h};
  }
};

}  // namespace hjhom
