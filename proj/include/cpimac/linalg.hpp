// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace cpimac {

// 2x1 real vector. Everything in the real-valued signal space is 2D (the
// [Re; Im] form of a complex scalar), so fixed-size types beat a matrix
// library here.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double norm_sq(Vec2 v) { return dot(v, v); }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

// Determinant of the 2x2 matrix with columns a and b; zero iff a, b are
// linearly dependent.
constexpr double det(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Counter-clockwise quarter turn; spans the orthogonal complement of v.
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

// 2x2 real matrix, row-major.
struct Mat2 {
  double a = 0.0, b = 0.0;  // [ a b ]
  double c = 0.0, d = 0.0;  // [ c d ]

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

constexpr Vec2 operator*(const Mat2& m, Vec2 v) {
  return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}

constexpr Mat2 operator*(const Mat2& m, const Mat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
          m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

constexpr Mat2 operator*(double s, const Mat2& m) {
  return {s * m.a, s * m.b, s * m.c, s * m.d};
}

constexpr Mat2 operator+(const Mat2& m, const Mat2& n) {
  return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
}

constexpr Mat2 operator-(const Mat2& m, const Mat2& n) {
  return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
}

constexpr Mat2 transpose(const Mat2& m) { return {m.a, m.c, m.b, m.d}; }

constexpr double det(const Mat2& m) { return m.a * m.d - m.b * m.c; }

// Largest absolute entry of m; cheap matrix norm for closeness checks.
inline double max_abs(const Mat2& m) {
  return std::max(std::max(std::fabs(m.a), std::fabs(m.b)),
                  std::max(std::fabs(m.c), std::fabs(m.d)));
}

}  // namespace cpimac
