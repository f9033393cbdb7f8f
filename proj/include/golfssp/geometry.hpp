#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <cstdint>
#include <vector>

namespace golfssp {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point2, Point2) = default;
};

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Target-aligned frame: the world->canonical rotation maps (pin - origin)
/// onto (0, distance). Canonical +x is the right of the target line.
struct CanonicalFrame {
  Point2 origin;
  // Row-major 2x2 rotation, det = +1.
  std::array<double, 4> rotation{1.0, 0.0, 0.0, 1.0};
  double distance = 0.0;
};

/// Throws DegenerateFrame when origin == pin, NonFiniteValue on NaN/Inf input.
CanonicalFrame canonical_frame(Point2 origin, Point2 pin);

/// Frame aimed along `heading` (radians, counter-clockwise from world +x).
CanonicalFrame heading_frame(Point2 origin, double heading, double distance);

Point2 to_canonical(const CanonicalFrame& frame, Point2 p);
Point2 from_canonical(const CanonicalFrame& frame, Point2 sample);

struct CellCoord {
  std::int32_t row = 0;
  std::int32_t col = 0;

  friend auto operator<=>(const CellCoord&, const CellCoord&) = default;
};

/// Cell containing `p` for square cells of side `cell_size`; boundaries belong
/// to the higher-index cell.
inline CellCoord cell_of(Point2 p, double cell_size) {
  return {static_cast<std::int32_t>(std::floor(p.y / cell_size)),
          static_cast<std::int32_t>(std::floor(p.x / cell_size))};
}

inline Point2 cell_center(CellCoord c, double cell_size) {
  return {(c.col + 0.5) * cell_size, (c.row + 0.5) * cell_size};
}

/// Visits the 8-connected cells of the digital segment a->b in order from a.
/// The visitor returns false to stop early. Along the dominant axis each cell
/// takes the minor coordinate of the exact line rounded half-up, so ties
/// resolve toward the larger minor-axis index and the cell set does not
/// depend on direction.
template <typename Visitor>
void traverse_line(CellCoord a, CellCoord b, Visitor&& visit) {
  const std::int64_t dr = static_cast<std::int64_t>(b.row) - a.row;
  const std::int64_t dc = static_cast<std::int64_t>(b.col) - a.col;
  const bool row_major = std::abs(dr) >= std::abs(dc);
  const std::int64_t major_delta = row_major ? dr : dc;
  const std::int64_t minor_delta = row_major ? dc : dr;
  const std::int64_t steps = std::abs(major_delta);
  const std::int64_t major_step = major_delta >= 0 ? 1 : -1;
  // minor(i) = minor0 + floor((2*i*m + n) / (2n)), i counting major steps
  // from a; err = 2*i*m + n - 2n*q stays in [0, 2n).
  const std::int64_t n = steps == 0 ? 1 : steps;
  const std::int64_t m = minor_delta;
  std::int64_t major = row_major ? a.row : a.col;
  const std::int64_t minor = row_major ? a.col : a.row;
  std::int64_t err = n;
  std::int64_t q = 0;
  for (std::int64_t i = 0; i <= steps; ++i) {
    const CellCoord cell = row_major ? CellCoord{static_cast<std::int32_t>(major),
                                                 static_cast<std::int32_t>(minor + q)}
                                     : CellCoord{static_cast<std::int32_t>(minor + q),
                                                 static_cast<std::int32_t>(major)};
    if (!visit(cell)) return;
    major += major_step;
    err += 2 * m;
    if (err >= 2 * n) {
      err -= 2 * n;
      ++q;
    } else if (err < 0) {
      err += 2 * n;
      --q;
    }
  }
}

/// Ordered cells from a to b; length max(|drow|, |dcol|) + 1.
std::vector<CellCoord> bresenham_cells(CellCoord a, CellCoord b);

}  // namespace golfssp
