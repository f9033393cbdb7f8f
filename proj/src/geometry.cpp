#include "golfssp/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "golfssp/errors.hpp"

namespace golfssp {
namespace {

void require_finite(Point2 p, const char* what) {
  if (!is_finite(p)) throw NonFiniteValue(std::string("non-finite ") + what);
}

CanonicalFrame frame_from_unit(Point2 origin, double ux, double uy, double distance) {
  CanonicalFrame f;
  f.origin = origin;
  // Rows of R: R * (ux, uy) = (0, 1), det R = ux^2 + uy^2 = 1.
  f.rotation = {uy, -ux, ux, uy};
  f.distance = distance;
  return f;
}

}  // namespace

CanonicalFrame canonical_frame(Point2 origin, Point2 pin) {
  require_finite(origin, "frame origin");
  require_finite(pin, "frame target");
  const Point2 v = pin - origin;
  const double d = norm(v);
  if (d == 0.0) throw DegenerateFrame("canonical frame: origin coincides with target");
  return frame_from_unit(origin, v.x / d, v.y / d, d);
}

CanonicalFrame heading_frame(Point2 origin, double heading, double distance) {
  require_finite(origin, "frame origin");
  if (!std::isfinite(heading) || !std::isfinite(distance))
    throw NonFiniteValue("non-finite heading or distance");
  if (distance < 0.0) throw DegenerateFrame("heading frame: negative distance");
  return frame_from_unit(origin, std::cos(heading), std::sin(heading), distance);
}

Point2 to_canonical(const CanonicalFrame& f, Point2 p) {
  require_finite(p, "point");
  const Point2 v = p - f.origin;
  const auto& r = f.rotation;
  return {r[0] * v.x + r[1] * v.y, r[2] * v.x + r[3] * v.y};
}

Point2 from_canonical(const CanonicalFrame& f, Point2 s) {
  require_finite(s, "sample");
  const auto& r = f.rotation;
  // Transpose of the world->canonical rotation.
  return {f.origin.x + r[0] * s.x + r[2] * s.y, f.origin.y + r[1] * s.x + r[3] * s.y};
}

std::vector<CellCoord> bresenham_cells(CellCoord a, CellCoord b) {
  std::vector<CellCoord> cells;
  cells.reserve(static_cast<std::size_t>(
                    std::max(std::abs(b.row - a.row), std::abs(b.col - a.col))) +
                1);
  traverse_line(a, b, [&](CellCoord c) {
    cells.push_back(c);
    return true;
  });
  return cells;
}

}  // namespace golfssp
