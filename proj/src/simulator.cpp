#include "golfssp/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "golfssp/errors.hpp"

namespace golfssp {

std::string_view to_string(ShotEvent e) {
  switch (e) {
    case ShotEvent::CLEAN: return "CLEAN";
    case ShotEvent::TREE_STOP: return "TREE_STOP";
    case ShotEvent::WATER_DROP: return "WATER_DROP";
    case ShotEvent::OOB_RETURN: return "OOB_RETURN";
  }
  return "UNKNOWN";
}

CellCoord clipped_endpoint_cell(const HoleRaster& raster, CellCoord start, Point2 endpoint) {
  if (!is_finite(endpoint)) throw NonFiniteValue("non-finite shot endpoint");
  const Point2 from = raster.center(start);
  const double w = raster.width();
  const double h = raster.height();
  Point2 p = endpoint;
  if (p.x < 0.0 || p.x >= w || p.y < 0.0 || p.y >= h) {
    const Point2 v = endpoint - from;
    double t = 1.0;
    if (p.x < 0.0) t = std::min(t, -from.x / v.x);
    if (p.x >= w) t = std::min(t, (w - from.x) / v.x);
    if (p.y < 0.0) t = std::min(t, -from.y / v.y);
    if (p.y >= h) t = std::min(t, (h - from.y) / v.y);
    p = from + std::max(t, 0.0) * v;
  }
  CellCoord c = cell_of(p, raster.cell_size());
  c.row = std::clamp(c.row, 0, raster.rows() - 1);
  c.col = std::clamp(c.col, 0, raster.cols() - 1);
  return c;
}

ShotOutcome simulate_to(const HoleRaster& raster, CellCoord start, Point2 endpoint) {
  if (!raster.in_bounds(start) || !is_playable(raster.at(start)))
    throw StartNotPlayable("shot must start from a tee, fairway, rough or bunker cell");
  const CellCoord end = clipped_endpoint_cell(raster, start, endpoint);

  CellCoord last = start;
  CellCoord last_dry = start;
  bool blocked = false;
  traverse_line(start, end, [&](CellCoord c) {
    const SurfaceCode code = raster.at(c);
    if (code == SurfaceCode::TREE) {
      blocked = true;
      return false;
    }
    last = c;
    if (code != SurfaceCode::WATER) last_dry = c;
    return true;
  });

  ShotOutcome out;
  out.final = last;
  out.event = blocked ? ShotEvent::TREE_STOP : ShotEvent::CLEAN;
  if (raster.at(out.final) == SurfaceCode::WATER) {
    out.final = last_dry;
    out.event = ShotEvent::WATER_DROP;
    out.penalty = 1;
  }
  if (raster.at(out.final) == SurfaceCode::OOB) {
    out.final = start;
    out.event = ShotEvent::OOB_RETURN;
    out.penalty = 1;
  }
  out.landed_on_green = raster.at(out.final) == SurfaceCode::GREEN;
  out.distance_to_pin = distance(raster.center(out.final), raster.pin());
  return out;
}

ShotOutcome simulate_shot(const HoleRaster& raster, CellCoord start, const CanonicalFrame& frame,
                          Point2 sample) {
  return simulate_to(raster, start, from_canonical(frame, sample));
}

}  // namespace golfssp
