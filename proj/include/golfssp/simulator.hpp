#pragma once

#include <string_view>

#include "golfssp/course.hpp"
#include "golfssp/geometry.hpp"

namespace golfssp {

enum class ShotEvent { CLEAN, TREE_STOP, WATER_DROP, OOB_RETURN };

std::string_view to_string(ShotEvent e);

struct ShotOutcome {
  CellCoord final;
  int penalty = 0;
  ShotEvent event = ShotEvent::CLEAN;
  bool landed_on_green = false;
  /// Distance from the final cell's centre to the pin; only meaningful on the green.
  double distance_to_pin = 0.0;
};

/// Straight flight from the centre of `start` toward from_canonical(frame, sample),
/// clipped at the raster edge. The ball stops in front of the first tree, is
/// dropped at the water entry point (+1), or returns to the start when it ends
/// out of bounds (+1). Throws StartNotPlayable.
ShotOutcome simulate_shot(const HoleRaster& raster, CellCoord start, const CanonicalFrame& frame,
                          Point2 sample);

/// Same chain for an explicit world endpoint.
ShotOutcome simulate_to(const HoleRaster& raster, CellCoord start, Point2 endpoint);

/// Cell reached by the segment start-centre -> endpoint after clipping to the raster.
CellCoord clipped_endpoint_cell(const HoleRaster& raster, CellCoord start, Point2 endpoint);

}  // namespace golfssp
