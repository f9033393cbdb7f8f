#pragma once

// All lengths inside the library are inches. Thresholds quoted in meters are
// converted here, once.

namespace golfssp::units {

inline constexpr double kInchesPerMeter = 39.3701;
inline constexpr double kInchesPerYard = 36.0;

constexpr double meters(double m) { return m * kInchesPerMeter; }

/// Fairway shots at or below this target distance keep every pair (100 m).
inline constexpr double kWedgeLimit = 3937.0;
/// Longitudinal error cap for fairway shots beyond the wedge limit (~20 m).
inline constexpr double kFairwayErrorCap = 800.0;
/// Longitudinal error cap for tee, rough and bunker shots (~30 m).
inline constexpr double kErrorCap = 1200.0;
/// Neighbourhood radius cap when bootstrapping a target distance (30 m).
inline constexpr double kNeighbourhoodRadius = 1181.0;
inline constexpr int kNeighbourhoodTarget = 50;
inline constexpr int kNeighbourhoodMinimum = 10;
/// Tee positions of one (tournament, hole) group must lie within 5 m of their centroid.
inline constexpr double kTeeGroupRadius = 5.0 * kInchesPerMeter;
/// Putts from further than this are discarded (32.5 m).
inline constexpr double kMaxPuttDistance = 1280.0;

}  // namespace golfssp::units
