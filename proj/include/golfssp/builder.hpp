#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "golfssp/course.hpp"
#include "golfssp/simulator.hpp"
#include "golfssp/skills.hpp"
#include "golfssp/ssp.hpp"

namespace golfssp {

struct Discretization {
  int n_directions = 180;
  double distance_step = 100.0;
  int realizations = 15;

  void validate() const;
  /// Radians, counter-clockwise from world +x.
  double heading(int direction_index) const;
  double direction_degrees(int direction_index) const;
  /// Nearest direction index to a heading in degrees.
  int direction_index_for(double degrees) const;
};

enum class SampleMode {
  /// One sample set per (surface, distance), taken from the profile ladder.
  cached,
  /// Fresh bootstrap per action from a seed derived from (seed, state, direction, distance).
  per_action,
};

struct BuildOptions {
  Discretization disc;
  std::uint64_t seed = 1;
  SampleMode mode = SampleMode::cached;
  unsigned threads = 1;
};

/// Shot surface of a playable raster cell.
ShotSurface shot_surface(SurfaceCode code);

/// Canonical-frame samples for one action, as used by the builder and the
/// round simulator.
class SampleSource {
 public:
  SampleSource(const PlayerProfile& profile, const BuildOptions& options);

  /// Distances step, 2*step, ... up to the surface's targetable limit.
  std::vector<double> distance_ladder(ShotSurface surface) const;

  std::vector<Point2> samples(ShotSurface surface, CellCoord cell, int direction,
                              double distance) const;

  const BuildOptions& options() const { return options_; }

 private:
  const PlayerProfile& profile_;
  BuildOptions options_;
  /// per_action mode: rescaled neighbourhood per surface and ladder index.
  std::array<std::vector<std::vector<Point2>>, 4> pools_;
};

struct ActionSpec {
  CellCoord cell;
  /// -1 for the hole-out action of a green cell.
  std::int32_t direction = -1;
  double target_distance = 0.0;

  bool is_holeout() const { return direction < 0; }
};

/// SSP for one hole and one player, with the maps back to raster cells.
struct HoleModel {
  SSPInstance instance;
  /// state_cells[s] for s in 1..n (entry 0 unused).
  std::vector<CellCoord> state_cells;
  /// Raster index -> state id, 0 for cells that are not states.
  std::vector<StateId> state_of_cell;
  /// actions[a] for a in 1..m (entry 0 unused).
  std::vector<ActionSpec> actions;

  StateId state_at(const HoleRaster& raster, CellCoord c) const {
    return state_of_cell[raster.index(c)];
  }
};

/// Which actions to build for a playable state; all (direction, distance)
/// pairs when empty.
struct ActionFilter {
  /// Per raster cell: the single (direction, distance) to keep.
  std::vector<std::optional<std::pair<int, double>>> only;
};

/// Builds states for playable and green cells and one action per
/// (direction, distance) of each playable cell. Throws ProfileSurfaceMissing
/// or UnreachableState.
HoleModel build_instance(const HoleRaster& raster, const PlayerProfile& profile,
                         const BuildOptions& options, const ActionFilter* filter = nullptr);

/// Upper bound on the action count: sum over playable states of
/// n_directions * |ladder(surface)| plus one hole-out per green cell.
std::size_t predicted_action_bound(const HoleRaster& raster, const PlayerProfile& profile,
                                   const BuildOptions& options);

/// Policy that aims straight at the pin from each playable state with the
/// ladder distance closest to (not beyond) the pin distance.
Policy aim_at_pin_policy(const HoleRaster& raster, const PlayerProfile& profile,
                         const BuildOptions& options, const HoleModel& model);

struct BookletMeta {
  std::string hole_id;
  std::string player_id;
};

/// Per-state rows {cell, surface, value, action} plus the build parameters
/// needed to replay shots.
nlohmann::ordered_json booklet_to_json(const HoleRaster& raster, const HoleModel& model,
                                       const ValueVector& values, const Policy& policy,
                                       const BuildOptions& options, const PuttingModel& putting,
                                       const BookletMeta& meta);

/// Booklet read back: chosen (direction, distance) per playable cell.
struct Booklet {
  BookletMeta meta;
  BuildOptions options;
  nlohmann::json rows;
  ActionFilter filter;
};

Booklet booklet_from_json(const nlohmann::json& j, const HoleRaster& raster);

std::string_view to_string(SampleMode mode);
SampleMode parse_sample_mode(std::string_view s);

}  // namespace golfssp
