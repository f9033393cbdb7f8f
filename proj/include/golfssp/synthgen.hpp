#pragma once

#include <array>
#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "golfssp/course.hpp"
#include "golfssp/skills.hpp"

namespace golfssp {

/// Ground-truth player: arrival = target + (N(0, lat*d), N(0, dist*d)) in the
/// canonical frame, with rough/bunker multipliers on both deviations.
struct SyntheticPlayerParams {
  std::string player_id = "synthetic_player";
  double lateral_sigma_ratio = 0.05;
  double distance_sigma_ratio = 0.03;
  double rough_multiplier = 1.3;
  double bunker_multiplier = 1.6;
  /// Target distance range per surface (tee, fairway, rough, bunker), inches.
  std::array<double, 4> min_target{2000.0, 400.0, 400.0, 200.0};
  std::array<double, 4> max_target{11000.0, 9000.0, 7000.0, 3000.0};
  /// When non-empty, targets are drawn uniformly from this set instead of
  /// the continuous range (a range-session style of data).
  std::vector<double> target_ladder;
  /// Relative frequency of shots from each surface.
  std::array<double, 4> surface_weights{0.25, 0.4, 0.25, 0.1};
  /// (p1, p2, p3) per putting bucket.
  std::array<PuttProbabilities, kPuttBuckets> putting{{{0.99, 0.01, 0.0},
                                                       {0.85, 0.15, 0.0},
                                                       {0.55, 0.44, 0.01},
                                                       {0.25, 0.73, 0.02},
                                                       {0.10, 0.86, 0.04},
                                                       {0.04, 0.88, 0.08},
                                                       {0.01, 0.84, 0.15}}};
  std::chrono::year_month_day reference_date{std::chrono::year{2024}, std::chrono::month{6},
                                             std::chrono::day{1}};

  void validate() const;
  double sigma_multiplier(ShotSurface s) const;
};

struct SyntheticTraces {
  std::vector<ShotRecord> records;
  SyntheticPlayerParams truth;
};

/// n_shots long-game shots (tee shots come in four-round groups) in randomly
/// placed and rotated frames, plus `putt_holes` green sequences.
SyntheticTraces generate_traces(const SyntheticPlayerParams& params, std::size_t n_shots,
                                std::mt19937_64& rng, std::size_t putt_holes = 0);

/// Ground-truth model for a player, built straight from the parameters.
PuttingModel synthetic_putting_model(const SyntheticPlayerParams& params);

struct HoleSpec {
  int rows = 120;
  int cols = 60;
  int par = 4;
  double cell_size = 39.3701;
  /// Fraction of the hole area covered by hazard blobs.
  double hazard_density = 0.0;
  int max_attempts = 20;
};

/// Ringed by out-of-bounds, tee near the bottom, green near the top, a
/// fairway corridor between them and random water/bunker/tree blobs. Retries
/// until validate_hole accepts; throws GenerationFailed.
HoleRaster generate_hole(const HoleSpec& spec, std::mt19937_64& rng);

}  // namespace golfssp
