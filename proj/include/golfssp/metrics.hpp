#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "golfssp/builder.hpp"

namespace golfssp {

struct TraceShot {
  StateId state = 0;
  ActionId action = 0;
  SurfaceCode lie = SurfaceCode::TEE;
  ShotOutcome outcome;
  /// Canonical-frame position of the final cell centre relative to the aim.
  Point2 relative_final;
};

struct HoleTrace {
  std::vector<TraceShot> shots;
  int putt_count = 0;
  int score = 0;
  int par = 4;

  int penalties() const;
  /// Strokes taken to reach the green, penalties included.
  int strokes_to_green() const;
};

inline constexpr int kRunawayShotCap = 30;

/// Plays one hole from the tee under `policy`, replaying each chosen action's
/// realizations and drawing one uniformly; putts are drawn at the landing
/// distance. Throws SimulationRunaway after 30 shots.
HoleTrace simulate_hole(const HoleRaster& raster, const HoleModel& model, const Policy& policy,
                        const SampleSource& samples, const PuttingModel& putting,
                        std::mt19937_64& rng);

struct RoundMetrics {
  std::size_t holes = 0;
  double score = 0.0;
  double score_stddev = 0.0;
  /// Yards, par 4/5 tee shots.
  double drive = 0.0;
  double fairway_pct = 0.0;
  double miss_left_pct = 0.0;
  double miss_right_pct = 0.0;
  double miss_other_pct = 0.0;
  double gir_pct = 0.0;
  /// Yards from the pin on first reaching the green.
  double dist_to_pin = 0.0;
  double water_pct = 0.0;
  double bunker_pct = 0.0;
};

/// Associative accumulator behind compute_metrics; merge() combines partial sums.
class MetricsAccumulator {
 public:
  void add(const HoleTrace& trace, const HoleRaster& raster);
  void merge(const MetricsAccumulator& other);
  RoundMetrics result() const;

 private:
  std::size_t holes_ = 0;
  double score_sum_ = 0.0;
  double score_sq_sum_ = 0.0;
  std::size_t long_holes_ = 0;
  std::size_t drives_ = 0;
  double drive_sum_ = 0.0;
  std::size_t fairways_ = 0;
  std::size_t left_ = 0;
  std::size_t right_ = 0;
  std::size_t other_ = 0;
  std::size_t gir_ = 0;
  double green_dist_sum_ = 0.0;
  std::size_t shots_ = 0;
  std::size_t water_ = 0;
  std::size_t bunker_ = 0;
};

RoundMetrics compute_metrics(const std::vector<HoleTrace>& traces, const HoleRaster& raster);

struct LeaderboardRow {
  std::string player_id;
  RoundMetrics metrics;
};

/// Ascending score, ties by player id.
std::vector<LeaderboardRow> leaderboard(std::vector<LeaderboardRow> rows);

inline constexpr const char* kLeaderboardHeader =
    "first,last,score,drive,fairway,L,R,GiR,dist,water,bunker";

/// Player ids split into first/last at the first '_' or ' '.
void write_leaderboard_csv(std::ostream& out, const std::vector<LeaderboardRow>& rows);

}  // namespace golfssp
