#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "golfssp/geometry.hpp"

namespace golfssp {

/// Lie of the ball in a shot trace.
enum class ShotSurface { tee, fairway, rough, bunker, green };

/// Surfaces that carry a long-game skill profile, in storage order.
inline constexpr std::array<ShotSurface, 4> kProfileSurfaces{
    ShotSurface::tee, ShotSurface::fairway, ShotSurface::rough, ShotSurface::bunker};

constexpr std::size_t surface_index(ShotSurface s) { return static_cast<std::size_t>(s); }
std::string_view to_string(ShotSurface s);
/// Throws ParseError on an unknown name.
ShotSurface parse_surface(std::string_view name);

struct ShotRecord {
  std::string player_id;
  std::string tournament_id;
  int round = 1;
  int hole = 1;
  int shot_number = 1;
  ShotSurface surface = ShotSurface::fairway;
  Point2 start;
  Point2 end;
  Point2 pin;
  std::chrono::year_month_day date{};
};

/// A shot expressed in the canonical frame of its (inferred) target.
struct TargetDestinationPair {
  ShotSurface surface = ShotSurface::fairway;
  double target_distance = 0.0;
  Point2 arrival;
};

struct ExtractDiagnostics {
  std::array<std::size_t, 4> pairs_per_surface{};
  std::size_t green_records = 0;
  std::size_t degenerate_records = 0;
  std::size_t accepted_tee_groups = 0;
  /// Groups dropped for having fewer than three rounds or tees spread wider than 5 m.
  std::size_t discarded_tee_groups = 0;
  std::size_t tee_radius_failures = 0;
};

struct ExtractedPairs {
  std::array<std::vector<TargetDestinationPair>, 4> by_surface;
  ExtractDiagnostics diagnostics;

  const std::vector<TargetDestinationPair>& at(ShotSurface s) const {
    return by_surface.at(surface_index(s));
  }
};

/// Records dated within the `months` months up to and including `reference`.
std::vector<ShotRecord> within_window(std::span<const ShotRecord> records,
                                      std::chrono::year_month_day reference, int months);

/// Canonical-frame pairs. Non-tee shots target the pin; tee shots target the
/// mean landing point of their (player, tournament, hole) group.
ExtractedPairs extract_pairs(std::span<const ShotRecord> records);

/// Longitudinal error |arrival.y - target| against the per-surface caps.
bool passes_outlier_filter(const TargetDestinationPair& pair, ShotSurface surface);
std::vector<TargetDestinationPair> filter_outliers(std::span<const TargetDestinationPair> pairs,
                                                   ShotSurface surface);

struct SurfaceSkill {
  std::vector<TargetDestinationPair> pairs;
  double max_target_distance = 0.0;
  double max_reach = 0.0;
};

/// Cleaned pairs per surface plus the targetable and reachable limits.
struct SkillProfile {
  std::string player_id;
  std::array<SurfaceSkill, 4> surfaces;

  const SurfaceSkill& at(ShotSurface s) const { return surfaces.at(surface_index(s)); }
  SurfaceSkill& at(ShotSurface s) { return surfaces.at(surface_index(s)); }
};

/// Linear-interpolated quantile (R type 7) of `values`, q in [0, 1].
double quantile(std::vector<double> values, double q);

/// Limits from the pairs: 95th percentile of target distances and the
/// furthest observed arrival (never below the targetable limit).
SurfaceSkill make_surface_skill(std::vector<TargetDestinationPair> pairs);
SkillProfile make_skill_profile(std::string player_id, const ExtractedPairs& cleaned);

/// Indices of the pairs whose target distance is close enough to `d` to be
/// rescaled to it: the ball around d grows until it holds 50 pairs or reaches
/// 30 m; a ball holding fewer than 10 is replaced by the 10 nearest. Pairs
/// tied with the boundary (within 1e-6 in) are included.
std::vector<std::size_t> select_neighbourhood(std::span<const TargetDestinationPair> pairs,
                                              double d);

/// Number of pairs with |t - d| inside the 30 m radius.
std::size_t pairs_in_radius(std::span<const TargetDestinationPair> pairs, double d);

/// Neighbourhood arrivals of d rescaled by d / t. Throws EmptyProfile or TargetTooFar.
std::vector<Point2> rescaled_neighbourhood(const SkillProfile& profile, ShotSurface surface,
                                           double d);

/// r draws from a pool: |x| and y resampled independently, side chosen by a
/// coin flip, y capped at max_reach.
std::vector<Point2> draw_from_pool(std::span<const Point2> pool, double max_reach, std::size_t r,
                                   std::mt19937_64& rng);

/// r arrival samples for target distance d, canonical frame.
std::vector<Point2> bootstrap_samples(const SkillProfile& profile, ShotSurface surface, double d,
                                      std::size_t r, std::mt19937_64& rng);

struct LadderEntry {
  double target_distance = 0.0;
  /// Factor applied to lateral coordinates by the dispersion repair.
  double lateral_scale = 1.0;
  std::vector<Point2> samples;
};

/// Bootstrapped samples on a ladder of target distances, per surface.
struct ProfileLadder {
  double step = 100.0;
  std::array<std::vector<LadderEntry>, 4> surfaces;

  const std::vector<LadderEntry>& at(ShotSurface s) const { return surfaces.at(surface_index(s)); }
  std::vector<LadderEntry>& at(ShotSurface s) { return surfaces.at(surface_index(s)); }
  /// Entry for distance d, or nullptr.
  const LadderEntry* find(ShotSurface s, double d) const;
};

double mean_abs_lateral(std::span<const Point2> samples);

/// Ladder distances step, 2*step, ... up to the surface's targetable limit.
/// Each entry is drawn from its own stream derived from (seed, surface, distance).
ProfileLadder bootstrap_ladder(const SkillProfile& profile, double step, std::size_t realizations,
                               std::uint64_t seed);

/// Makes mean|x| non-decreasing along each surface's ladder, then lifts rough
/// and bunker to at least the fairway dispersion at the same distance.
void enforce_monotone_dispersion(ProfileLadder& ladder);

// ---------------------------------------------------------------------------
// Putting

struct PuttObservation {
  double distance = 0.0;  // inches from the pin
  int putts = 1;
};

/// Seven buckets: breakpoints (0, .5, 1, 2, 4, 8, 16) m plus a pooled (16 m, 1280 in] tail.
inline constexpr std::size_t kPuttBuckets = 7;

using PuttProbabilities = std::array<double, 3>;

struct PuttingModel {
  std::array<double, kPuttBuckets> midpoints{};
  std::array<PuttProbabilities, kPuttBuckets> probabilities{};
};

/// Bucket midpoints in inches: 0.25, 0.75, 1.5, 3, 6, 12, 24 m.
std::array<double, kPuttBuckets> putt_bucket_midpoints();
/// Bucket index of a putt distance, nullopt when beyond 1280 in.
std::optional<std::size_t> putt_bucket(double distance);

/// Per-player frequencies in the six short buckets, pooled frequencies in the
/// tail. A player bucket with fewer than `min_count` observations uses the
/// pooled bucket instead; EmptyBucket when neither has data.
PuttingModel build_putting_model(std::span<const PuttObservation> player,
                                 std::span<const PuttObservation> pooled,
                                 std::size_t min_count = 30);

/// Interpolated (p1, p2, p3) at distance d (inches). Throws NegativeDistance.
PuttProbabilities putt_distribution(const PuttingModel& model, double d);
double expected_putts(const PuttingModel& model, double d);
/// Draws 1, 2 or 3.
int sample_putts(const PuttingModel& model, double d, std::mt19937_64& rng);

/// Putting situations from green records: the first green record of each
/// (player, tournament, round, hole) gives the distance, the record count the putts.
std::vector<PuttObservation> extract_putts(std::span<const ShotRecord> records);

// ---------------------------------------------------------------------------

/// Everything the optimiser needs about one player.
struct PlayerProfile {
  SkillProfile skill;
  ProfileLadder ladder;
  PuttingModel putting;
};

}  // namespace golfssp
