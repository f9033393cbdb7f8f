#include "golfssp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "golfssp/errors.hpp"
#include "golfssp/units.hpp"

namespace golfssp {

int HoleTrace::penalties() const {
  int p = 0;
  for (const auto& s : shots) p += s.outcome.penalty;
  return p;
}

int HoleTrace::strokes_to_green() const { return static_cast<int>(shots.size()) + penalties(); }

HoleTrace simulate_hole(const HoleRaster& raster, const HoleModel& model, const Policy& policy,
                        const SampleSource& samples, const PuttingModel& putting,
                        std::mt19937_64& rng) {
  if (!raster.tee()) throw InvariantViolation("hole has no tee");
  const Discretization& disc = samples.options().disc;
  HoleTrace trace;
  trace.par = raster.par();
  CellCoord cell = *raster.tee();
  while (raster.at(cell) != SurfaceCode::GREEN) {
    if (trace.shots.size() >= static_cast<std::size_t>(kRunawayShotCap))
      throw SimulationRunaway("no green after " + std::to_string(kRunawayShotCap) + " shots");
    const StateId s = model.state_at(raster, cell);
    const ActionId a = policy.at(static_cast<std::size_t>(s));
    const ActionSpec& spec = model.actions.at(static_cast<std::size_t>(a));
    if (spec.cell != cell || spec.is_holeout())
      throw InvariantViolation("policy action does not belong to the ball's cell");
    const SurfaceCode lie = raster.at(cell);
    const auto realizations =
        samples.samples(shot_surface(lie), cell, spec.direction, spec.target_distance);
    std::uniform_int_distribution<std::size_t> pick(0, realizations.size() - 1);
    const CanonicalFrame frame =
        heading_frame(raster.center(cell), disc.heading(spec.direction), spec.target_distance);
    TraceShot shot;
    shot.state = s;
    shot.action = a;
    shot.lie = lie;
    shot.outcome = simulate_shot(raster, cell, frame, realizations[pick(rng)]);
    shot.relative_final = to_canonical(frame, raster.center(shot.outcome.final));
    trace.shots.push_back(shot);
    cell = shot.outcome.final;
  }
  const double to_pin = distance(raster.center(cell), raster.pin());
  trace.putt_count = sample_putts(putting, to_pin, rng);
  trace.score = trace.strokes_to_green() + trace.putt_count;
  return trace;
}

void MetricsAccumulator::add(const HoleTrace& trace, const HoleRaster& raster) {
  ++holes_;
  score_sum_ += trace.score;
  score_sq_sum_ += static_cast<double>(trace.score) * trace.score;
  shots_ += trace.shots.size();
  for (const auto& s : trace.shots) {
    if (s.outcome.event == ShotEvent::WATER_DROP) ++water_;
    if (s.lie == SurfaceCode::BUNKER) ++bunker_;
  }
  if (!trace.shots.empty()) {
    const TraceShot& last = trace.shots.back();
    green_dist_sum_ += last.outcome.distance_to_pin / units::kInchesPerYard;
  }
  if (trace.strokes_to_green() <= trace.par - 2) ++gir_;

  if (trace.par >= 4 && !trace.shots.empty()) {
    ++long_holes_;
    const TraceShot& tee = trace.shots.front();
    // A re-teed ball has no drive distance.
    if (tee.outcome.event != ShotEvent::OOB_RETURN) {
      ++drives_;
      drive_sum_ += distance(raster.center(tee.outcome.final), raster.center(*raster.tee())) /
                    units::kInchesPerYard;
    }
    const SurfaceCode landed = raster.at(tee.outcome.final);
    const bool clean_miss = tee.outcome.event == ShotEvent::CLEAN &&
                            (landed == SurfaceCode::ROUGH || landed == SurfaceCode::BUNKER);
    if (landed == SurfaceCode::FAIRWAY && tee.outcome.event == ShotEvent::CLEAN) ++fairways_;
    else if (clean_miss && tee.relative_final.x < 0.0) ++left_;
    else if (clean_miss && tee.relative_final.x > 0.0) ++right_;
    else ++other_;
  }
}

void MetricsAccumulator::merge(const MetricsAccumulator& o) {
  holes_ += o.holes_;
  score_sum_ += o.score_sum_;
  score_sq_sum_ += o.score_sq_sum_;
  long_holes_ += o.long_holes_;
  drives_ += o.drives_;
  drive_sum_ += o.drive_sum_;
  fairways_ += o.fairways_;
  left_ += o.left_;
  right_ += o.right_;
  other_ += o.other_;
  gir_ += o.gir_;
  green_dist_sum_ += o.green_dist_sum_;
  shots_ += o.shots_;
  water_ += o.water_;
  bunker_ += o.bunker_;
}

RoundMetrics MetricsAccumulator::result() const {
  auto ratio = [](double num, std::size_t den) { return den == 0 ? 0.0 : num / static_cast<double>(den); };
  RoundMetrics m;
  m.holes = holes_;
  m.score = ratio(score_sum_, holes_);
  if (holes_ > 1) {
    const double var = (score_sq_sum_ - holes_ * m.score * m.score) / static_cast<double>(holes_ - 1);
    m.score_stddev = std::sqrt(std::max(var, 0.0));
  }
  m.drive = ratio(drive_sum_, drives_);
  m.fairway_pct = ratio(static_cast<double>(fairways_), long_holes_);
  m.miss_left_pct = ratio(static_cast<double>(left_), long_holes_);
  m.miss_right_pct = ratio(static_cast<double>(right_), long_holes_);
  m.miss_other_pct = ratio(static_cast<double>(other_), long_holes_);
  m.gir_pct = ratio(static_cast<double>(gir_), holes_);
  m.dist_to_pin = ratio(green_dist_sum_, holes_);
  m.water_pct = ratio(static_cast<double>(water_), shots_);
  m.bunker_pct = ratio(static_cast<double>(bunker_), shots_);
  return m;
}

RoundMetrics compute_metrics(const std::vector<HoleTrace>& traces, const HoleRaster& raster) {
  MetricsAccumulator acc;
  for (const auto& t : traces) acc.add(t, raster);
  return acc.result();
}

std::vector<LeaderboardRow> leaderboard(std::vector<LeaderboardRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const LeaderboardRow& a, const LeaderboardRow& b) {
    if (a.metrics.score != b.metrics.score) return a.metrics.score < b.metrics.score;
    return a.player_id < b.player_id;
  });
  return rows;
}

void write_leaderboard_csv(std::ostream& out, const std::vector<LeaderboardRow>& rows) {
  out << kLeaderboardHeader << '\n';
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(4);
  for (const auto& row : rows) {
    const auto split = row.player_id.find_first_of("_ ");
    const std::string first = row.player_id.substr(0, split);
    const std::string last = split == std::string::npos ? "" : row.player_id.substr(split + 1);
    const auto& m = row.metrics;
    out << first << ',' << last << ',' << m.score << ',' << m.drive << ',' << m.fairway_pct << ','
        << m.miss_left_pct << ',' << m.miss_right_pct << ',' << m.gir_pct << ',' << m.dist_to_pin
        << ',' << m.water_pct << ',' << m.bunker_pct << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace golfssp
