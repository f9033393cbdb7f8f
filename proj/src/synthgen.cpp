#include "golfssp/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "golfssp/errors.hpp"
#include "golfssp/units.hpp"

namespace golfssp {

void SyntheticPlayerParams::validate() const {
  if (lateral_sigma_ratio < 0.0 || distance_sigma_ratio < 0.0)
    throw std::invalid_argument("dispersion ratios must be non-negative");
  if (rough_multiplier < 1.0 || bunker_multiplier < 1.0)
    throw std::invalid_argument("surface multipliers must be >= 1");
  for (std::size_t i = 0; i < 4; ++i)
    if (!(min_target[i] > 0.0) || max_target[i] < min_target[i])
      throw std::invalid_argument("bad target range");
  for (double t : target_ladder)
    if (!(t > 0.0)) throw std::invalid_argument("target ladder entries must be positive");
  for (const auto& p : putting) {
    const double sum = p[0] + p[1] + p[2];
    if (std::abs(sum - 1.0) > 1e-9 || *std::min_element(p.begin(), p.end()) < 0.0)
      throw std::invalid_argument("putting probabilities must form a distribution");
  }
}

double SyntheticPlayerParams::sigma_multiplier(ShotSurface s) const {
  if (s == ShotSurface::rough) return rough_multiplier;
  if (s == ShotSurface::bunker) return bunker_multiplier;
  return 1.0;
}

PuttingModel synthetic_putting_model(const SyntheticPlayerParams& params) {
  PuttingModel m;
  m.midpoints = putt_bucket_midpoints();
  m.probabilities = params.putting;
  return m;
}

namespace {

constexpr double kWorldSpan = 400000.0;

Point2 unit(double heading) { return {std::cos(heading), std::sin(heading)}; }

class TraceWriter {
 public:
  TraceWriter(const SyntheticPlayerParams& params, std::mt19937_64& rng)
      : params_(params), rng_(rng) {}

  double target_distance(ShotSurface s) {
    if (!params_.target_ladder.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, params_.target_ladder.size() - 1);
      return params_.target_ladder[pick(rng_)];
    }
    const auto i = surface_index(s);
    return std::uniform_real_distribution<double>(params_.min_target[i], params_.max_target[i])(rng_);
  }

  /// World landing point for an aim at `target` from `start`.
  Point2 land(ShotSurface s, Point2 start, Point2 target) {
    const CanonicalFrame frame = canonical_frame(start, target);
    const double k = params_.sigma_multiplier(s);
    const double d = frame.distance;
    const double ex = sample_normal(k * params_.lateral_sigma_ratio * d);
    const double ey = sample_normal(k * params_.distance_sigma_ratio * d);
    return from_canonical(frame, {ex, d + ey});
  }

  Point2 random_point() {
    std::uniform_real_distribution<double> u(0.0, kWorldSpan);
    return {u(rng_), u(rng_)};
  }
  double random_heading() {
    return std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng_);
  }

  ShotRecord record(ShotSurface s, Point2 start, Point2 end, Point2 pin) {
    ShotRecord r;
    r.player_id = params_.player_id;
    r.tournament_id = "S" + std::to_string(std::uniform_int_distribution<int>(1, 40)(rng_));
    r.round = std::uniform_int_distribution<int>(1, 4)(rng_);
    r.hole = std::uniform_int_distribution<int>(1, 18)(rng_);
    r.shot_number = 2;
    r.surface = s;
    r.start = start;
    r.end = end;
    r.pin = pin;
    r.date = random_date();
    return r;
  }

  std::chrono::year_month_day random_date() {
    using namespace std::chrono;
    const int back = std::uniform_int_distribution<int>(0, 300)(rng_);
    return year_month_day{sys_days{params_.reference_date} - days{back}};
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  double sample_normal(double sigma) {
    if (sigma == 0.0) return 0.0;
    return std::normal_distribution<double>(0.0, sigma)(rng_);
  }

  const SyntheticPlayerParams& params_;
  std::mt19937_64& rng_;
};

}  // namespace

SyntheticTraces generate_traces(const SyntheticPlayerParams& params, std::size_t n_shots,
                                std::mt19937_64& rng, std::size_t putt_holes) {
  params.validate();
  if (n_shots == 0 && putt_holes == 0) throw std::invalid_argument("nothing to generate");
  SyntheticTraces out;
  out.truth = params;
  TraceWriter w(params, rng);
  // Weights count shots; a tee draw emits a group of four.
  auto weights = params.surface_weights;
  weights[surface_index(ShotSurface::tee)] /= 4.0;
  std::discrete_distribution<int> pick_surface(weights.begin(), weights.end());
  int tee_groups = 0;
  while (out.records.size() < n_shots) {
    auto s = kProfileSurfaces[static_cast<std::size_t>(pick_surface(rng))];
    if (s == ShotSurface::tee && n_shots - out.records.size() < 4) s = ShotSurface::fairway;
    const double d = w.target_distance(s);
    if (s == ShotSurface::tee) {
      // One hole played over four rounds from the same tee at the same target.
      ++tee_groups;
      const Point2 tee = w.random_point();
      const Point2 dir = unit(w.random_heading());
      const Point2 target = tee + d * dir;
      const Point2 pin = tee + (d + 4000.0) * dir;
      const std::string tournament = "G" + std::to_string(tee_groups);
      const int hole = 1 + tee_groups % 18;
      const auto date = w.random_date();
      std::uniform_real_distribution<double> jitter(-20.0, 20.0);
      for (int round = 1; round <= 4; ++round) {
        const Point2 start = tee + Point2{jitter(rng), jitter(rng)};
        ShotRecord r = w.record(s, start, w.land(s, start, target), pin);
        r.tournament_id = tournament;
        r.hole = hole;
        r.round = round;
        r.shot_number = 1;
        r.date = date;
        out.records.push_back(std::move(r));
      }
      continue;
    }
    const Point2 start = w.random_point();
    const Point2 pin = start + d * unit(w.random_heading());
    out.records.push_back(w.record(s, start, w.land(s, start, pin), pin));
  }

  static constexpr std::array<double, kPuttBuckets + 1> kEdgesMeters{0.0, 0.5, 1.0, 2.0, 4.0,
                                                                     8.0, 16.0, 0.0};
  std::uniform_int_distribution<std::size_t> pick_bucket(0, kPuttBuckets - 1);
  for (std::size_t h = 0; h < putt_holes; ++h) {
    const std::size_t b = pick_bucket(rng);
    const double lo = units::meters(kEdgesMeters[b]);
    const double hi = b + 1 == kPuttBuckets ? units::kMaxPuttDistance : units::meters(kEdgesMeters[b + 1]);
    // Open at the bottom so the distance stays inside bucket b.
    double d = std::uniform_real_distribution<double>(lo, hi)(rng);
    if (d <= lo) d = hi;
    const auto& p = params.putting[b];
    const int putts = 1 + std::discrete_distribution<int>({p[0], p[1], p[2]})(rng);
    const Point2 pin = w.random_point();
    const Point2 dir = unit(w.random_heading());
    const auto date = w.random_date();
    const std::string tournament = "P" + std::to_string(h / 72 + 1);
    const int round = static_cast<int>(h / 18 % 4) + 1;
    const int hole = static_cast<int>(h % 18) + 1;
    double remaining = d;
    for (int k = 0; k < putts; ++k) {
      const double next = k + 1 == putts ? 0.0 : std::max(remaining * 0.08, 6.0);
      ShotRecord r;
      r.player_id = params.player_id;
      r.tournament_id = tournament;
      r.round = round;
      r.hole = hole;
      r.shot_number = 3 + k;
      r.surface = ShotSurface::green;
      r.start = pin + remaining * dir;
      r.end = pin + next * dir;
      r.pin = pin;
      r.date = date;
      out.records.push_back(std::move(r));
      remaining = next;
    }
  }
  return out;
}

HoleRaster generate_hole(const HoleSpec& spec, std::mt19937_64& rng) {
  if (spec.rows < 20 || spec.cols < 12) throw std::invalid_argument("hole too small to generate");
  if (spec.hazard_density < 0.0 || spec.hazard_density > 0.5)
    throw std::invalid_argument("hazard density must be in [0, 0.5]");
  const int rows = spec.rows;
  const int cols = spec.cols;
  auto uniform_int = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    std::vector<SurfaceCode> grid(static_cast<std::size_t>(rows * cols), SurfaceCode::ROUGH);
    auto at = [&](int r, int c) -> SurfaceCode& { return grid[static_cast<std::size_t>(r * cols + c)]; };
    auto interior = [&](int r, int c) { return r > 0 && c > 0 && r < rows - 1 && c < cols - 1; };
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (!interior(r, c)) at(r, c) = SurfaceCode::OOB;

    const CellCoord tee{rows - 4, cols / 2 + uniform_int(-cols / 8, cols / 8)};
    const CellCoord green{4 + rows / 10 + uniform_int(0, rows / 20),
                          cols / 2 + uniform_int(-cols / 6, cols / 6)};
    const double ry = std::max(3.0, rows / 16.0);
    const double rx = std::max(3.0, cols / 7.0);
    const double half_width = std::max(2.0, cols / 8.0);

    const double gr = green.row, gc = green.col;
    const double tr = tee.row, tc = tee.col;
    const double len2 = (gr - tr) * (gr - tr) + (gc - tc) * (gc - tc);
    for (int r = 1; r < rows - 1; ++r) {
      for (int c = 1; c < cols - 1; ++c) {
        const double t = ((r - tr) * (gr - tr) + (c - tc) * (gc - tc)) / len2;
        const double pr = tr + t * (gr - tr), pc = tc + t * (gc - tc);
        const double off = std::hypot(r - pr, c - pc);
        if (t >= 0.25 && t <= 1.0 && off <= half_width) at(r, c) = SurfaceCode::FAIRWAY;
        const double e = ((r - gr) / ry) * ((r - gr) / ry) + ((c - gc) / rx) * ((c - gc) / rx);
        if (e <= 1.0) at(r, c) = SurfaceCode::GREEN;
      }
    }
    at(tee.row, tee.col) = SurfaceCode::TEE;

    const double area = static_cast<double>((rows - 2) * (cols - 2));
    const double max_radius = std::max(3.0, cols / 10.0);
    const double mean_radius = (2.0 + max_radius) / 2.0;
    const auto blobs = static_cast<int>(
        std::lround(spec.hazard_density * area / (std::numbers::pi * mean_radius * mean_radius)));
    std::discrete_distribution<int> pick_kind({0.35, 0.40, 0.25});
    for (int b = 0; b < blobs; ++b) {
      const int kind = pick_kind(rng);
      const SurfaceCode code =
          kind == 0 ? SurfaceCode::WATER : kind == 1 ? SurfaceCode::BUNKER : SurfaceCode::TREE;
      const double radius = uniform(2.0, max_radius);
      const double cr = uniform(1.0, rows - 2.0);
      const double cc = uniform(1.0, cols - 2.0);
      for (int r = 1; r < rows - 1; ++r) {
        for (int c = 1; c < cols - 1; ++c) {
          if (std::hypot(r - cr, c - cc) > radius) continue;
          if (std::max(std::abs(r - tee.row), std::abs(c - tee.col)) <= 3) continue;
          SurfaceCode& cell = at(r, c);
          if (cell == SurfaceCode::GREEN || cell == SurfaceCode::TEE) continue;
          const double e = ((r - gr) / (ry + 1.5)) * ((r - gr) / (ry + 1.5)) +
                           ((c - gc) / (rx + 1.5)) * ((c - gc) / (rx + 1.5));
          if (code != SurfaceCode::BUNKER && e <= 1.0) continue;
          cell = code;
        }
      }
    }

    const Point2 pin_center = cell_center(green, spec.cell_size);
    const Point2 pin = pin_center + Point2{uniform(-0.4, 0.4) * spec.cell_size,
                                           uniform(-0.4, 0.4) * spec.cell_size};
    HoleRaster raster(rows, cols, std::move(grid), spec.cell_size, pin, spec.par);
    if (validate_hole(raster).accepted()) return raster;
  }
  throw GenerationFailed("no valid hole after " + std::to_string(spec.max_attempts) + " attempts");
}

}  // namespace golfssp
