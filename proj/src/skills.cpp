#include "golfssp/skills.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "golfssp/errors.hpp"
#include "golfssp/random.hpp"
#include "golfssp/units.hpp"

namespace golfssp {

std::string_view to_string(ShotSurface s) {
  switch (s) {
    case ShotSurface::tee: return "tee";
    case ShotSurface::fairway: return "fairway";
    case ShotSurface::rough: return "rough";
    case ShotSurface::bunker: return "bunker";
    case ShotSurface::green: return "green";
  }
  return "unknown";
}

ShotSurface parse_surface(std::string_view name) {
  if (name == "tee") return ShotSurface::tee;
  if (name == "fairway") return ShotSurface::fairway;
  if (name == "rough") return ShotSurface::rough;
  if (name == "bunker") return ShotSurface::bunker;
  if (name == "green") return ShotSurface::green;
  throw ParseError("unknown surface '" + std::string(name) + "'");
}

std::vector<ShotRecord> within_window(std::span<const ShotRecord> records,
                                      std::chrono::year_month_day reference, int months) {
  using namespace std::chrono;
  const year_month start_month = reference.year() / reference.month() - std::chrono::months{months};
  year_month_day start{start_month / reference.day()};
  if (!start.ok()) start = year_month_day{start_month / last};
  const sys_days lo{start};
  const sys_days hi{reference};
  std::vector<ShotRecord> kept;
  for (const auto& r : records) {
    const sys_days d{r.date};
    if (d > lo && d <= hi) kept.push_back(r);
  }
  return kept;
}

ExtractedPairs extract_pairs(std::span<const ShotRecord> records) {
  ExtractedPairs out;
  auto& diag = out.diagnostics;

  using GroupKey = std::tuple<std::string, std::string, int>;
  std::map<GroupKey, std::vector<const ShotRecord*>> tee_groups;

  auto push = [&](ShotSurface s, const CanonicalFrame& f, Point2 end) {
    out.by_surface[surface_index(s)].push_back({s, f.distance, to_canonical(f, end)});
  };

  for (const auto& r : records) {
    switch (r.surface) {
      case ShotSurface::green:
        ++diag.green_records;
        break;
      case ShotSurface::tee:
        tee_groups[{r.player_id, r.tournament_id, r.hole}].push_back(&r);
        break;
      default:
        if (r.start == r.pin) {
          ++diag.degenerate_records;
          break;
        }
        push(r.surface, canonical_frame(r.start, r.pin), r.end);
    }
  }

  for (const auto& [key, shots] : tee_groups) {
    std::set<int> rounds;
    for (const auto* r : shots) rounds.insert(r->round);
    if (rounds.size() < 3) {
      ++diag.discarded_tee_groups;
      continue;
    }
    Point2 tee_centroid, target;
    for (const auto* r : shots) {
      tee_centroid = tee_centroid + r->start;
      target = target + r->end;
    }
    const double inv = 1.0 / static_cast<double>(shots.size());
    tee_centroid = inv * tee_centroid;
    target = inv * target;
    const bool compact = std::all_of(shots.begin(), shots.end(), [&](const ShotRecord* r) {
      return distance(r->start, tee_centroid) <= units::kTeeGroupRadius;
    });
    if (!compact) {
      ++diag.discarded_tee_groups;
      ++diag.tee_radius_failures;
      continue;
    }
    ++diag.accepted_tee_groups;
    for (const auto* r : shots) {
      if (r->start == target) {
        ++diag.degenerate_records;
        continue;
      }
      push(ShotSurface::tee, canonical_frame(r->start, target), r->end);
    }
  }

  for (auto s : kProfileSurfaces)
    diag.pairs_per_surface[surface_index(s)] = out.by_surface[surface_index(s)].size();
  return out;
}

bool passes_outlier_filter(const TargetDestinationPair& pair, ShotSurface surface) {
  const double error = std::abs(pair.arrival.y - pair.target_distance);
  if (surface == ShotSurface::fairway)
    return pair.target_distance <= units::kWedgeLimit || error <= units::kFairwayErrorCap;
  return error <= units::kErrorCap;
}

std::vector<TargetDestinationPair> filter_outliers(std::span<const TargetDestinationPair> pairs,
                                                   ShotSurface surface) {
  std::vector<TargetDestinationPair> kept;
  kept.reserve(pairs.size());
  std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(kept),
               [&](const auto& p) { return passes_outlier_filter(p, surface); });
  return kept;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw EmptyProfile("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

SurfaceSkill make_surface_skill(std::vector<TargetDestinationPair> pairs) {
  SurfaceSkill skill;
  if (!pairs.empty()) {
    std::vector<double> targets;
    targets.reserve(pairs.size());
    double reach = 0.0;
    for (const auto& p : pairs) {
      targets.push_back(p.target_distance);
      reach = std::max(reach, p.arrival.y);
    }
    skill.max_target_distance = quantile(std::move(targets), 0.95);
    skill.max_reach = std::max(reach, skill.max_target_distance);
  }
  skill.pairs = std::move(pairs);
  return skill;
}

SkillProfile make_skill_profile(std::string player_id, const ExtractedPairs& cleaned) {
  SkillProfile profile;
  profile.player_id = std::move(player_id);
  for (auto s : kProfileSurfaces) profile.at(s) = make_surface_skill(cleaned.at(s));
  return profile;
}

std::size_t pairs_in_radius(std::span<const TargetDestinationPair> pairs, double d) {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [&](const auto& p) {
    return std::abs(p.target_distance - d) <= units::kNeighbourhoodRadius;
  }));
}

std::vector<std::size_t> select_neighbourhood(std::span<const TargetDestinationPair> pairs,
                                              double d) {
  const std::size_t n = pairs.size();
  if (n == 0) return {};
  std::vector<double> gap(n);
  for (std::size_t i = 0; i < n; ++i) gap[i] = std::abs(pairs[i].target_distance - d);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return gap[a] < gap[b]; });

  const std::size_t in_radius = pairs_in_radius(pairs, d);
  const auto target = static_cast<std::size_t>(units::kNeighbourhoodTarget);
  const auto minimum = static_cast<std::size_t>(units::kNeighbourhoodMinimum);
  double radius;
  if (in_radius >= target) {
    radius = gap[order[target - 1]];
  } else if (in_radius >= minimum) {
    radius = units::kNeighbourhoodRadius;
  } else {
    radius = gap[order[std::min(minimum, n) - 1]];
  }
  // Target distances recomputed from coordinates carry rounding noise; gaps
  // this close to the boundary count as ties.
  constexpr double kTieTolerance = 1e-6;
  std::vector<std::size_t> selected;
  for (std::size_t i : order) {
    if (gap[i] > radius + kTieTolerance) break;
    selected.push_back(i);
  }
  return selected;
}

std::vector<Point2> rescaled_neighbourhood(const SkillProfile& profile, ShotSurface surface,
                                           double d) {
  if (surface == ShotSurface::green) throw EmptyProfile("no long-game profile on the green");
  const SurfaceSkill& skill = profile.at(surface);
  if (skill.pairs.empty())
    throw EmptyProfile("no pairs for surface " + std::string(to_string(surface)));
  if (!std::isfinite(d) || d <= 0.0) throw TargetTooFar("target distance must be positive");
  if (d > skill.max_target_distance + 1e-9)
    throw TargetTooFar("target distance " + std::to_string(d) + " beyond " +
                       std::to_string(skill.max_target_distance) + " for " +
                       std::string(to_string(surface)));

  const auto selection = select_neighbourhood(skill.pairs, d);
  std::vector<Point2> scaled;
  scaled.reserve(selection.size());
  for (std::size_t i : selection) {
    const auto& p = skill.pairs[i];
    scaled.push_back((d / p.target_distance) * p.arrival);
  }
  return scaled;
}

std::vector<Point2> draw_from_pool(std::span<const Point2> pool, double max_reach, std::size_t r,
                                   std::mt19937_64& rng) {
  if (pool.empty()) throw EmptyProfile("empty bootstrap pool");
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::bernoulli_distribution flip(0.5);
  std::vector<Point2> out;
  out.reserve(r);
  for (std::size_t k = 0; k < r; ++k) {
    const double lateral = std::abs(pool[pick(rng)].x);
    const double along = std::min(pool[pick(rng)].y, max_reach);
    const bool left = flip(rng);
    out.push_back({(left && lateral != 0.0) ? -lateral : lateral, along});
  }
  return out;
}

std::vector<Point2> bootstrap_samples(const SkillProfile& profile, ShotSurface surface, double d,
                                      std::size_t r, std::mt19937_64& rng) {
  const auto pool = rescaled_neighbourhood(profile, surface, d);
  return draw_from_pool(pool, profile.at(surface).max_reach, r, rng);
}

const LadderEntry* ProfileLadder::find(ShotSurface s, double d) const {
  const auto& entries = at(s);
  const double k = std::round(d / step);
  if (k < 1.0 || k > static_cast<double>(entries.size())) return nullptr;
  const auto& e = entries[static_cast<std::size_t>(k) - 1];
  return std::abs(e.target_distance - d) < 1e-6 ? &e : nullptr;
}

double mean_abs_lateral(std::span<const Point2> samples) {
  if (samples.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& p : samples) sum += std::abs(p.x);
  return sum / static_cast<double>(samples.size());
}

ProfileLadder bootstrap_ladder(const SkillProfile& profile, double step, std::size_t realizations,
                               std::uint64_t seed) {
  if (!(step > 0.0)) throw std::invalid_argument("ladder step must be positive");
  ProfileLadder ladder;
  ladder.step = step;
  for (auto s : kProfileSurfaces) {
    const auto& skill = profile.at(s);
    if (skill.pairs.empty()) continue;
    const auto count = static_cast<std::size_t>(std::floor(skill.max_target_distance / step + 1e-9));
    for (std::size_t k = 1; k <= count; ++k) {
      const double d = static_cast<double>(k) * step;
      std::mt19937_64 rng(derive_seed(seed, {surface_index(s), k}));
      ladder.at(s).push_back({d, 1.0, bootstrap_samples(profile, s, d, realizations, rng)});
    }
  }
  return ladder;
}

namespace {

void rescale_lateral(LadderEntry& e, double factor) {
  for (auto& p : e.samples) p.x *= factor;
  e.lateral_scale *= factor;
}

void repair_along_ladder(std::vector<LadderEntry>& entries) {
  double reference = 0.0;
  for (auto& e : entries) {
    const double m = mean_abs_lateral(e.samples);
    if (m == 0.0) continue;
    if (m < reference) {
      rescale_lateral(e, reference / m);
    } else {
      reference = m;
    }
  }
}

}  // namespace

void enforce_monotone_dispersion(ProfileLadder& ladder) {
  repair_along_ladder(ladder.at(ShotSurface::fairway));
  repair_along_ladder(ladder.at(ShotSurface::tee));
  repair_along_ladder(ladder.at(ShotSurface::rough));
  repair_along_ladder(ladder.at(ShotSurface::bunker));

  for (auto s : {ShotSurface::rough, ShotSurface::bunker}) {
    for (auto& e : ladder.at(s)) {
      const LadderEntry* fairway = ladder.find(ShotSurface::fairway, e.target_distance);
      if (fairway == nullptr) continue;
      const double floor_m = mean_abs_lateral(fairway->samples);
      const double m = mean_abs_lateral(e.samples);
      if (m > 0.0 && m < floor_m) rescale_lateral(e, floor_m / m);
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<double, kPuttBuckets> kMidpointMeters{0.25, 0.75, 1.5, 3.0, 6.0, 12.0, 24.0};
constexpr std::array<double, 7> kBreakpointMeters{0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};

using BucketCounts = std::array<std::array<std::size_t, 3>, kPuttBuckets>;

BucketCounts count_putts(std::span<const PuttObservation> obs) {
  BucketCounts counts{};
  for (const auto& o : obs) {
    if (!(o.distance >= 0.0) || o.putts < 1) continue;
    const auto bucket = putt_bucket(o.distance);
    if (!bucket) continue;
    const int putts = std::min(o.putts, 3);
    ++counts[*bucket][static_cast<std::size_t>(putts - 1)];
  }
  return counts;
}

std::size_t total(const std::array<std::size_t, 3>& c) { return c[0] + c[1] + c[2]; }

PuttProbabilities frequencies(const std::array<std::size_t, 3>& c) {
  const double n = static_cast<double>(total(c));
  return {c[0] / n, c[1] / n, c[2] / n};
}

}  // namespace

std::array<double, kPuttBuckets> putt_bucket_midpoints() {
  std::array<double, kPuttBuckets> mid{};
  for (std::size_t i = 0; i < kPuttBuckets; ++i) mid[i] = units::meters(kMidpointMeters[i]);
  return mid;
}

std::optional<std::size_t> putt_bucket(double distance) {
  if (distance < 0.0) throw NegativeDistance("negative putt distance");
  for (std::size_t i = 0; i + 1 < kBreakpointMeters.size(); ++i)
    if (distance <= units::meters(kBreakpointMeters[i + 1])) return i;
  if (distance <= units::kMaxPuttDistance) return kPuttBuckets - 1;
  return std::nullopt;
}

PuttingModel build_putting_model(std::span<const PuttObservation> player,
                                 std::span<const PuttObservation> pooled, std::size_t min_count) {
  const BucketCounts mine = count_putts(player);
  const BucketCounts all = count_putts(pooled);
  PuttingModel model;
  model.midpoints = putt_bucket_midpoints();
  for (std::size_t b = 0; b < kPuttBuckets; ++b) {
    const bool tail = b + 1 == kPuttBuckets;
    const std::array<std::size_t, 3>* source = nullptr;
    if (!tail && total(mine[b]) >= min_count) {
      source = &mine[b];
    } else if (total(all[b]) > 0) {
      source = &all[b];
    } else if (total(mine[b]) > 0) {
      source = &mine[b];
    }
    if (source == nullptr)
      throw EmptyBucket("no putting data around " + std::to_string(kMidpointMeters[b]) + " m");
    model.probabilities[b] = frequencies(*source);
  }
  return model;
}

PuttProbabilities putt_distribution(const PuttingModel& model, double d) {
  if (std::isnan(d)) throw NonFiniteValue("putt distance is NaN");
  if (d < 0.0) throw NegativeDistance("negative distance to the pin");
  const auto& mid = model.midpoints;
  const auto& p = model.probabilities;
  if (d <= mid.front()) return p.front();
  if (d >= mid.back()) return p.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(mid.begin(), mid.end(), d) - mid.begin());
  const std::size_t lo = hi - 1;
  if (d == mid[lo]) return p[lo];
  const double w = (d - mid[lo]) / (mid[hi] - mid[lo]);
  PuttProbabilities out{};
  double sum = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    out[k] = std::clamp((1.0 - w) * p[lo][k] + w * p[hi][k], 0.0, 1.0);
    sum += out[k];
  }
  for (auto& v : out) v /= sum;
  return out;
}

double expected_putts(const PuttingModel& model, double d) {
  const auto p = putt_distribution(model, d);
  return p[0] + 2.0 * p[1] + 3.0 * p[2];
}

int sample_putts(const PuttingModel& model, double d, std::mt19937_64& rng) {
  const auto p = putt_distribution(model, d);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u < p[0]) return 1;
  if (u < p[0] + p[1]) return 2;
  return 3;
}

std::vector<PuttObservation> extract_putts(std::span<const ShotRecord> records) {
  using Key = std::tuple<std::string, std::string, int, int>;
  std::map<Key, std::vector<const ShotRecord*>> holes;
  for (const auto& r : records)
    if (r.surface == ShotSurface::green)
      holes[{r.player_id, r.tournament_id, r.round, r.hole}].push_back(&r);
  std::vector<PuttObservation> out;
  out.reserve(holes.size());
  for (auto& [key, putts] : holes) {
    const auto* first = *std::min_element(putts.begin(), putts.end(), [](auto* a, auto* b) {
      return a->shot_number < b->shot_number;
    });
    out.push_back({distance(first->start, first->pin), static_cast<int>(putts.size())});
  }
  return out;
}

}  // namespace golfssp
