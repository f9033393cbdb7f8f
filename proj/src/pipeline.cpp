#include "golfssp/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "golfssp/errors.hpp"
#include "golfssp/io.hpp"

namespace golfssp {

BuildOptions PipelineConfig::build_options() const {
  BuildOptions o;
  o.disc = disc;
  o.seed = seed;
  o.mode = mode;
  o.threads = threads;
  return o;
}

PipelineConfig config_from_json(const nlohmann::json& j) {
  static const std::set<std::string> kKeys{"reference_date", "months",   "directions",
                                           "distance_step",  "realizations", "epsilon",
                                           "max_iters",      "seed",     "mode",
                                           "threads",        "putt_min_count"};
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  PipelineConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (!kKeys.contains(key)) throw ParseError("unknown config key '" + key + "'");
      if (key == "reference_date") c.reference_date = parse_date(value.get<std::string>());
      else if (key == "months") c.months = value.get<int>();
      else if (key == "directions") c.disc.n_directions = value.get<int>();
      else if (key == "distance_step") c.disc.distance_step = value.get<double>();
      else if (key == "realizations") c.disc.realizations = value.get<int>();
      else if (key == "epsilon") c.epsilon = value.get<double>();
      else if (key == "max_iters") c.max_iters = value.get<int>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "mode") c.mode = parse_sample_mode(value.get<std::string>());
      else if (key == "threads") c.threads = value.get<unsigned>();
      else if (key == "putt_min_count") c.putt_min_count = value.get<std::size_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  c.disc.validate();
  if (c.months < 1) throw std::invalid_argument("months must be positive");
  if (!(c.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  return c;
}

IngestResult ingest(const std::vector<ShotRecord>& records, const PipelineConfig& config) {
  if (records.empty()) throw EmptyProfile("no shot records");
  config.disc.validate();
  using std::chrono::sys_days;
  const auto reference = config.reference_date.value_or(
      std::max_element(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return sys_days{a.date} < sys_days{b.date};
      })->date);
  const auto windowed = within_window(records, reference, config.months);
  if (windowed.empty()) throw EmptyProfile("no shot records inside the window");

  std::map<std::string, std::vector<ShotRecord>> by_player;
  for (const auto& r : windowed) by_player[r.player_id].push_back(r);
  const auto pooled_putts = extract_putts(windowed);

  IngestResult result;
  for (auto& [player, player_records] : by_player) {
    ExtractedPairs extracted = extract_pairs(player_records);
    auto& stats = result.stats[player];
    for (auto s : kProfileSurfaces) {
      auto& pairs = extracted.by_surface[surface_index(s)];
      stats[surface_index(s)].extracted = pairs.size();
      pairs = filter_outliers(pairs, s);
      stats[surface_index(s)].kept = pairs.size();
      if (pairs.empty())
        throw EmptyProfile("player " + player + " has no usable " + std::string(to_string(s)) +
                           " shots");
    }
    result.diagnostics[player] = extracted.diagnostics;

    PlayerProfile profile;
    profile.skill = make_skill_profile(player, extracted);
    profile.ladder = bootstrap_ladder(profile.skill, config.disc.distance_step,
                                      static_cast<std::size_t>(config.disc.realizations), config.seed);
    enforce_monotone_dispersion(profile.ladder);
    const auto putts = extract_putts(player_records);
    profile.putting = build_putting_model(putts, pooled_putts, config.putt_min_count);
    result.profiles.emplace(player, std::move(profile));
  }
  return result;
}

SolveResult solve(const HoleRaster& raster, const PlayerProfile& profile,
                  const PipelineConfig& config, const BookletMeta& meta) {
  using clock = std::chrono::steady_clock;
  const BuildOptions options = config.build_options();
  const auto t0 = clock::now();
  HoleModel model = build_instance(raster, profile, options);
  const auto t1 = clock::now();
  ValueIterationOptions vi;
  vi.epsilon = config.epsilon;
  vi.max_iters = config.max_iters;
  vi.threads = config.threads;
  ValueIterationResult solution = value_iteration(model.instance, vi);
  const auto t2 = clock::now();

  SolveResult out;
  out.booklet = booklet_to_json(raster, model, solution.values, solution.policy, options,
                                profile.putting, meta);
  out.stats.states = static_cast<std::size_t>(model.instance.n_states());
  out.stats.actions = static_cast<std::size_t>(model.instance.n_actions());
  out.stats.transitions = model.instance.n_entries();
  out.stats.iterations = solution.iterations;
  out.stats.residual = solution.residual;
  out.stats.build_seconds = std::chrono::duration<double>(t1 - t0).count();
  out.stats.solve_seconds = std::chrono::duration<double>(t2 - t1).count();
  out.model = std::move(model);
  out.solution = std::move(solution);
  return out;
}

RoundMetrics simulate_booklet(const HoleRaster& raster, const PlayerProfile& profile,
                              const nlohmann::json& booklet, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("number of simulated holes must be positive");
  const Booklet b = booklet_from_json(booklet, raster);
  const HoleModel model = build_instance(raster, profile, b.options, &b.filter);
  Policy policy(static_cast<std::size_t>(model.instance.n_states()) + 1, 0);
  for (StateId s = 1; s <= model.instance.n_states(); ++s)
    policy[static_cast<std::size_t>(s)] = model.instance.actions_of(s).front();
  const SampleSource source(profile, b.options);
  std::mt19937_64 rng(seed);
  MetricsAccumulator acc;
  for (std::size_t i = 0; i < n; ++i)
    acc.add(simulate_hole(raster, model, policy, source, profile.putting, rng), raster);
  return acc.result();
}

}  // namespace golfssp
