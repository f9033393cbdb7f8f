#include "golfssp/builder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "golfssp/errors.hpp"
#include "golfssp/random.hpp"

namespace golfssp {

void Discretization::validate() const {
  if (n_directions < 4) throw std::invalid_argument("need at least 4 directions");
  if (!(distance_step > 0.0)) throw std::invalid_argument("distance step must be positive");
  if (realizations < 1) throw std::invalid_argument("need at least one realization");
}

double Discretization::heading(int direction_index) const {
  return 2.0 * std::numbers::pi * direction_index / n_directions;
}

double Discretization::direction_degrees(int direction_index) const {
  return 360.0 * direction_index / n_directions;
}

int Discretization::direction_index_for(double degrees) const {
  const long k = std::lround(degrees / 360.0 * n_directions);
  return static_cast<int>(((k % n_directions) + n_directions) % n_directions);
}

std::string_view to_string(SampleMode mode) {
  return mode == SampleMode::cached ? "cached" : "per_action";
}

SampleMode parse_sample_mode(std::string_view s) {
  if (s == "cached") return SampleMode::cached;
  if (s == "per_action") return SampleMode::per_action;
  throw std::invalid_argument("unknown sample mode '" + std::string(s) + "'");
}

ShotSurface shot_surface(SurfaceCode code) {
  switch (code) {
    case SurfaceCode::TEE: return ShotSurface::tee;
    case SurfaceCode::FAIRWAY: return ShotSurface::fairway;
    case SurfaceCode::ROUGH: return ShotSurface::rough;
    case SurfaceCode::BUNKER: return ShotSurface::bunker;
    default: throw StartNotPlayable("no shot surface for " + std::string(surface_name(code)));
  }
}

SampleSource::SampleSource(const PlayerProfile& profile, const BuildOptions& options)
    : profile_(profile), options_(options) {
  options_.disc.validate();
  if (options_.mode != SampleMode::per_action) return;
  for (auto s : kProfileSurfaces) {
    if (profile_.skill.at(s).pairs.empty()) continue;
    for (double d : distance_ladder(s))
      pools_[surface_index(s)].push_back(rescaled_neighbourhood(profile_.skill, s, d));
  }
}

std::vector<double> SampleSource::distance_ladder(ShotSurface surface) const {
  const double step = options_.disc.distance_step;
  const double limit = profile_.skill.at(surface).max_target_distance;
  const auto count = static_cast<long>(std::floor(limit / step + 1e-9));
  std::vector<double> out;
  for (long k = 1; k <= count; ++k) out.push_back(static_cast<double>(k) * step);
  return out;
}

std::vector<Point2> SampleSource::samples(ShotSurface surface, CellCoord cell, int direction,
                                          double distance) const {
  const auto r = static_cast<std::size_t>(options_.disc.realizations);
  const LadderEntry* entry = profile_.ladder.find(surface, distance);
  if (options_.mode == SampleMode::cached) {
    if (entry == nullptr)
      throw ProfileSurfaceMissing("profile ladder has no " + std::string(to_string(surface)) +
                                  " entry at " + std::to_string(distance) + " in");
    if (entry->samples.size() < r)
      throw ProfileSurfaceMissing("profile ladder holds " + std::to_string(entry->samples.size()) +
                                  " samples per distance, " + std::to_string(r) + " requested");
    return {entry->samples.begin(), entry->samples.begin() + static_cast<std::ptrdiff_t>(r)};
  }
  std::mt19937_64 rng(derive_seed(options_.seed,
                                  {static_cast<std::uint64_t>(cell.row),
                                   static_cast<std::uint64_t>(cell.col),
                                   static_cast<std::uint64_t>(direction),
                                   static_cast<std::uint64_t>(std::llround(distance * 1000.0))}));
  const auto& pools = pools_[surface_index(surface)];
  const double k = std::round(distance / options_.disc.distance_step);
  const bool on_ladder = k >= 1.0 && k <= static_cast<double>(pools.size()) &&
                         std::abs(k * options_.disc.distance_step - distance) < 1e-6;
  auto out = on_ladder ? draw_from_pool(pools[static_cast<std::size_t>(k) - 1],
                                        profile_.skill.at(surface).max_reach, r, rng)
                       : bootstrap_samples(profile_.skill, surface, distance, r, rng);
  if (entry != nullptr && entry->lateral_scale != 1.0)
    for (auto& p : out) p.x *= entry->lateral_scale;
  return out;
}

namespace {

struct StateRows {
  std::vector<ActionSpec> specs;
  std::vector<double> costs;
  std::vector<std::size_t> ends;
  std::vector<Transition> entries;
};

void check_profile(const PlayerProfile& profile, SampleMode mode) {
  for (auto s : kProfileSurfaces) {
    const bool present = mode == SampleMode::cached ? !profile.ladder.at(s).empty()
                                                    : !profile.skill.at(s).pairs.empty();
    if (!present)
      throw ProfileSurfaceMissing("profile has no " + std::string(to_string(s)) + " data");
  }
}

}  // namespace

HoleModel build_instance(const HoleRaster& raster, const PlayerProfile& profile,
                         const BuildOptions& options, const ActionFilter* filter) {
  options.disc.validate();
  check_profile(profile, options.mode);
  const SampleSource source(profile, options);
  const auto r = options.disc.realizations;
  const double inv_r = 1.0 / r;

  HoleModel model;
  model.state_of_cell.assign(raster.grid().size(), 0);
  model.state_cells.push_back({});
  for (std::size_t i = 0; i < raster.grid().size(); ++i) {
    const SurfaceCode code = raster.grid()[i];
    if (is_playable(code) || code == SurfaceCode::GREEN) {
      model.state_cells.push_back(raster.cell_at(i));
      model.state_of_cell[i] = static_cast<StateId>(model.state_cells.size() - 1);
    }
  }
  const auto n_states = static_cast<StateId>(model.state_cells.size() - 1);

  std::array<std::vector<double>, 4> ladders;
  for (auto s : kProfileSurfaces) ladders[surface_index(s)] = source.distance_ladder(s);

  auto build_state = [&](StateId s, StateRows& out) {
    const CellCoord cell = model.state_cells[static_cast<std::size_t>(s)];
    const SurfaceCode code = raster.at(cell);
    if (code == SurfaceCode::GREEN) {
      out.specs.push_back({cell, -1, 0.0});
      out.costs.push_back(expected_putts(profile.putting, distance(raster.center(cell), raster.pin())));
      out.entries.push_back({kTarget, 1.0});
      out.ends.push_back(out.entries.size());
      return;
    }
    const ShotSurface surface = shot_surface(code);
    const Point2 origin = raster.center(cell);
    const std::optional<std::pair<int, double>>* only = nullptr;
    if (filter != nullptr) {
      only = &filter->only.at(raster.index(cell));
      if (!only->has_value())
        throw InvariantViolation("action filter has no entry for a playable cell");
    }
    const auto& ladder = ladders[surface_index(surface)];
    std::vector<StateId> finals(static_cast<std::size_t>(r));
    auto emit = [&](int dir, double d) {
      const auto samples = source.samples(surface, cell, dir, d);
      const CanonicalFrame frame = heading_frame(origin, options.disc.heading(dir), d);
      int penalties = 0;
      for (int k = 0; k < r; ++k) {
        const ShotOutcome o = simulate_shot(raster, cell, frame, samples[static_cast<std::size_t>(k)]);
        penalties += o.penalty;
        finals[static_cast<std::size_t>(k)] = model.state_of_cell[raster.index(o.final)];
      }
      std::sort(finals.begin(), finals.end());
      for (std::size_t k = 0; k < finals.size();) {
        std::size_t j = k;
        while (j < finals.size() && finals[j] == finals[k]) ++j;
        out.entries.push_back({finals[k], static_cast<double>(j - k) * inv_r});
        k = j;
      }
      out.ends.push_back(out.entries.size());
      out.specs.push_back({cell, dir, d});
      out.costs.push_back(1.0 + penalties * inv_r);
    };
    if (only != nullptr) {
      emit((*only)->first, (*only)->second);
      return;
    }
    for (int dir = 0; dir < options.disc.n_directions; ++dir)
      for (double d : ladder) emit(dir, d);
  };

  std::vector<StateRows> rows(static_cast<std::size_t>(n_states) + 1);
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    for (StateId s = 1; s <= n_states; ++s) build_state(s, rows[static_cast<std::size_t>(s)]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (StateId s = 1 + static_cast<StateId>(t); s <= n_states; s += static_cast<StateId>(threads))
            build_state(s, rows[static_cast<std::size_t>(s)]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  model.instance = SSPInstance(n_states);
  model.actions.push_back({});
  for (StateId s = 1; s <= n_states; ++s) {
    auto& sr = rows[static_cast<std::size_t>(s)];
    std::size_t begin = 0;
    for (std::size_t k = 0; k < sr.specs.size(); ++k) {
      const std::span<const Transition> row(sr.entries.data() + begin, sr.ends[k] - begin);
      model.instance.add_action(s, sr.costs[k], row);
      model.actions.push_back(sr.specs[k]);
      begin = sr.ends[k];
    }
    sr = StateRows{};
  }
  model.instance.finalize();
  model.instance.validate();

  // Every state must reach the hole-out through some action.
  const auto n = static_cast<std::size_t>(n_states);
  std::vector<std::vector<StateId>> preds(n + 1);
  std::vector<char> reaches(n + 1, 0);
  std::vector<StateId> frontier;
  for (ActionId a = 1; a <= model.instance.n_actions(); ++a) {
    const StateId s = model.instance.state_of(a);
    for (const auto& t : model.instance.row(a)) {
      if (t.state == kTarget) {
        if (!reaches[static_cast<std::size_t>(s)]) {
          reaches[static_cast<std::size_t>(s)] = 1;
          frontier.push_back(s);
        }
      } else if (t.state != s) {
        preds[static_cast<std::size_t>(t.state)].push_back(s);
      }
    }
  }
  while (!frontier.empty()) {
    const auto v = static_cast<std::size_t>(frontier.back());
    frontier.pop_back();
    for (StateId u : preds[v])
      if (!reaches[static_cast<std::size_t>(u)]) {
        reaches[static_cast<std::size_t>(u)] = 1;
        frontier.push_back(u);
      }
  }
  for (std::size_t s = 1; s <= n; ++s)
    if (!reaches[s]) {
      const CellCoord c = model.state_cells[s];
      throw UnreachableState("cell (" + std::to_string(c.row) + ", " + std::to_string(c.col) +
                             ") cannot reach the green");
    }
  return model;
}

std::size_t predicted_action_bound(const HoleRaster& raster, const PlayerProfile& profile,
                                   const BuildOptions& options) {
  const SampleSource source(profile, options);
  std::array<std::size_t, 4> per_surface{};
  for (auto s : kProfileSurfaces)
    per_surface[surface_index(s)] =
        static_cast<std::size_t>(options.disc.n_directions) * source.distance_ladder(s).size();
  std::size_t total = 0;
  for (auto code : raster.grid()) {
    if (code == SurfaceCode::GREEN) ++total;
    else if (is_playable(code)) total += per_surface[surface_index(shot_surface(code))];
  }
  return total;
}

Policy aim_at_pin_policy(const HoleRaster& raster, const PlayerProfile& profile,
                         const BuildOptions& options, const HoleModel& model) {
  const SampleSource source(profile, options);
  const auto& inst = model.instance;
  Policy policy(static_cast<std::size_t>(inst.n_states()) + 1, 0);
  for (StateId s = 1; s <= inst.n_states(); ++s) {
    const CellCoord cell = model.state_cells[static_cast<std::size_t>(s)];
    const auto actions = inst.actions_of(s);
    if (raster.at(cell) == SurfaceCode::GREEN) {
      policy[static_cast<std::size_t>(s)] = actions.front();
      continue;
    }
    const Point2 to_pin = raster.pin() - raster.center(cell);
    const double bearing = std::atan2(to_pin.y, to_pin.x) * 180.0 / std::numbers::pi;
    const int dir = options.disc.direction_index_for(bearing);
    const auto ladder = source.distance_ladder(shot_surface(raster.at(cell)));
    double d = ladder.front();
    for (double candidate : ladder)
      if (candidate <= norm(to_pin)) d = candidate;
    for (ActionId a : actions) {
      const auto& spec = model.actions[static_cast<std::size_t>(a)];
      if (spec.direction == dir && spec.target_distance == d) {
        policy[static_cast<std::size_t>(s)] = a;
        break;
      }
    }
    if (policy[static_cast<std::size_t>(s)] == 0)
      throw InvariantViolation("aim-at-pin action missing from the model");
  }
  return policy;
}

nlohmann::ordered_json booklet_to_json(const HoleRaster& raster, const HoleModel& model,
                                       const ValueVector& values, const Policy& policy,
                                       const BuildOptions& options, const PuttingModel& putting,
                                       const BookletMeta& meta) {
  nlohmann::ordered_json j;
  j["hole"] = meta.hole_id;
  j["player"] = meta.player_id;
  j["discretization"] = {{"n_directions", options.disc.n_directions},
                         {"distance_step", options.disc.distance_step},
                         {"realizations", options.disc.realizations}};
  j["seed"] = options.seed;
  j["sample_mode"] = to_string(options.mode);
  auto rows = nlohmann::ordered_json::array();
  for (StateId s = 1; s <= model.instance.n_states(); ++s) {
    const CellCoord cell = model.state_cells[static_cast<std::size_t>(s)];
    const SurfaceCode code = raster.at(cell);
    nlohmann::ordered_json row;
    row["cell"] = {cell.row, cell.col};
    row["surface"] = surface_name(code);
    row["value"] = values[static_cast<std::size_t>(s)];
    if (code == SurfaceCode::GREEN) {
      row["expected_putts"] = expected_putts(putting, distance(raster.center(cell), raster.pin()));
      row["action"] = nullptr;
    } else {
      const auto& spec = model.actions[static_cast<std::size_t>(policy[static_cast<std::size_t>(s)])];
      row["action"] = {{"direction_index", spec.direction},
                       {"direction_deg", options.disc.direction_degrees(spec.direction)},
                       {"distance_in", spec.target_distance}};
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

Booklet booklet_from_json(const nlohmann::json& j, const HoleRaster& raster) {
  try {
    Booklet b;
    b.meta.hole_id = j.at("hole").get<std::string>();
    b.meta.player_id = j.at("player").get<std::string>();
    const auto& disc = j.at("discretization");
    b.options.disc.n_directions = disc.at("n_directions").get<int>();
    b.options.disc.distance_step = disc.at("distance_step").get<double>();
    b.options.disc.realizations = disc.at("realizations").get<int>();
    b.options.disc.validate();
    b.options.seed = j.at("seed").get<std::uint64_t>();
    b.options.mode = parse_sample_mode(j.at("sample_mode").get<std::string>());
    b.rows = j.at("rows");
    b.filter.only.assign(raster.grid().size(), std::nullopt);
    for (const auto& row : b.rows) {
      const CellCoord c{row.at("cell").at(0).get<int>(), row.at("cell").at(1).get<int>()};
      if (!raster.in_bounds(c)) throw InvariantViolation("booklet cell outside the raster");
      const auto& action = row.at("action");
      if (action.is_null()) continue;
      b.filter.only[raster.index(c)] =
          std::pair{action.at("direction_index").get<int>(), action.at("distance_in").get<double>()};
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("booklet: ") + e.what());
  }
}

}  // namespace golfssp
