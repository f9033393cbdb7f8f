#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "golfssp/builder.hpp"
#include "golfssp/course.hpp"
#include "golfssp/io.hpp"
#include "golfssp/pipeline.hpp"
#include "golfssp/synthgen.hpp"

namespace fixture {

using namespace golfssp;

inline std::filesystem::path data_path(const std::string& rel) {
  return std::filesystem::path(GOLFSSP_DATA_DIR) / rel;
}

inline HoleRaster load_hole(const std::string& name) {
  return parse_hole(read_file(data_path("holes/" + name + ".hole")));
}

/// Raster from row strings with the given header values.
inline HoleRaster raster(const std::vector<std::string>& rows, double cell_size, Point2 pin,
                         int par = 4) {
  std::string text = "{\"cell_size_in\":" + std::to_string(cell_size) + ",\"pin\":[" +
                     std::to_string(pin.x) + "," + std::to_string(pin.y) +
                     "],\"par\":" + std::to_string(par) + "}\n";
  for (const auto& r : rows) text += r + "\n";
  return parse_hole(text);
}

inline PuttingModel constant_putting(PuttProbabilities p) {
  PuttingModel m;
  m.midpoints = putt_bucket_midpoints();
  m.probabilities.fill(p);
  return m;
}

/// Every surface targets up to `max_target` and every sample of the ladder
/// entry at distance d equals `sample(d)`.
template <typename SampleFn>
PlayerProfile deterministic_profile(double max_target, double step, int realizations,
                                    SampleFn sample, PuttProbabilities putts = {0.5, 0.5, 0.0}) {
  PlayerProfile p;
  p.skill.player_id = "det_player";
  p.ladder.step = step;
  for (auto s : kProfileSurfaces) {
    auto& skill = p.skill.at(s);
    skill.pairs.push_back({s, max_target, {0.0, max_target}});
    skill.max_target_distance = max_target;
    skill.max_reach = max_target;
    for (double d = step; d <= max_target + 1e-9; d += step)
      p.ladder.at(s).push_back(
          {d, 1.0, std::vector<Point2>(static_cast<std::size_t>(realizations), sample(d))});
  }
  p.putting = constant_putting(putts);
  return p;
}

/// Synthetic player used by the end-to-end checks: reaches a 5800 in hole in
/// two full shots.
inline SyntheticPlayerParams desk_player_params(const std::string& id = "desk_player") {
  SyntheticPlayerParams params;
  params.player_id = id;
  params.min_target = {800.0, 400.0, 400.0, 200.0};
  params.max_target = {3600.0, 2800.0, 2400.0, 1600.0};
  return params;
}

inline PlayerProfile synthetic_profile(const SyntheticPlayerParams& params,
                                       const PipelineConfig& config, std::uint64_t seed,
                                       std::size_t shots = 6000, std::size_t putt_holes = 2000) {
  std::mt19937_64 rng(seed);
  const auto traces = generate_traces(params, shots, rng, putt_holes);
  auto result = ingest(traces.records, config);
  return result.profiles.at(params.player_id);
}

inline PipelineConfig reduced_config() {
  PipelineConfig c;
  c.disc.n_directions = 36;
  c.disc.distance_step = 400.0;
  c.disc.realizations = 10;
  return c;
}

/// The three-cell builder example, ringed by out-of-bounds:
///   OOOOO / OTFGO / OOOOO with 40 in cells and the pin at the green centre.
inline HoleRaster strip() {
  return raster({"OOOOO", "OTFGO", "OOOOO"}, 40.0, {140.0, 60.0}, 3);
}

}  // namespace fixture
