#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "golfssp/builder.hpp"
#include "golfssp/metrics.hpp"
#include "golfssp/skills.hpp"

namespace golfssp {

struct PipelineConfig {
  std::optional<std::chrono::year_month_day> reference_date;  // latest record date when unset
  int months = 12;
  Discretization disc;
  double epsilon = 1e-4;
  int max_iters = 10000;
  std::uint64_t seed = 1;
  SampleMode mode = SampleMode::cached;
  unsigned threads = 1;
  std::size_t putt_min_count = 30;

  BuildOptions build_options() const;
};

/// Keys mirror the command line flags; unknown keys are rejected.
PipelineConfig config_from_json(const nlohmann::json& j);

struct SurfaceIngestStats {
  std::size_t extracted = 0;
  std::size_t kept = 0;
};

struct IngestResult {
  std::map<std::string, PlayerProfile> profiles;
  std::map<std::string, std::array<SurfaceIngestStats, 4>> stats;
  std::map<std::string, ExtractDiagnostics> diagnostics;
};

/// Profiles for every player in the records. Throws EmptyProfile when a
/// player lacks pairs on some surface, or when there are no records at all.
IngestResult ingest(const std::vector<ShotRecord>& records, const PipelineConfig& config);

struct SolveStats {
  std::size_t states = 0;
  std::size_t actions = 0;
  std::size_t transitions = 0;
  int iterations = 0;
  double residual = 0.0;
  double build_seconds = 0.0;
  double solve_seconds = 0.0;
};

struct SolveResult {
  HoleModel model;
  ValueIterationResult solution;
  nlohmann::ordered_json booklet;
  SolveStats stats;
};

SolveResult solve(const HoleRaster& raster, const PlayerProfile& profile,
                  const PipelineConfig& config, const BookletMeta& meta);

/// Metrics of n holes played with the booklet's policy.
RoundMetrics simulate_booklet(const HoleRaster& raster, const PlayerProfile& profile,
                              const nlohmann::json& booklet, std::size_t n, std::uint64_t seed);

}  // namespace golfssp
