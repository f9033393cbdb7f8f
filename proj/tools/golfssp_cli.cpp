#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"

#include "golfssp/errors.hpp"
#include "golfssp/io.hpp"
#include "golfssp/pipeline.hpp"
#include "golfssp/service.hpp"
#include "golfssp/synthgen.hpp"

namespace fs = std::filesystem;
using namespace golfssp;

namespace {

struct ConfigFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> directions;
  std::optional<double> distance_step;
  std::optional<int> realizations;
  std::optional<double> epsilon;
  std::optional<int> months;
  std::optional<unsigned> threads;
  std::optional<std::string> mode;
  std::optional<std::string> reference_date;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON config; flags override its keys");
    app->add_option("--seed", seed);
    app->add_option("--directions", directions);
    app->add_option("--distance-step", distance_step, "Inches");
    app->add_option("--realizations", realizations);
    app->add_option("--epsilon", epsilon);
    app->add_option("--months", months);
    app->add_option("--threads", threads);
    app->add_option("--mode", mode, "cached or per_action");
    app->add_option("--reference-date", reference_date, "YYYY-MM-DD");
  }

  PipelineConfig resolve() const {
    PipelineConfig c;
    if (!config_path.empty()) c = config_from_json(nlohmann::json::parse(read_file(config_path)));
    if (seed) c.seed = *seed;
    if (directions) c.disc.n_directions = *directions;
    if (distance_step) c.disc.distance_step = *distance_step;
    if (realizations) c.disc.realizations = *realizations;
    if (epsilon) c.epsilon = *epsilon;
    if (months) c.months = *months;
    if (threads) c.threads = *threads;
    if (mode) c.mode = parse_sample_mode(*mode);
    if (reference_date) c.reference_date = parse_date(*reference_date);
    c.disc.validate();
    if (!(c.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (c.months < 1) throw std::invalid_argument("months must be positive");
    return c;
  }
};

std::vector<ShotRecord> load_shots(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_shots_csv(in);
}

HoleRaster load_hole(const fs::path& path) { return parse_hole(read_file(path)); }

int run_ingest(const fs::path& shots, const fs::path& out, const PipelineConfig& config) {
  const auto result = ingest(load_shots(shots), config);
  nlohmann::ordered_json report;
  for (const auto& [player, profile] : result.profiles) {
    save_profile(out / player / "profile.json", profile);
    nlohmann::ordered_json surfaces;
    for (auto s : kProfileSurfaces) {
      const auto& st = result.stats.at(player)[surface_index(s)];
      surfaces[std::string(to_string(s))] = {{"extracted", st.extracted},
                                             {"kept", st.kept},
                                             {"dropped", st.extracted - st.kept}};
    }
    const auto& d = result.diagnostics.at(player);
    report[player] = {{"surfaces", surfaces},
                      {"tee_groups_accepted", d.accepted_tee_groups},
                      {"tee_groups_discarded", d.discarded_tee_groups},
                      {"degenerate_records", d.degenerate_records},
                      {"green_records", d.green_records}};
  }
  std::cout << report.dump(2) << '\n';
  return 0;
}

int run_solve(const fs::path& hole_path, const fs::path& profile_path, const fs::path& out,
              std::string hole_id, const PipelineConfig& config) {
  const HoleRaster raster = load_hole(hole_path);
  const auto report = validate_hole(raster);
  if (!report.accepted())
    throw InvariantViolation("hole " + hole_path.string() + " fails validation");
  const PlayerProfile profile = load_profile(profile_path);
  if (hole_id.empty()) hole_id = hole_path.stem().string();
  const SolveResult r = solve(raster, profile, config, {hole_id, profile.skill.player_id});
  write_file(out, r.booklet.dump(1) + "\n");
  nlohmann::ordered_json stats{{"states", r.stats.states},
                               {"actions", r.stats.actions},
                               {"transitions", r.stats.transitions},
                               {"iterations", r.stats.iterations},
                               {"residual", r.stats.residual},
                               {"build_seconds", r.stats.build_seconds},
                               {"solve_seconds", r.stats.solve_seconds}};
  if (raster.tee())
    stats["tee_value"] = r.solution.values[static_cast<std::size_t>(r.model.state_at(raster, *raster.tee()))];
  std::cout << stats.dump(2) << '\n';
  return 0;
}

int run_simulate(const fs::path& hole_path, const std::vector<std::string>& pairs, std::size_t n,
                 std::uint64_t seed, const std::string& out) {
  if (n == 0) throw std::invalid_argument("-n must be positive");
  if (pairs.empty() || pairs.size() % 2 != 0)
    throw std::invalid_argument("--play takes PROFILE BOOKLET pairs");
  const HoleRaster raster = load_hole(hole_path);
  std::vector<LeaderboardRow> rows;
  for (std::size_t i = 0; i < pairs.size(); i += 2) {
    const PlayerProfile profile = load_profile(pairs[i]);
    const auto booklet = nlohmann::json::parse(read_file(pairs[i + 1]));
    rows.push_back({profile.skill.player_id, simulate_booklet(raster, profile, booklet, n, seed)});
  }
  rows = leaderboard(std::move(rows));
  if (out.empty() || out == "-") {
    write_leaderboard_csv(std::cout, rows);
  } else {
    std::ofstream f(out);
    if (!f) throw ParseError("cannot write " + out);
    write_leaderboard_csv(f, rows);
  }
  return 0;
}

int run_serve(const fs::path& courses, const fs::path& policies, const std::string& host, int port) {
  const CaddieService service(courses, policies);
  httplib::Server server;
  service.mount(server);
  if (!server.bind_to_port(host, port))
    throw std::invalid_argument("cannot bind " + host + ":" + std::to_string(port));
  std::cerr << "serving on http://" << host << ':' << port << '\n';
  server.listen_after_bind();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strategy booklets for golf holes"};
  app.require_subcommand(1);

  ConfigFlags flags;

  auto* ingest_cmd = app.add_subcommand("ingest", "Shot CSV to player profiles");
  std::string shots_path, profiles_out = "profiles";
  ingest_cmd->add_option("--shots", shots_path)->required();
  ingest_cmd->add_option("--out", profiles_out, "Writes <out>/<player>/profile.json");
  flags.attach(ingest_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Optimal booklet for one hole and player");
  std::string hole_path, profile_path, booklet_out, hole_id;
  solve_cmd->add_option("--hole", hole_path)->required();
  solve_cmd->add_option("--profile", profile_path)->required();
  solve_cmd->add_option("--out", booklet_out)->required();
  solve_cmd->add_option("--hole-id", hole_id, "Defaults to the file stem");
  flags.attach(solve_cmd);

  auto* sim_cmd = app.add_subcommand("simulate", "Leaderboard CSV from booklets");
  std::string sim_hole, csv_out;
  std::vector<std::string> plays;
  std::size_t n_holes = 10000;
  std::uint64_t sim_seed = 1;
  sim_cmd->add_option("--hole", sim_hole)->required();
  sim_cmd->add_option("--play", plays, "PROFILE BOOKLET, repeatable")->required()->expected(2)->allow_extra_args(false);
  sim_cmd->add_option("-n", n_holes);
  sim_cmd->add_option("--seed", sim_seed);
  sim_cmd->add_option("--out", csv_out, "CSV path, stdout by default");

  auto* serve_cmd = app.add_subcommand("serve", "HTTP service for the caddie UI");
  std::string courses = "data/holes", policies = "policies", host = "127.0.0.1";
  int port = 8080;
  serve_cmd->add_option("--courses", courses);
  serve_cmd->add_option("--policies", policies);
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--port", port);

  auto* traces_cmd = app.add_subcommand("gen-traces", "Synthetic shot CSV");
  std::string traces_out;
  std::size_t n_shots = 4000, putt_holes = 2000;
  std::uint64_t traces_seed = 1;
  SyntheticPlayerParams player;
  traces_cmd->add_option("--out", traces_out)->required();
  traces_cmd->add_option("--shots", n_shots);
  traces_cmd->add_option("--putt-holes", putt_holes);
  traces_cmd->add_option("--seed", traces_seed);
  traces_cmd->add_option("--player", player.player_id);
  traces_cmd->add_option("--lateral", player.lateral_sigma_ratio);
  traces_cmd->add_option("--distance", player.distance_sigma_ratio);
  traces_cmd->add_option("--tee-max", player.max_target[0]);
  traces_cmd->add_option("--fairway-max", player.max_target[1]);
  traces_cmd->add_option("--rough-max", player.max_target[2]);
  traces_cmd->add_option("--bunker-max", player.max_target[3]);

  auto* hole_cmd = app.add_subcommand("gen-hole", "Random valid hole raster");
  std::string hole_out;
  HoleSpec spec;
  std::uint64_t hole_seed = 1;
  hole_cmd->add_option("--out", hole_out)->required();
  hole_cmd->add_option("--rows", spec.rows);
  hole_cmd->add_option("--cols", spec.cols);
  hole_cmd->add_option("--par", spec.par);
  hole_cmd->add_option("--cell-size", spec.cell_size);
  hole_cmd->add_option("--density", spec.hazard_density);
  hole_cmd->add_option("--seed", hole_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*ingest_cmd) return run_ingest(shots_path, profiles_out, flags.resolve());
    if (*solve_cmd) return run_solve(hole_path, profile_path, booklet_out, hole_id, flags.resolve());
    if (*sim_cmd) return run_simulate(sim_hole, plays, n_holes, sim_seed, csv_out);
    if (*serve_cmd) return run_serve(courses, policies, host, port);
    if (*traces_cmd) {
      std::mt19937_64 rng(traces_seed);
      const auto traces = generate_traces(player, n_shots, rng, putt_holes);
      std::ofstream f(traces_out);
      if (!f) throw ParseError("cannot write " + traces_out);
      write_shots_csv(f, traces.records);
      return 0;
    }
    if (*hole_cmd) {
      std::mt19937_64 rng(hole_seed);
      write_file(hole_out, serialize_hole(generate_hole(spec, rng)));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
