#include "golfssp/service.hpp"

#include <cmath>
#include <random>

#include "httplib.h"

#include "golfssp/errors.hpp"
#include "golfssp/io.hpp"
#include "golfssp/simulator.hpp"

namespace golfssp {

namespace fs = std::filesystem;

namespace {

CaddieService::Response error(int status, const std::string& message) {
  return {status, {{"error", message}}};
}

}  // namespace

CaddieService::CaddieService(const fs::path& course_dir, const fs::path& policy_dir) {
  if (!fs::is_directory(course_dir))
    throw std::invalid_argument("course directory " + course_dir.string() + " does not exist");
  for (const auto& entry : fs::directory_iterator(course_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".hole")
      holes_.emplace(entry.path().stem().string(), parse_hole(read_file(entry.path())));

  if (!fs::is_directory(policy_dir)) return;
  for (const auto& dir : fs::directory_iterator(policy_dir)) {
    if (!dir.is_directory() || !fs::exists(dir.path() / "profile.json")) continue;
    PlayerData data{load_profile(dir.path() / "profile.json"), {}};
    for (const auto& file : fs::directory_iterator(dir.path())) {
      if (file.path().extension() != ".json" || file.path().filename() == "profile.json") continue;
      data.booklets.emplace(file.path().stem().string(),
                            nlohmann::json::parse(read_file(file.path())));
    }
    players_.emplace(dir.path().filename().string(), std::move(data));
  }
}

CaddieService::Response CaddieService::list_holes() const {
  auto holes = nlohmann::ordered_json::array();
  for (const auto& [id, raster] : holes_)
    holes.push_back({{"id", id},
                     {"rows", raster.rows()},
                     {"cols", raster.cols()},
                     {"par", raster.par()},
                     {"cell_size_in", raster.cell_size()}});
  return {200, {{"holes", std::move(holes)}}};
}

CaddieService::Response CaddieService::hole(const std::string& id) const {
  const auto it = holes_.find(id);
  if (it == holes_.end()) return error(404, "unknown hole '" + id + "'");
  const HoleRaster& raster = it->second;
  nlohmann::ordered_json body;
  body["id"] = id;
  body["header"] = {{"cell_size_in", raster.cell_size()},
                    {"pin", {raster.pin().x, raster.pin().y}},
                    {"par", raster.par()}};
  body["rows"] = raster.rows();
  body["cols"] = raster.cols();
  body["cell_size_in"] = raster.cell_size();
  body["par"] = raster.par();
  body["pin"] = {raster.pin().x, raster.pin().y};
  if (raster.tee()) body["tee"] = {raster.tee()->row, raster.tee()->col};
  else body["tee"] = nullptr;
  auto grid = nlohmann::ordered_json::array();
  for (int r = 0; r < raster.rows(); ++r) {
    std::string line;
    for (int c = 0; c < raster.cols(); ++c) line += surface_char(raster.at({r, c}));
    grid.push_back(std::move(line));
  }
  body["grid"] = std::move(grid);
  return {200, std::move(body)};
}

CaddieService::Response CaddieService::policy(const std::string& player,
                                              const std::string& hole) const {
  const auto p = players_.find(player);
  if (p == players_.end()) return error(404, "unknown player '" + player + "'");
  const auto b = p->second.booklets.find(hole);
  if (b == p->second.booklets.end())
    return error(404, "no booklet for player '" + player + "' on hole '" + hole + "'");
  return {200, b->second};
}

CaddieService::Response CaddieService::value(const std::string& player, const std::string& hole,
                                             int row, int col) const {
  const auto booklet = policy(player, hole);
  if (booklet.status != 200) return booklet;
  const auto h = holes_.find(hole);
  if (h == holes_.end()) return error(404, "unknown hole '" + hole + "'");
  if (!h->second.in_bounds({row, col})) return error(400, "cell outside the hole");
  for (const auto& r : booklet.body.at("rows")) {
    if (r.at("cell").at(0) != row || r.at("cell").at(1) != col) continue;
    nlohmann::ordered_json body;
    body["cell"] = r.at("cell");
    body["surface"] = r.at("surface");
    body["value"] = r.at("value");
    body["best_action"] = r.at("action");
    if (r.contains("expected_putts")) body["expected_putts"] = r.at("expected_putts");
    return {200, std::move(body)};
  }
  return error(404, "cell is not a playable state");
}

CaddieService::Response CaddieService::simulate(const nlohmann::json& request) const {
  std::string hole_id, player_id;
  CellCoord cell;
  double degrees = 0.0, requested = 0.0;
  std::optional<std::uint64_t> seed;
  try {
    hole_id = request.at("hole").get<std::string>();
    player_id = request.at("player").get<std::string>();
    cell = {request.at("cell").at(0).get<int>(), request.at("cell").at(1).get<int>()};
    degrees = request.at("direction_deg").get<double>();
    requested = request.at("distance_in").get<double>();
    if (request.contains("seed")) seed = request.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    return error(400, std::string("bad simulate request: ") + e.what());
  }
  if (!std::isfinite(degrees) || !std::isfinite(requested) || requested <= 0.0)
    return error(400, "direction and distance must be finite, distance positive");

  const auto h = holes_.find(hole_id);
  if (h == holes_.end()) return error(404, "unknown hole '" + hole_id + "'");
  const auto p = players_.find(player_id);
  if (p == players_.end()) return error(404, "unknown player '" + player_id + "'");
  const HoleRaster& raster = h->second;
  if (!raster.in_bounds(cell) || !is_playable(raster.at(cell)))
    return error(400, "shots start from a tee, fairway, rough or bunker cell");

  BuildOptions options;
  if (const auto b = p->second.booklets.find(hole_id); b != p->second.booklets.end())
    options = booklet_from_json(b->second, raster).options;
  const SampleSource source(p->second.profile, options);
  const ShotSurface surface = shot_surface(raster.at(cell));
  const auto ladder = source.distance_ladder(surface);
  if (ladder.empty()) return error(400, "player has no targetable distance from this surface");
  double d = ladder.front();
  for (double candidate : ladder)
    if (std::abs(candidate - requested) < std::abs(d - requested)) d = candidate;
  const int dir = options.disc.direction_index_for(degrees);

  const auto samples = source.samples(surface, cell, dir, d);
  std::mt19937_64 rng(seed.value_or(options.seed));
  const auto k = std::uniform_int_distribution<std::size_t>(0, samples.size() - 1)(rng);
  const CanonicalFrame frame = heading_frame(raster.center(cell), options.disc.heading(dir), d);
  const ShotOutcome o = simulate_shot(raster, cell, frame, samples[k]);

  nlohmann::ordered_json body;
  body["direction_index"] = dir;
  body["direction_deg"] = options.disc.direction_degrees(dir);
  body["distance_in"] = d;
  body["realization"] = k;
  body["final_cell"] = {o.final.row, o.final.col};
  body["penalty"] = o.penalty;
  body["event"] = to_string(o.event);
  body["landed_on_green"] = o.landed_on_green;
  body["distance_to_pin"] = o.distance_to_pin;
  if (o.landed_on_green) {
    body["expected_putts"] = expected_putts(p->second.profile.putting, o.distance_to_pin);
    body["sampled_putts"] = sample_putts(p->second.profile.putting, o.distance_to_pin, rng);
  } else {
    body["expected_putts"] = nullptr;
    body["sampled_putts"] = nullptr;
  }
  return {200, std::move(body)};
}

void CaddieService::mount(httplib::Server& server) const {
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get("/holes", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, list_holes());
  });
  server.Get(R"(/holes/([^/]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, hole(req.matches[1]));
  });
  server.Get(R"(/policies/([^/]+)/([^/]+))",
             [this, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, policy(req.matches[1], req.matches[2]));
             });
  server.Get(R"(/values/([^/]+)/([^/]+)/(-?\d+)/(-?\d+))",
             [this, reply](const httplib::Request& req, httplib::Response& res) {
               int row = 0, col = 0;
               try {
                 row = std::stoi(req.matches[3]);
                 col = std::stoi(req.matches[4]);
               } catch (const std::exception&) {
                 reply(res, error(400, "bad cell coordinates"));
                 return;
               }
               reply(res, value(req.matches[1], req.matches[2], row, col));
             });
  server.Post("/simulate", [this, reply](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    try {
      body = nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::parse_error& e) {
      reply(res, error(400, std::string("body is not JSON: ") + e.what()));
      return;
    }
    try {
      reply(res, simulate(body));
    } catch (const Error& e) {
      reply(res, error(422, e.what()));
    }
  });
}

}  // namespace golfssp
