#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "golfssp/builder.hpp"
#include "golfssp/course.hpp"
#include "golfssp/skills.hpp"

namespace httplib {
class Server;
}

namespace golfssp {

/// Read-only artifacts behind the caddie HTTP endpoints.
///
/// Layout: `course_dir/<hole>.hole`; `policy_dir/<player>/profile.json` and
/// `policy_dir/<player>/<hole>.json` (booklets written by `golfssp solve`).
class CaddieService {
 public:
  CaddieService(const std::filesystem::path& course_dir, const std::filesystem::path& policy_dir);

  struct Response {
    int status = 200;
    nlohmann::ordered_json body;
  };

  Response list_holes() const;
  Response hole(const std::string& id) const;
  Response policy(const std::string& player, const std::string& hole) const;
  Response value(const std::string& player, const std::string& hole, int row, int col) const;
  /// Body: {hole, player, cell: [r, c], direction_deg, distance_in, seed?}.
  Response simulate(const nlohmann::json& request) const;

  /// Installs the GET/POST handlers on `server`.
  void mount(httplib::Server& server) const;

 private:
  struct PlayerData {
    PlayerProfile profile;
    std::map<std::string, nlohmann::json> booklets;
  };

  std::map<std::string, HoleRaster> holes_;
  std::map<std::string, PlayerData> players_;
};

}  // namespace golfssp
