#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "golfssp/skills.hpp"

namespace golfssp {

inline constexpr const char* kShotCsvHeader =
    "player_id,tournament_id,round,hole,shot_number,surface,start_x,start_y,end_x,end_y,pin_x,"
    "pin_y,date";

/// Throws ParseError with the offending line number.
std::vector<ShotRecord> read_shots_csv(std::istream& in);
void write_shots_csv(std::ostream& out, const std::vector<ShotRecord>& records);

std::chrono::year_month_day parse_date(const std::string& iso);
std::string format_date(std::chrono::year_month_day date);

nlohmann::ordered_json putting_to_json(const PuttingModel& model);
PuttingModel putting_from_json(const nlohmann::json& j);

nlohmann::ordered_json profile_to_json(const PlayerProfile& profile);
PlayerProfile profile_from_json(const nlohmann::json& j);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

PlayerProfile load_profile(const std::filesystem::path& path);
void save_profile(const std::filesystem::path& path, const PlayerProfile& profile);

}  // namespace golfssp
