#include "golfssp/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "golfssp/errors.hpp"

namespace golfssp {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    out.push_back(line.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view s, std::size_t line, const char* field) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("line " + std::to_string(line) + ": bad " + field + " '" + std::string(s) +
                     "'");
  return value;
}

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::chrono::year_month_day parse_date(const std::string& iso) {
  int y = 0;
  unsigned m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(iso.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3)
    throw ParseError("bad date '" + iso + "'");
  const std::chrono::year_month_day date{std::chrono::year{y}, std::chrono::month{m},
                                         std::chrono::day{d}};
  if (!date.ok()) throw ParseError("invalid date '" + iso + "'");
  return date;
}

std::string format_date(std::chrono::year_month_day date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

std::vector<ShotRecord> read_shots_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  if (trim(line) != kShotCsvHeader) throw ParseError("line 1: unexpected header '" + line + "'");
  std::vector<ShotRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto f = split(text, ',');
    if (f.size() != 13)
      throw ParseError("line " + std::to_string(lineno) + ": expected 13 fields, got " +
                       std::to_string(f.size()));
    ShotRecord r;
    r.player_id = std::string(f[0]);
    r.tournament_id = std::string(f[1]);
    r.round = parse_number<int>(f[2], lineno, "round");
    r.hole = parse_number<int>(f[3], lineno, "hole");
    r.shot_number = parse_number<int>(f[4], lineno, "shot_number");
    try {
      r.surface = parse_surface(f[5]);
      r.date = parse_date(std::string(f[12]));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
    r.start = {parse_number<double>(f[6], lineno, "start_x"),
               parse_number<double>(f[7], lineno, "start_y")};
    r.end = {parse_number<double>(f[8], lineno, "end_x"),
             parse_number<double>(f[9], lineno, "end_y")};
    r.pin = {parse_number<double>(f[10], lineno, "pin_x"),
             parse_number<double>(f[11], lineno, "pin_y")};
    if (r.round < 1 || r.round > 4 || r.hole < 1 || r.hole > 18 || r.shot_number < 1)
      throw ParseError("line " + std::to_string(lineno) + ": round/hole/shot out of range");
    if (!is_finite(r.start) || !is_finite(r.end) || !is_finite(r.pin))
      throw ParseError("line " + std::to_string(lineno) + ": non-finite coordinate");
    out.push_back(std::move(r));
  }
  return out;
}

void write_shots_csv(std::ostream& out, const std::vector<ShotRecord>& records) {
  out << kShotCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.player_id << ',' << r.tournament_id << ',' << r.round << ',' << r.hole << ','
        << r.shot_number << ',' << to_string(r.surface) << ',' << number(r.start.x) << ','
        << number(r.start.y) << ',' << number(r.end.x) << ',' << number(r.end.y) << ','
        << number(r.pin.x) << ',' << number(r.pin.y) << ',' << format_date(r.date) << '\n';
  }
}

nlohmann::ordered_json putting_to_json(const PuttingModel& model) {
  nlohmann::ordered_json j;
  j["midpoints_in"] = model.midpoints;
  j["probabilities"] = model.probabilities;
  return j;
}

PuttingModel putting_from_json(const nlohmann::json& j) {
  PuttingModel m;
  m.midpoints = j.at("midpoints_in").get<std::array<double, kPuttBuckets>>();
  m.probabilities = j.at("probabilities").get<std::array<PuttProbabilities, kPuttBuckets>>();
  return m;
}

nlohmann::ordered_json profile_to_json(const PlayerProfile& profile) {
  nlohmann::ordered_json j;
  j["player_id"] = profile.skill.player_id;
  j["ladder_step"] = profile.ladder.step;
  nlohmann::ordered_json surfaces = nlohmann::ordered_json::object();
  for (auto s : kProfileSurfaces) {
    const auto& skill = profile.skill.at(s);
    nlohmann::ordered_json js;
    js["max_target_distance"] = skill.max_target_distance;
    js["max_reach"] = skill.max_reach;
    auto ladder = nlohmann::ordered_json::array();
    for (const auto& e : profile.ladder.at(s)) {
      nlohmann::ordered_json je;
      je["target_distance"] = e.target_distance;
      je["lateral_scale"] = e.lateral_scale;
      auto samples = nlohmann::ordered_json::array();
      for (const auto& p : e.samples) samples.push_back({p.x, p.y});
      je["samples"] = std::move(samples);
      ladder.push_back(std::move(je));
    }
    js["ladder"] = std::move(ladder);
    auto pairs = nlohmann::ordered_json::array();
    for (const auto& p : skill.pairs) pairs.push_back({p.target_distance, p.arrival.x, p.arrival.y});
    js["pairs"] = std::move(pairs);
    surfaces[std::string(to_string(s))] = std::move(js);
  }
  j["surfaces"] = std::move(surfaces);
  j["putting"] = putting_to_json(profile.putting);
  return j;
}

PlayerProfile profile_from_json(const nlohmann::json& j) {
  try {
    PlayerProfile p;
    p.skill.player_id = j.at("player_id").get<std::string>();
    p.ladder.step = j.at("ladder_step").get<double>();
    const auto& surfaces = j.at("surfaces");
    for (auto s : kProfileSurfaces) {
      const auto it = surfaces.find(std::string(to_string(s)));
      if (it == surfaces.end()) continue;
      auto& skill = p.skill.at(s);
      skill.max_target_distance = it->at("max_target_distance").get<double>();
      skill.max_reach = it->at("max_reach").get<double>();
      for (const auto& je : it->at("ladder")) {
        LadderEntry e;
        e.target_distance = je.at("target_distance").get<double>();
        e.lateral_scale = je.value("lateral_scale", 1.0);
        for (const auto& xy : je.at("samples"))
          e.samples.push_back({xy.at(0).get<double>(), xy.at(1).get<double>()});
        p.ladder.at(s).push_back(std::move(e));
      }
      if (it->contains("pairs"))
        for (const auto& t : it->at("pairs"))
          skill.pairs.push_back({s, t.at(0).get<double>(), {t.at(1).get<double>(), t.at(2).get<double>()}});
    }
    p.putting = putting_from_json(j.at("putting"));
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("profile: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
}

PlayerProfile load_profile(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return profile_from_json(j);
}

void save_profile(const std::filesystem::path& path, const PlayerProfile& profile) {
  write_file(path, profile_to_json(profile).dump() + "\n");
}

}  // namespace golfssp
