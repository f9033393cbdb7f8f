#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "fixtures.hpp"
#include "golfssp/errors.hpp"
#include "golfssp/io.hpp"
#include "golfssp/synthgen.hpp"

using namespace golfssp;

TEST_CASE("shot CSV round trip is exact") {
  std::mt19937_64 rng(4);
  const auto traces = generate_traces(SyntheticPlayerParams{}, 300, rng, 50);
  std::ostringstream out;
  write_shots_csv(out, traces.records);
  std::istringstream in(out.str());
  const auto back = read_shots_csv(in);
  REQUIRE(back.size() == traces.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    const auto& a = traces.records[i];
    const auto& b = back[i];
    CHECK(a.player_id == b.player_id);
    CHECK(a.tournament_id == b.tournament_id);
    CHECK(a.round == b.round);
    CHECK(a.hole == b.hole);
    CHECK(a.shot_number == b.shot_number);
    CHECK(a.surface == b.surface);
    CHECK(a.start == b.start);
    CHECK(a.end == b.end);
    CHECK(a.pin == b.pin);
    CHECK(a.date == b.date);
  }
  std::ostringstream again;
  write_shots_csv(again, back);
  CHECK(again.str() == out.str());
}

TEST_CASE("CSV errors name the line") {
  const std::string header = std::string(kShotCsvHeader) + "\n";
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_shots_csv(in);
  };
  CHECK(parse("").empty());
  CHECK(parse(header).empty());
  CHECK_THROWS_AS(parse("a,b\n"), ParseError);
  try {
    parse(header + "p,t,1,1,1,fairway,0,0,1,1,2,2,2024-01-01\np,t,1,1,1,swamp,0,0,1,1,2,2,2024-01-01\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse(header + "p,t,1,1,1,fairway,0,0,1,1,2\n"), ParseError);
  CHECK_THROWS_AS(parse(header + "p,t,5,1,1,fairway,0,0,1,1,2,2,2024-01-01\n"), ParseError);
  CHECK_THROWS_AS(parse(header + "p,t,1,1,1,fairway,0,x,1,1,2,2,2024-01-01\n"), ParseError);
  CHECK_THROWS_AS(parse(header + "p,t,1,1,1,fairway,0,0,1,1,2,2,2024-02-30\n"), ParseError);
  CHECK_THROWS_AS(parse(header + "p,t,1,1,1,fairway,0,nan,1,1,2,2,2024-01-01\n"), ParseError);
}

TEST_CASE("dates") {
  using namespace std::chrono;
  CHECK(parse_date("2024-06-01") == year{2024} / 6 / 1);
  CHECK(format_date(year{2023} / 1 / 9) == "2023-01-09");
  CHECK_THROWS_AS(parse_date("2024/06/01"), ParseError);
  CHECK_THROWS_AS(parse_date("2024-06-01x"), ParseError);
}

TEST_CASE("profile JSON round trip") {
  auto profile = fixture::deterministic_profile(1200.0, 400.0, 3, [](double d) { return Point2{d / 100, d}; });
  profile.ladder.at(ShotSurface::rough)[1].lateral_scale = 1.5;
  const auto j = profile_to_json(profile);
  const auto back = profile_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.skill.player_id == profile.skill.player_id);
  CHECK(back.ladder.step == profile.ladder.step);
  for (auto s : kProfileSurfaces) {
    CHECK(back.skill.at(s).max_target_distance == profile.skill.at(s).max_target_distance);
    CHECK(back.skill.at(s).max_reach == profile.skill.at(s).max_reach);
    CHECK(back.skill.at(s).pairs.size() == profile.skill.at(s).pairs.size());
    REQUIRE(back.ladder.at(s).size() == profile.ladder.at(s).size());
    for (std::size_t i = 0; i < back.ladder.at(s).size(); ++i) {
      CHECK(back.ladder.at(s)[i].samples == profile.ladder.at(s)[i].samples);
      CHECK(back.ladder.at(s)[i].lateral_scale == profile.ladder.at(s)[i].lateral_scale);
    }
  }
  CHECK(back.putting.probabilities == profile.putting.probabilities);
  CHECK(profile_to_json(back).dump() == j.dump());
  CHECK_THROWS_AS(profile_from_json(nlohmann::json::parse("{\"player_id\": 3}")), ParseError);
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(read_file("/nonexistent/golfssp/file"), ParseError);
  CHECK_THROWS_AS(load_profile("/nonexistent/golfssp/profile.json"), ParseError);
}
