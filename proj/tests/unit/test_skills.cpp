#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "golfssp/errors.hpp"
#include "golfssp/skills.hpp"
#include "golfssp/synthgen.hpp"
#include "golfssp/units.hpp"
#include "oracles.hpp"

using namespace golfssp;
using namespace std::chrono;

namespace {

ShotRecord shot(ShotSurface s, Point2 start, Point2 end, Point2 pin, int round = 1,
                std::string tournament = "T1", int hole = 1) {
  ShotRecord r;
  r.player_id = "p";
  r.tournament_id = std::move(tournament);
  r.round = round;
  r.hole = hole;
  r.surface = s;
  r.start = start;
  r.end = end;
  r.pin = pin;
  r.date = year{2024} / 5 / 1;
  return r;
}

TargetDestinationPair pair(ShotSurface s, double t, Point2 arrival) { return {s, t, arrival}; }

SkillProfile profile_with(ShotSurface s, std::vector<TargetDestinationPair> pairs) {
  SkillProfile p;
  p.at(s) = make_surface_skill(std::move(pairs));
  return p;
}

}  // namespace

TEST_CASE("fairway pair in an aligned frame") {
  const std::vector<ShotRecord> records{
      shot(ShotSurface::fairway, {0, 0}, {39, 3900}, {0, 3937})};
  const auto out = extract_pairs(records);
  REQUIRE(out.at(ShotSurface::fairway).size() == 1);
  const auto& p = out.at(ShotSurface::fairway)[0];
  CHECK(p.target_distance == doctest::Approx(3937.0));
  CHECK(p.arrival.x == doctest::Approx(39.0));
  CHECK(p.arrival.y == doctest::Approx(3900.0));
}

TEST_CASE("two-round tee groups are discarded") {
  const std::vector<ShotRecord> records{
      shot(ShotSurface::tee, {0, 0}, {0, 10000}, {0, 15000}, 1),
      shot(ShotSurface::tee, {0, 0}, {0, 10050}, {0, 15000}, 2)};
  const auto out = extract_pairs(records);
  CHECK(out.at(ShotSurface::tee).empty());
  CHECK(out.diagnostics.discarded_tee_groups == 1);
  CHECK(out.diagnostics.accepted_tee_groups == 0);
}

TEST_CASE("four-round tee group targets the centroid of the landings") {
  // Ends (0,10000+-d) with lateral spread; centroid (5, 10000).
  const std::vector<Point2> ends{{-20, 10040}, {30, 9960}, {10, 10020}, {0, 9980}};
  std::vector<ShotRecord> records;
  const std::vector<Point2> tees{{0, 0}, {50, 0}, {-50, 0}, {0, 40}};
  for (int k = 0; k < 4; ++k) records.push_back(shot(ShotSurface::tee, tees[k], ends[k], {0, 14000}, k + 1));
  const auto out = extract_pairs(records);
  const auto& pairs = out.at(ShotSurface::tee);
  REQUIRE(pairs.size() == 4);
  CHECK(out.diagnostics.accepted_tee_groups == 1);
  const Point2 target{5.0, 10000.0};
  for (int k = 0; k < 4; ++k) {
    // Hand rotation: unit u = (target - tee)/|.|, canonical = (v.x*u.y - v.y*u.x, v.x*u.x + v.y*u.y).
    const Point2 u = (1.0 / distance(target, tees[k])) * (target - tees[k]);
    const Point2 v = ends[k] - tees[k];
    CHECK(pairs[k].target_distance == doctest::Approx(distance(target, tees[k])));
    CHECK(pairs[k].arrival.x == doctest::Approx(v.x * u.y - v.y * u.x));
    CHECK(pairs[k].arrival.y == doctest::Approx(v.x * u.x + v.y * u.y));
    CHECK(pairs[k].target_distance == doctest::Approx(10000.0).epsilon(0.01));
  }
}

TEST_CASE("tee groups spread wider than 5 m are discarded") {
  std::vector<ShotRecord> records;
  for (int k = 0; k < 3; ++k)
    records.push_back(shot(ShotSurface::tee, {k * 300.0, 0}, {0, 9000}, {0, 14000}, k + 1));
  const auto out = extract_pairs(records);
  CHECK(out.at(ShotSurface::tee).empty());
  CHECK(out.diagnostics.tee_radius_failures == 1);
}

TEST_CASE("three rounds are enough") {
  std::vector<ShotRecord> records;
  for (int k = 0; k < 3; ++k)
    records.push_back(shot(ShotSurface::tee, {0, 0}, {k * 10.0, 9000}, {0, 14000}, k + 1));
  CHECK(extract_pairs(records).at(ShotSurface::tee).size() == 3);
}

TEST_CASE("green shots and shots from the pin do not make pairs") {
  const std::vector<ShotRecord> records{shot(ShotSurface::green, {0, 0}, {0, 10}, {0, 10}),
                                        shot(ShotSurface::rough, {5, 5}, {0, 10}, {5, 5})};
  const auto out = extract_pairs(records);
  CHECK(out.diagnostics.green_records == 1);
  CHECK(out.diagnostics.degenerate_records == 1);
  for (auto s : kProfileSurfaces) CHECK(out.at(s).empty());
}

TEST_CASE("window keeps the months up to the reference date") {
  std::vector<ShotRecord> records;
  for (auto d : {year{2023} / 6 / 1, year{2023} / 6 / 2, year{2024} / 6 / 1, year{2024} / 6 / 2}) {
    records.push_back(shot(ShotSurface::fairway, {0, 0}, {0, 1}, {0, 1}));
    records.back().date = d;
  }
  const auto kept = within_window(records, year{2024} / 6 / 1, 12);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].date == year{2023} / 6 / 2);
  CHECK(kept[1].date == year{2024} / 6 / 1);
}

TEST_CASE("outlier filter examples") {
  CHECK_FALSE(passes_outlier_filter(pair(ShotSurface::fairway, 5000, {0, 4100}), ShotSurface::fairway));
  CHECK(passes_outlier_filter(pair(ShotSurface::fairway, 3000, {0, 1000}), ShotSurface::fairway));
  CHECK(passes_outlier_filter(pair(ShotSurface::rough, 5000, {10, 3900}), ShotSurface::rough));
  // Caps are inclusive; the wedge limit is 3937 in.
  CHECK(passes_outlier_filter(pair(ShotSurface::fairway, 5000, {0, 5800}), ShotSurface::fairway));
  CHECK(passes_outlier_filter(pair(ShotSurface::fairway, 3937, {0, 100}), ShotSurface::fairway));
  CHECK_FALSE(passes_outlier_filter(pair(ShotSurface::fairway, 3938, {0, 100}), ShotSurface::fairway));
  CHECK_FALSE(passes_outlier_filter(pair(ShotSurface::tee, 2000, {0, 3201}), ShotSurface::tee));
  CHECK_FALSE(passes_outlier_filter(pair(ShotSurface::bunker, 1500, {0, 200}), ShotSurface::bunker));
}

TEST_CASE("filter_outliers is order preserving and idempotent") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t(500, 9000), e(-1500, 1500);
  for (auto s : kProfileSurfaces) {
    std::vector<TargetDestinationPair> pairs;
    for (int i = 0; i < 500; ++i) {
      const double target = t(rng);
      pairs.push_back(pair(s, target, {static_cast<double>(i), target + e(rng)}));
    }
    const auto once = filter_outliers(pairs, s);
    const auto twice = filter_outliers(once, s);
    REQUIRE(once.size() == twice.size());
    for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i].arrival == twice[i].arrival);
    for (std::size_t i = 1; i < once.size(); ++i) CHECK(once[i - 1].arrival.x < once[i].arrival.x);
  }
}

TEST_CASE("quantile and surface limits") {
  CHECK(quantile({1, 2, 3, 4, 5}, 0.5) == 3.0);
  CHECK(quantile({1, 2, 3, 4, 5}, 0.95) == doctest::Approx(4.8));
  CHECK(quantile({7}, 0.95) == 7.0);
  CHECK_THROWS_AS(quantile({}, 0.5), EmptyProfile);
  std::vector<TargetDestinationPair> pairs;
  for (int i = 1; i <= 100; ++i) pairs.push_back(pair(ShotSurface::fairway, i * 10.0, {0, i * 10.0 + 5}));
  const auto skill = make_surface_skill(pairs);
  CHECK(skill.max_target_distance == doctest::Approx(950.5));
  CHECK(skill.max_reach == doctest::Approx(1005.0));
}

TEST_CASE("degenerate profile bootstraps exactly") {
  std::vector<TargetDestinationPair> pairs(60, pair(ShotSurface::fairway, 1000, {0, 1000}));
  const auto profile = profile_with(ShotSurface::fairway, pairs);
  std::mt19937_64 rng(1);
  const auto samples = bootstrap_samples(profile, ShotSurface::fairway, 500, 15, rng);
  REQUIRE(samples.size() == 15);
  for (const auto& s : samples) {
    CHECK(s.x == 0.0);
    CHECK_FALSE(std::signbit(s.x));
    CHECK(s.y == 500.0);
  }
}

TEST_CASE("target beyond the limit and empty surfaces") {
  std::vector<TargetDestinationPair> pairs(20, pair(ShotSurface::rough, 4000, {0, 4000}));
  const auto profile = profile_with(ShotSurface::rough, pairs);
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(bootstrap_samples(profile, ShotSurface::rough,
                                    profile.at(ShotSurface::rough).max_target_distance + 1, 5, rng),
                  TargetTooFar);
  CHECK_THROWS_AS(bootstrap_samples(profile, ShotSurface::bunker, 100, 5, rng), EmptyProfile);
}

TEST_CASE("nine pairs far below the target: all are used and the mean scales") {
  std::vector<TargetDestinationPair> pairs;
  for (int k = 0; k < 9; ++k) {
    const double t = 500.0 + 50.0 * k;
    pairs.push_back(pair(ShotSurface::fairway, t, {0.02 * t * (k % 3 - 1), t + 10.0 * (k - 4)}));
  }
  auto profile = profile_with(ShotSurface::fairway, pairs);
  CHECK(select_neighbourhood(pairs, 5000).size() == 9);
  // Pretend the player can target and reach 5000 in so the precondition holds.
  profile.at(ShotSurface::fairway).max_target_distance = 5000;
  profile.at(ShotSurface::fairway).max_reach = 1e9;

  double expected = 0.0, expected_sq = 0.0;
  for (const auto& p : pairs) {
    const double y = 5000.0 / p.target_distance * p.arrival.y;
    expected += y / 9.0;
    expected_sq += y * y / 9.0;
  }
  const double sd = std::sqrt(expected_sq - expected * expected);
  std::mt19937_64 rng(2024);
  const std::size_t r = 100000;
  const auto samples = bootstrap_samples(profile, ShotSurface::fairway, 5000, r, rng);
  double mean = 0.0;
  for (const auto& s : samples) mean += s.y / static_cast<double>(r);
  CHECK(std::abs(mean - expected) < 3.0 * sd / std::sqrt(static_cast<double>(r)));
}

TEST_CASE("neighbourhood rules") {
  std::vector<TargetDestinationPair> pairs;
  SUBCASE("stops at 50 pairs, keeping ties") {
    for (int i = 0; i < 200; ++i) pairs.push_back(pair(ShotSurface::fairway, 3000 + i, {0, 3000}));
    pairs.push_back(pair(ShotSurface::fairway, 3049, {0, 3000}));
    const auto sel = select_neighbourhood(pairs, 3000);
    CHECK(sel.size() == 51);
  }
  SUBCASE("caps the radius at 30 m when fewer than 50 are inside") {
    for (int i = 0; i < 30; ++i) pairs.push_back(pair(ShotSurface::fairway, 2000 + 30 * i, {0, 0}));
    pairs.push_back(pair(ShotSurface::fairway, 2000 + units::kNeighbourhoodRadius + 1, {0, 0}));
    for (int i = 0; i < 40; ++i) pairs.push_back(pair(ShotSurface::fairway, 8000, {0, 0}));
    const auto sel = select_neighbourhood(pairs, 2000);
    CHECK(sel.size() == 30);
    CHECK(pairs_in_radius(pairs, 2000) == 30);
  }
  SUBCASE("falls back to the ten nearest") {
    for (int i = 0; i < 4; ++i) pairs.push_back(pair(ShotSurface::fairway, 2000 + i, {0, 0}));
    for (int i = 0; i < 20; ++i) pairs.push_back(pair(ShotSurface::fairway, 5000 + 10 * i, {0, 0}));
    const auto sel = select_neighbourhood(pairs, 2000);
    REQUIRE(sel.size() == 10);
    for (std::size_t i : sel) CHECK(pairs[i].target_distance <= 5050);
  }
}

TEST_CASE("bootstrap invariants") {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> t(1000, 6000);
  std::vector<TargetDestinationPair> pairs;
  for (int i = 0; i < 400; ++i) {
    const double target = t(gen);
    pairs.push_back(pair(ShotSurface::tee, target, {0.05 * target * noise(gen), target + 0.03 * target * noise(gen)}));
  }
  const auto profile = profile_with(ShotSurface::tee, pairs);
  const auto& skill = profile.at(ShotSurface::tee);
  for (double d = 100; d <= skill.max_target_distance; d += 100) {
    const auto sel = select_neighbourhood(pairs, d);
    CHECK(sel.size() >= std::min<std::size_t>(10, pairs.size()));
    CHECK(sel.size() <= pairs.size());
    std::mt19937_64 a(77), b(77);
    const auto s1 = bootstrap_samples(profile, ShotSurface::tee, d, 15, a);
    const auto s2 = bootstrap_samples(profile, ShotSurface::tee, d, 15, b);
    CHECK(s1 == s2);
    for (const auto& s : s1) CHECK(s.y <= skill.max_reach);
  }
}

TEST_CASE("monotone repair examples") {
  auto entry = [](double d, double lateral) {
    return LadderEntry{d, 1.0, {{lateral, d}, {-lateral, d}}};
  };
  ProfileLadder ladder;
  ladder.step = 100;
  ladder.at(ShotSurface::fairway) = {entry(100, 10), entry(200, 8), entry(300, 12)};
  ladder.at(ShotSurface::rough) = {entry(100, 5), entry(200, 20), entry(300, 30)};
  ladder.at(ShotSurface::tee) = {entry(100, 1), entry(200, 2), entry(300, 3)};
  const auto tee_before = ladder.at(ShotSurface::tee);
  enforce_monotone_dispersion(ladder);
  const auto& fw = ladder.at(ShotSurface::fairway);
  CHECK(mean_abs_lateral(fw[0].samples) == doctest::Approx(10));
  CHECK(mean_abs_lateral(fw[1].samples) == doctest::Approx(10));
  CHECK(mean_abs_lateral(fw[2].samples) == doctest::Approx(12));
  CHECK(fw[1].lateral_scale == doctest::Approx(1.25));
  // Rough at 100 doubled to meet the fairway.
  CHECK(mean_abs_lateral(ladder.at(ShotSurface::rough)[0].samples) == doctest::Approx(10));
  CHECK(ladder.at(ShotSurface::rough)[0].lateral_scale == doctest::Approx(2.0));
  for (std::size_t i = 0; i < 3; ++i) CHECK(ladder.at(ShotSurface::tee)[i].samples == tee_before[i].samples);
}

TEST_CASE("all-zero lateral entries are left alone") {
  ProfileLadder ladder;
  ladder.step = 100;
  ladder.at(ShotSurface::fairway) = {{100, 1.0, {{3, 100}}}, {200, 1.0, {{0, 200}}}, {300, 1.0, {{4, 300}}}};
  enforce_monotone_dispersion(ladder);
  CHECK(ladder.at(ShotSurface::fairway)[1].samples[0].x == 0.0);
  CHECK(ladder.at(ShotSurface::fairway)[1].lateral_scale == 1.0);
}

TEST_CASE("ladder seeds do not depend on the other surfaces") {
  std::vector<TargetDestinationPair> pairs(30, pair(ShotSurface::fairway, 2000, {25, 2000}));
  for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].arrival.x = static_cast<double>(i);
  SkillProfile a = profile_with(ShotSurface::fairway, pairs);
  SkillProfile b = a;
  b.at(ShotSurface::rough) = make_surface_skill(std::vector(40, pair(ShotSurface::rough, 1500, {1, 1500})));
  const auto la = bootstrap_ladder(a, 100, 15, 5);
  const auto lb = bootstrap_ladder(b, 100, 15, 5);
  REQUIRE(la.at(ShotSurface::fairway).size() == lb.at(ShotSurface::fairway).size());
  for (std::size_t i = 0; i < la.at(ShotSurface::fairway).size(); ++i)
    CHECK(la.at(ShotSurface::fairway)[i].samples == lb.at(ShotSurface::fairway)[i].samples);
  CHECK(la.at(ShotSurface::rough).empty());
  CHECK(lb.at(ShotSurface::rough).size() == 15);
}

// ---------------------------------------------------------------------------

TEST_CASE("putt buckets") {
  const auto mid = putt_bucket_midpoints();
  const std::array<double, 7> meters{0.25, 0.75, 1.5, 3, 6, 12, 24};
  for (std::size_t i = 0; i < 7; ++i) CHECK(mid[i] == doctest::Approx(meters[i] * 39.3701));
  CHECK(putt_bucket(0.0) == 0u);
  CHECK(putt_bucket(units::meters(0.5)) == 0u);
  CHECK(putt_bucket(59.0) == 2u);
  CHECK(putt_bucket(units::meters(16.0)) == 5u);
  CHECK(putt_bucket(700.0) == 6u);
  CHECK(putt_bucket(1280.0) == 6u);
  CHECK_FALSE(putt_bucket(1281.0).has_value());
  CHECK_THROWS_AS(putt_bucket(-1.0), NegativeDistance);
}

TEST_CASE("player frequencies at a midpoint") {
  std::vector<PuttObservation> player;
  for (int i = 0; i < 40; ++i) player.push_back({59.0, 1});
  for (int i = 0; i < 55; ++i) player.push_back({59.0, 2});
  for (int i = 0; i < 5; ++i) player.push_back({59.0, 3});
  std::vector<PuttObservation> pooled = player;
  for (double d : {5.0, 25.0, 100.0, 200.0, 400.0, 1000.0})
    for (int i = 0; i < 3; ++i) pooled.push_back({d, 2});
  const auto m = build_putting_model(player, pooled);
  const auto p = putt_distribution(m, m.midpoints[2]);
  CHECK(p[0] == doctest::Approx(0.40));
  CHECK(p[1] == doctest::Approx(0.55));
  CHECK(p[2] == doctest::Approx(0.05));
  // Sparse player buckets come from the pooled data.
  CHECK(m.probabilities[0][1] == 1.0);
}

TEST_CASE("more than three putts count as three, far putts are dropped") {
  std::vector<PuttObservation> obs;
  for (int i = 0; i < 40; ++i) obs.push_back({10.0, 5});
  for (int b = 1; b < 7; ++b) obs.push_back({putt_bucket_midpoints()[static_cast<std::size_t>(b)], 1});
  obs.push_back({5000.0, 1});
  const auto m = build_putting_model(obs, obs);
  CHECK(m.probabilities[0][2] == 1.0);
}

TEST_CASE("empty buckets") {
  std::vector<PuttObservation> obs{{10.0, 1}};
  CHECK_THROWS_AS(build_putting_model(obs, obs), EmptyBucket);
}

TEST_CASE("interpolation") {
  PuttingModel m;
  m.midpoints = putt_bucket_midpoints();
  m.probabilities.fill({1.0, 0.0, 0.0});
  m.probabilities[3] = {0.0, 1.0, 0.0};
  const double half = (m.midpoints[2] + m.midpoints[3]) / 2.0;
  const auto p = putt_distribution(m, half);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));
  CHECK(p[2] == 0.0);
  CHECK(putt_distribution(m, 10000.0) == m.probabilities[6]);
  CHECK(putt_distribution(m, 0.0) == m.probabilities[0]);
  CHECK_THROWS_AS(putt_distribution(m, -0.5), NegativeDistance);

  m.probabilities.fill({1.0, 0.0, 0.0});
  for (double d : {0.0, 17.0, 300.0, 2000.0}) CHECK(expected_putts(m, d) == 1.0);
  m.probabilities.fill({1.0 / 3, 1.0 / 3, 1.0 / 3});
  for (double d : {0.0, 17.0, 300.0, 2000.0}) CHECK(expected_putts(m, d) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("interpolated distributions stay on the simplex") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    PuttingModel m;
    m.midpoints = putt_bucket_midpoints();
    for (auto& p : m.probabilities) {
      const double a = u(rng), b = u(rng), c = u(rng);
      p = {a / (a + b + c), b / (a + b + c), c / (a + b + c)};
    }
    for (std::size_t i = 0; i < 7; ++i) CHECK(putt_distribution(m, m.midpoints[i]) == m.probabilities[i]);
    std::uniform_real_distribution<double> d(0.0, 1500.0);
    for (int q = 0; q < 500; ++q) {
      const auto p = putt_distribution(m, d(rng));
      for (double x : p) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
      }
      CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("putt extraction uses the first green record of each hole") {
  std::vector<ShotRecord> records;
  auto green = [&](int n, Point2 start, int hole) {
    auto r = shot(ShotSurface::green, start, {0, 0}, {0, 0}, 1, "T", hole);
    r.shot_number = n;
    records.push_back(r);
  };
  green(4, {0, 10}, 1);
  green(3, {0, 100}, 1);
  green(5, {0, 1}, 1);
  green(2, {30, 40}, 2);
  const auto putts = extract_putts(records);
  REQUIRE(putts.size() == 2);
  CHECK(putts[0].distance == 100.0);
  CHECK(putts[0].putts == 3);
  CHECK(putts[1].distance == 50.0);
  CHECK(putts[1].putts == 1);
}

TEST_CASE("rounding noise on target distances still counts as a tie") {
  std::vector<TargetDestinationPair> pairs;
  for (int i = 0; i < 120; ++i)
    pairs.push_back({ShotSurface::fairway, 2000.0 + (i % 7 - 3) * 1e-10, {0.0, 2000.0}});
  for (int i = 0; i < 60; ++i) pairs.push_back({ShotSurface::fairway, 2400.0, {0.0, 2400.0}});
  CHECK(select_neighbourhood(pairs, 2000.0).size() == 120);
  CHECK(select_neighbourhood(pairs, 2100.0).size() == 120);
  CHECK(select_neighbourhood(pairs, 2200.0).size() == 180);
}
