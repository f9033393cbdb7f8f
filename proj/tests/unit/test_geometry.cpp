#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "golfssp/errors.hpp"
#include "golfssp/geometry.hpp"
#include "oracles.hpp"

using namespace golfssp;

namespace {

void check_rotation(const CanonicalFrame& f) {
  const auto& r = f.rotation;
  CHECK(r[0] * r[0] + r[2] * r[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r[1] * r[1] + r[3] * r[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r[0] * r[1] + r[2] * r[3]) < 1e-9);
  CHECK(r[0] * r[3] - r[1] * r[2] == doctest::Approx(1.0).epsilon(1e-12));
}

}  // namespace

TEST_CASE("frame aligned with +y is the identity") {
  const auto f = canonical_frame({0, 0}, {0, 5});
  CHECK(f.distance == 5.0);
  CHECK(f.rotation[0] == doctest::Approx(1.0));
  CHECK(std::abs(f.rotation[1]) < 1e-15);
  CHECK(std::abs(f.rotation[2]) < 1e-15);
  CHECK(f.rotation[3] == doctest::Approx(1.0));
  const Point2 p = to_canonical(f, {1, 2});
  CHECK(p.x == doctest::Approx(1.0));
  CHECK(p.y == doctest::Approx(2.0));
  const Point2 q = from_canonical(f, {2, 3});
  CHECK(q.x == doctest::Approx(2.0));
  CHECK(q.y == doctest::Approx(3.0));
}

TEST_CASE("3-4-5 frame") {
  const auto f = canonical_frame({0, 0}, {3, 4});
  CHECK(f.distance == doctest::Approx(5.0));
  const Point2 pin = to_canonical(f, {3, 4});
  CHECK(std::abs(pin.x) < 1e-12);
  CHECK(pin.y == doctest::Approx(5.0));
  const Point2 origin = to_canonical(f, {0, 0});
  CHECK(origin.x == 0.0);
  CHECK(origin.y == 0.0);
  const Point2 back = from_canonical(f, {0, 5});
  CHECK(back.x == doctest::Approx(3.0));
  CHECK(back.y == doctest::Approx(4.0));
  check_rotation(f);
}

TEST_CASE("degenerate and non-finite frames") {
  CHECK_THROWS_AS(canonical_frame({10, 10}, {10, 10}), DegenerateFrame);
  CHECK_THROWS_AS(canonical_frame({0, 0}, {std::nan(""), 1}), NonFiniteValue);
  CHECK_THROWS_AS(canonical_frame({0, INFINITY}, {0, 1}), NonFiniteValue);
}

TEST_CASE("positive canonical x is a miss to the right") {
  // Facing north, right is +x (east).
  const auto north = canonical_frame({0, 0}, {0, 100});
  CHECK(to_canonical(north, {10, 100}).x > 0.0);
  // Facing east, right is -y.
  const auto east = canonical_frame({0, 0}, {100, 0});
  CHECK(to_canonical(east, {100, -10}).x == doctest::Approx(10.0));
}

TEST_CASE("random frames: orthogonal, pin at (0,d), round trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e5, 1e5);
  for (int i = 0; i < 2000; ++i) {
    const Point2 o{u(rng), u(rng)};
    const Point2 pin{u(rng), u(rng)};
    const auto f = canonical_frame(o, pin);
    check_rotation(f);
    const Point2 c = to_canonical(f, pin);
    CHECK(std::abs(c.x) < 1e-6);
    CHECK(std::abs(c.y - f.distance) < 1e-6);
    CHECK(from_canonical(f, {0, f.distance}).x == doctest::Approx(pin.x).epsilon(1e-9));
    const Point2 p{u(rng), u(rng)};
    const Point2 rt = from_canonical(f, to_canonical(f, p));
    CHECK(std::abs(rt.x - p.x) < 1e-6);
    CHECK(std::abs(rt.y - p.y) < 1e-6);
    const Point2 v = to_canonical(f, p);
    CHECK(norm(v) == doctest::Approx(norm(p - o)).epsilon(1e-9));
  }
}

TEST_CASE("heading frame matches the pin frame along the same bearing") {
  const Point2 o{100, 200};
  const double heading = 0.7;
  const auto h = heading_frame(o, heading, 500.0);
  const auto p = canonical_frame(o, o + 500.0 * Point2{std::cos(heading), std::sin(heading)});
  for (int k = 0; k < 4; ++k) CHECK(h.rotation[k] == doctest::Approx(p.rotation[k]));
  CHECK(h.distance == 500.0);
}

TEST_CASE("cell mapping") {
  CHECK(cell_of({0, 0}, 40) == CellCoord{0, 0});
  CHECK(cell_of({39.999, 80}, 40) == CellCoord{2, 0});
  CHECK(cell_of({40, 0}, 40) == CellCoord{0, 1});
  CHECK(cell_of({-0.1, 0}, 40) == CellCoord{0, -1});
  const Point2 c = cell_center({2, 3}, 40);
  CHECK(c.x == 140.0);
  CHECK(c.y == 100.0);
}

TEST_CASE("bresenham examples") {
  CHECK(bresenham_cells({0, 0}, {0, 0}) == std::vector<CellCoord>{{0, 0}});
  CHECK(bresenham_cells({0, 0}, {2, 2}) == std::vector<CellCoord>{{0, 0}, {1, 1}, {2, 2}});
  const auto cells = bresenham_cells({0, 0}, {1, 3});
  CHECK(cells.size() == 4);
  CHECK(cells == oracle::bresenham({0, 0}, {1, 3}));
  // Half-way ties go to the larger row.
  CHECK(cells == std::vector<CellCoord>{{0, 0}, {0, 1}, {1, 2}, {1, 3}});
}

TEST_CASE("bresenham structure on random segments") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(-60, 60);
  for (int i = 0; i < 3000; ++i) {
    const CellCoord a{u(rng), u(rng)};
    const CellCoord b{u(rng), u(rng)};
    const auto cells = bresenham_cells(a, b);
    REQUIRE(!cells.empty());
    CHECK(cells.front() == a);
    CHECK(cells.back() == b);
    CHECK(cells.size() ==
          static_cast<std::size_t>(std::max(std::abs(b.row - a.row), std::abs(b.col - a.col)) + 1));
    for (std::size_t k = 1; k < cells.size(); ++k) {
      CHECK(std::abs(cells[k].row - cells[k - 1].row) <= 1);
      CHECK(std::abs(cells[k].col - cells[k - 1].col) <= 1);
      CHECK(cells[k] != cells[k - 1]);
    }
    const auto back = bresenham_cells(b, a);
    CHECK(std::set<CellCoord>(cells.begin(), cells.end()) ==
          std::set<CellCoord>(back.begin(), back.end()));
  }
}

TEST_CASE("bresenham matches the nearest-cell reference on a 20x20 grid") {
  std::size_t pairs = 0;
  for (int r0 = 0; r0 < 20; ++r0)
    for (int c0 = 0; c0 < 20; ++c0)
      for (int r1 = 0; r1 < 20; ++r1)
        for (int c1 = 0; c1 < 20; ++c1) {
          ++pairs;
          const CellCoord a{r0, c0}, b{r1, c1};
          if (bresenham_cells(a, b) != oracle::bresenham(a, b)) {
            FAIL("mismatch from (" << r0 << "," << c0 << ") to (" << r1 << "," << c1 << ")");
          }
        }
  CHECK(pairs == 160000);
}

TEST_CASE("traverse_line stops when the visitor says so") {
  std::vector<CellCoord> seen;
  traverse_line({0, 0}, {0, 10}, [&](CellCoord c) {
    seen.push_back(c);
    return c.col < 3;
  });
  CHECK(seen.size() == 4);
  CHECK(seen.back() == CellCoord{0, 3});
}
