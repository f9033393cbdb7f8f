#include "golfssp/course.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "golfssp/errors.hpp"
#include "golfssp/simulator.hpp"

namespace golfssp {

char surface_char(SurfaceCode c) {
  switch (c) {
    case SurfaceCode::TEE: return 'T';
    case SurfaceCode::FAIRWAY: return 'F';
    case SurfaceCode::ROUGH: return 'R';
    case SurfaceCode::BUNKER: return 'B';
    case SurfaceCode::GREEN: return 'G';
    case SurfaceCode::WATER: return 'W';
    case SurfaceCode::TREE: return 'X';
    case SurfaceCode::OOB: return 'O';
  }
  return '?';
}

std::optional<SurfaceCode> surface_from_char(char c) {
  switch (c) {
    case 'T': return SurfaceCode::TEE;
    case 'F': return SurfaceCode::FAIRWAY;
    case 'R': return SurfaceCode::ROUGH;
    case 'B': return SurfaceCode::BUNKER;
    case 'G': return SurfaceCode::GREEN;
    case 'W': return SurfaceCode::WATER;
    case 'X': return SurfaceCode::TREE;
    case 'O': return SurfaceCode::OOB;
    default: return std::nullopt;
  }
}

std::string_view surface_name(SurfaceCode c) {
  switch (c) {
    case SurfaceCode::TEE: return "tee";
    case SurfaceCode::FAIRWAY: return "fairway";
    case SurfaceCode::ROUGH: return "rough";
    case SurfaceCode::BUNKER: return "bunker";
    case SurfaceCode::GREEN: return "green";
    case SurfaceCode::WATER: return "water";
    case SurfaceCode::TREE: return "tree";
    case SurfaceCode::OOB: return "oob";
  }
  return "unknown";
}

HoleRaster::HoleRaster(int rows, int cols, std::vector<SurfaceCode> grid, double cell_size,
                       Point2 pin, int par)
    : rows_(rows), cols_(cols), grid_(std::move(grid)), cell_size_(cell_size), pin_(pin), par_(par) {
  if (rows_ <= 0 || cols_ <= 0) throw InvariantViolation("raster must have rows and columns");
  if (grid_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_))
    throw InvariantViolation("grid size does not match rows x cols");
  if (!(cell_size_ >= kMinCellSize && cell_size_ <= kMaxCellSize))
    throw InvariantViolation("cell size " + std::to_string(cell_size_) +
                             " in outside [27.5, 59]");
  if (par_ < 3 || par_ > 5) throw InvariantViolation("par must be 3, 4 or 5");
  if (!is_finite(pin_)) throw InvariantViolation("pin is not finite");
  const CellCoord pc = pin_cell();
  if (!in_bounds(pc)) throw InvariantViolation("pin lies outside the raster");
  if (at(pc) != SurfaceCode::GREEN) throw InvariantViolation("pin is not on a green cell");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (grid_[i] != SurfaceCode::TEE) continue;
    if (tee_) throw InvariantViolation("raster has more than one tee cell");
    tee_ = cell_at(i);
  }
}

HoleRaster parse_hole(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header_line;
  if (!std::getline(in, header_line)) throw ParseError("empty hole file");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("hole header: ") + e.what());
  }
  double cell_size = 0.0;
  Point2 pin;
  int par = 0;
  try {
    cell_size = header.at("cell_size_in").get<double>();
    const auto& p = header.at("pin");
    if (!p.is_array() || p.size() != 2) throw ParseError("hole header: pin must be [x, y]");
    pin = {p.at(0).get<double>(), p.at(1).get<double>()};
    par = header.at("par").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("hole header: ") + e.what());
  }

  std::vector<SurfaceCode> grid;
  int rows = 0;
  int cols = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (cols < 0) cols = static_cast<int>(line.size());
    if (static_cast<int>(line.size()) != cols)
      throw ParseError("row " + std::to_string(rows) + " has " + std::to_string(line.size()) +
                       " cells, expected " + std::to_string(cols));
    for (char ch : line) {
      const auto code = surface_from_char(ch);
      if (!code) throw InvariantViolation(std::string("unknown surface code '") + ch + "'");
      grid.push_back(*code);
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("hole file has no grid rows");
  return HoleRaster(rows, cols, std::move(grid), cell_size, pin, par);
}

std::string serialize_hole(const HoleRaster& raster) {
  nlohmann::ordered_json header;
  header["cell_size_in"] = raster.cell_size();
  header["pin"] = {raster.pin().x, raster.pin().y};
  header["par"] = raster.par();
  std::string out = header.dump();
  out += '\n';
  for (int r = 0; r < raster.rows(); ++r) {
    for (int c = 0; c < raster.cols(); ++c) out += surface_char(raster.at({r, c}));
    out += '\n';
  }
  return out;
}

ValidationReport validate_hole(const HoleRaster& raster, const ProbeSettings& probe) {
  ValidationReport report;
  report.has_tee = raster.tee().has_value();

  const std::size_t n_cells = raster.grid().size();
  for (std::size_t i = 0; i < n_cells; ++i) {
    const CellCoord c = raster.cell_at(i);
    const bool border = c.row == 0 || c.col == 0 || c.row == raster.rows() - 1 ||
                        c.col == raster.cols() - 1;
    if (border && is_playable(raster.at(c))) report.playable_border.push_back(c);
  }

  std::vector<double> distances = probe.distances;
  if (distances.empty()) {
    const double diagonal = std::hypot(raster.width(), raster.height());
    for (double d = raster.cell_size(); d <= diagonal; d *= 2.0) distances.push_back(d);
  }

  // Reverse edges of the deterministic probe-shot graph.
  std::vector<std::vector<std::uint32_t>> landed_from(n_cells);
  std::vector<std::uint32_t> finals;
  for (std::size_t i = 0; i < n_cells; ++i) {
    const CellCoord c = raster.cell_at(i);
    if (!is_playable(raster.at(c))) continue;
    const Point2 origin = raster.center(c);
    finals.clear();
    for (int k = 0; k < probe.n_directions; ++k) {
      const double heading = 2.0 * std::numbers::pi * k / probe.n_directions;
      const Point2 dir{std::cos(heading), std::sin(heading)};
      for (double d : distances) {
        const ShotOutcome o = simulate_to(raster, c, origin + d * dir);
        finals.push_back(static_cast<std::uint32_t>(raster.index(o.final)));
      }
    }
    std::sort(finals.begin(), finals.end());
    finals.erase(std::unique(finals.begin(), finals.end()), finals.end());
    for (auto f : finals)
      if (f != i) landed_from[f].push_back(static_cast<std::uint32_t>(i));
  }

  std::vector<char> reaches(n_cells, 0);
  std::vector<std::uint32_t> frontier;
  for (std::size_t i = 0; i < n_cells; ++i) {
    if (raster.grid()[i] == SurfaceCode::GREEN) {
      reaches[i] = 1;
      frontier.push_back(static_cast<std::uint32_t>(i));
    }
  }
  while (!frontier.empty()) {
    const auto v = frontier.back();
    frontier.pop_back();
    for (auto u : landed_from[v]) {
      if (!reaches[u]) {
        reaches[u] = 1;
        frontier.push_back(u);
      }
    }
  }

  for (std::size_t i = 0; i < n_cells; ++i)
    if (is_playable(raster.grid()[i]) && !reaches[i]) report.unreachable.push_back(raster.cell_at(i));
  report.tee_reaches_green = report.has_tee && reaches[raster.index(*raster.tee())];
  return report;
}

}  // namespace golfssp
