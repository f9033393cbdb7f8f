#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "golfssp/geometry.hpp"

namespace golfssp {

enum class SurfaceCode : std::uint8_t { TEE, FAIRWAY, ROUGH, BUNKER, GREEN, WATER, TREE, OOB };

/// Ball may be played from the cell (the green is terminal, not playable).
constexpr bool is_playable(SurfaceCode c) {
  return c == SurfaceCode::TEE || c == SurfaceCode::FAIRWAY || c == SurfaceCode::ROUGH ||
         c == SurfaceCode::BUNKER;
}

char surface_char(SurfaceCode c);
/// nullopt for characters outside {T,F,R,B,G,W,X,O}.
std::optional<SurfaceCode> surface_from_char(char c);
std::string_view surface_name(SurfaceCode c);

inline constexpr double kMinCellSize = 27.5;
inline constexpr double kMaxCellSize = 59.0;

/// Rasterised hole. Cell (row, col) covers x in [col*s, (col+1)*s) and
/// y in [row*s, (row+1)*s).
class HoleRaster {
 public:
  HoleRaster() = default;
  /// Checks the invariants; throws InvariantViolation.
  HoleRaster(int rows, int cols, std::vector<SurfaceCode> grid, double cell_size, Point2 pin,
             int par);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double cell_size() const { return cell_size_; }
  Point2 pin() const { return pin_; }
  int par() const { return par_; }
  /// The unique TEE cell, if the grid has one.
  const std::optional<CellCoord>& tee() const { return tee_; }
  const std::vector<SurfaceCode>& grid() const { return grid_; }

  bool in_bounds(CellCoord c) const {
    return c.row >= 0 && c.col >= 0 && c.row < rows_ && c.col < cols_;
  }
  std::size_t index(CellCoord c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c.col);
  }
  CellCoord cell_at(std::size_t index) const {
    return {static_cast<std::int32_t>(index / static_cast<std::size_t>(cols_)),
            static_cast<std::int32_t>(index % static_cast<std::size_t>(cols_))};
  }
  SurfaceCode at(CellCoord c) const { return grid_[index(c)]; }
  Point2 center(CellCoord c) const { return cell_center(c, cell_size_); }
  CellCoord pin_cell() const { return cell_of(pin_, cell_size_); }
  double width() const { return cols_ * cell_size_; }
  double height() const { return rows_ * cell_size_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SurfaceCode> grid_;
  double cell_size_ = 39.3701;
  Point2 pin_;
  int par_ = 4;
  std::optional<CellCoord> tee_;
};

/// First line: JSON header {"cell_size_in", "pin": [x, y], "par"}; then one
/// line of characters per row. Throws ParseError or InvariantViolation.
HoleRaster parse_hole(std::string_view text);
std::string serialize_hole(const HoleRaster& raster);

struct ProbeSettings {
  int n_directions = 180;
  /// Probe distances in inches; empty selects 1, 2, 4, ... cells up to the diagonal.
  std::vector<double> distances;
};

struct ValidationReport {
  /// Playable cells with no probe-shot sequence to the green.
  std::vector<CellCoord> unreachable;
  /// Playable cells on the outer ring of the raster.
  std::vector<CellCoord> playable_border;
  bool has_tee = false;
  bool tee_reaches_green = false;

  bool accepted() const {
    return unreachable.empty() && playable_border.empty() && has_tee && tee_reaches_green;
  }
};

ValidationReport validate_hole(const HoleRaster& raster, const ProbeSettings& probe = {});

}  // namespace golfssp
