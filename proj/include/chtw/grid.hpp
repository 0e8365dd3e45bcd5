#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace chtw {

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  std::size_t cells = 1;

  bool operator==(const Axis&) const = default;
};

/// A space X = (x_1, ..., x_n). An empty axis list is a point space.
struct Space {
  std::string id;
  std::vector<Axis> axes;

  std::size_t dimension() const noexcept { return axes.size(); }
  bool operator==(const Space&) const = default;
};

/// Uniform rectangular discretization of a Space.
///
/// Cells are linearized row-major with the first axis slowest. Every field,
/// CSV file and trace in the project uses this ordering. A point space has a
/// single cell of volume 1.
class Grid {
 public:
  explicit Grid(Space space);

  const Space& space() const noexcept { return space_; }
  std::size_t dimension() const noexcept { return space_.axes.size(); }
  std::size_t total_cells() const noexcept { return total_cells_; }
  double cell_volume() const noexcept { return cell_volume_; }
  double cell_width(std::size_t axis) const { return widths_.at(axis); }

  std::vector<std::size_t> multi_index(std::size_t linear_index) const;
  std::size_t linearize(const std::vector<std::size_t>& index) const;
  std::vector<double> cell_center(std::size_t linear_index) const;

  bool operator==(const Grid& other) const { return space_ == other.space_; }

 private:
  Space space_;
  std::vector<double> widths_;
  std::vector<std::size_t> strides_;
  std::size_t total_cells_ = 1;
  double cell_volume_ = 1.0;
};

/// Throws Error(InvalidAxis) when an axis has max <= min, zero cells, or
/// non-finite bounds, or when axis names repeat.
Grid build_grid(const Space& space);

}  // namespace chtw
