#include "chtw/grid.hpp"

#include <cmath>
#include <set>

#include "chtw/error.hpp"

namespace chtw {

namespace {

void check_axes(const Space& space) {
  std::set<std::string> names;
  for (const auto& axis : space.axes) {
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max) || !(axis.max > axis.min)) {
      throw Error(ErrorCode::InvalidAxis,
                  "axis '" + axis.name + "' of space '" + space.id + "' needs finite max > min");
    }
    if (axis.cells < 1) {
      throw Error(ErrorCode::InvalidAxis,
                  "axis '" + axis.name + "' of space '" + space.id + "' needs at least one cell");
    }
    if (!names.insert(axis.name).second) {
      throw Error(ErrorCode::InvalidAxis,
                  "axis '" + axis.name + "' repeated in space '" + space.id + "'");
    }
  }
}

}  // namespace

Grid::Grid(Space space) : space_(std::move(space)) {
  check_axes(space_);
  const std::size_t n = space_.axes.size();
  widths_.resize(n);
  strides_.assign(n, 1);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& axis = space_.axes[a];
    widths_[a] = (axis.max - axis.min) / static_cast<double>(axis.cells);
    total_cells_ *= axis.cells;
    cell_volume_ *= widths_[a];
  }
  for (std::size_t a = n; a-- > 1;) {
    strides_[a - 1] = strides_[a] * space_.axes[a].cells;
  }
}

std::vector<std::size_t> Grid::multi_index(std::size_t linear_index) const {
  if (linear_index >= total_cells_) {
    throw Error(ErrorCode::IndexOutOfRange, "cell " + std::to_string(linear_index) +
                                                " outside grid of " + std::to_string(total_cells_));
  }
  std::vector<std::size_t> index(strides_.size());
  for (std::size_t a = 0; a < strides_.size(); ++a) {
    index[a] = linear_index / strides_[a];
    linear_index %= strides_[a];
  }
  return index;
}

std::size_t Grid::linearize(const std::vector<std::size_t>& index) const {
  if (index.size() != strides_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "multi-index rank does not match grid dimension");
  }
  std::size_t linear = 0;
  for (std::size_t a = 0; a < index.size(); ++a) {
    if (index[a] >= space_.axes[a].cells) {
      throw Error(ErrorCode::IndexOutOfRange, "multi-index component out of range");
    }
    linear += index[a] * strides_[a];
  }
  return linear;
}

std::vector<double> Grid::cell_center(std::size_t linear_index) const {
  const auto index = multi_index(linear_index);
  std::vector<double> center(index.size());
  for (std::size_t a = 0; a < index.size(); ++a) {
    center[a] = space_.axes[a].min + (static_cast<double>(index[a]) + 0.5) * widths_[a];
  }
  return center;
}

Grid build_grid(const Space& space) { return Grid(space); }

}  // namespace chtw
