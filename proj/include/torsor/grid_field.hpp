#pragma once

// Vector fields sampled on a regular chart grid, evaluated by tensor-product
// Catmull-Rom cubic interpolation (reproduces quadratics exactly in the interior).

#include "torsor/differentiation.hpp"
#include "torsor/types.hpp"

#include <string>
#include <vector>

namespace torsor {

class GridField {
 public:
  /// axes[k] are the strictly increasing, uniformly spaced coordinates of axis k.
  /// values has one row per grid point in row-major order (last axis fastest).
  GridField(std::vector<std::vector<double>> axes, MatX values);

  /// CSV with a header row; the first chart_dim columns are chart coordinates,
  /// the rest are components. Rows may come in any order but must fill the grid.
  static GridField from_csv(const std::string& path, int chart_dim);

  int chart_dim() const { return static_cast<int>(axes_.size()); }
  int components() const { return static_cast<int>(values_.cols()); }
  const std::vector<std::string>& column_names() const { return names_; }
  Box domain() const;

  /// Throws Error outside the grid.
  VecX operator()(const VecX& xi) const;

 private:
  VecX at(const std::vector<long>& idx) const;

  std::vector<std::vector<double>> axes_;
  std::vector<double> spacing_;
  MatX values_;
  std::vector<std::string> names_;
};

}  // namespace torsor
