#include "torsor/grid_field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace torsor {

GridField::GridField(std::vector<std::vector<double>> axes, MatX values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  long total = 1;
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    const auto& ax = axes_[k];
    if (ax.size() < 2) throw Error("grid axis " + std::to_string(k) + " needs at least two nodes");
    const double h = (ax.back() - ax.front()) / static_cast<double>(ax.size() - 1);
    if (!(h > 0.0)) throw Error("grid axis " + std::to_string(k) + " is not increasing");
    for (std::size_t i = 0; i < ax.size(); ++i) {
      const double expected = ax.front() + h * static_cast<double>(i);
      if (std::abs(ax[i] - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
        throw Error("grid axis " + std::to_string(k) + " is not uniformly spaced");
    }
    spacing_.push_back(h);
    total *= static_cast<long>(ax.size());
  }
  if (values_.rows() != total) throw Error("grid values do not fill the grid");
}

GridField GridField::from_csv(const std::string& path, int chart_dim) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open grid file '" + path + "'");
  std::string line;
  std::vector<std::string> names;
  if (!std::getline(in, line)) throw Error("grid file '" + path + "' is empty");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) names.push_back(cell);
  }
  const int cols = static_cast<int>(names.size());
  if (cols <= chart_dim) throw Error("grid file '" + path + "' has no component columns");

  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error("grid file '" + path + "' line " + std::to_string(lineno) + ": not a number");
      }
    }
    if (static_cast<int>(row.size()) != cols)
      throw Error("grid file '" + path + "' line " + std::to_string(lineno) +
                  ": wrong number of columns");
    rows.push_back(std::move(row));
  }

  std::vector<std::vector<double>> axes(static_cast<std::size_t>(chart_dim));
  for (int k = 0; k < chart_dim; ++k) {
    std::vector<double> c;
    for (const auto& r : rows) c.push_back(r[k]);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    axes[k] = c;
  }
  long total = 1;
  for (const auto& ax : axes) total *= static_cast<long>(ax.size());
  if (static_cast<long>(rows.size()) != total)
    throw Error("grid file '" + path + "' does not fill a regular grid");

  MatX values = MatX::Constant(total, cols - chart_dim, std::nan(""));
  for (const auto& r : rows) {
    long flat = 0;
    for (int k = 0; k < chart_dim; ++k) {
      const auto& ax = axes[k];
      const long i = std::lower_bound(ax.begin(), ax.end(), r[k]) - ax.begin();
      flat = flat * static_cast<long>(ax.size()) + i;
    }
    for (int c = chart_dim; c < cols; ++c) values(flat, c - chart_dim) = r[c];
  }
  if (!values.allFinite()) throw Error("grid file '" + path + "' has duplicate grid points");
  GridField g(std::move(axes), std::move(values));
  g.names_.assign(names.begin() + chart_dim, names.end());
  return g;
}

Box GridField::domain() const {
  Box b{VecX(chart_dim()), VecX(chart_dim())};
  for (int k = 0; k < chart_dim(); ++k) {
    b.lower(k) = axes_[k].front();
    b.upper(k) = axes_[k].back();
  }
  return b;
}

VecX GridField::at(const std::vector<long>& idx) const {
  // Ghost nodes outside the grid are linear extrapolations of the two nearest.
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const long n = static_cast<long>(axes_[k].size());
    if (idx[k] < 0 || idx[k] >= n) {
      std::vector<long> a = idx, b = idx;
      if (idx[k] < 0) {
        a[k] = 0;
        b[k] = 1;
      } else {
        a[k] = n - 1;
        b[k] = n - 2;
      }
      return 2.0 * at(a) - at(b);
    }
  }
  long flat = 0;
  for (std::size_t k = 0; k < idx.size(); ++k)
    flat = flat * static_cast<long>(axes_[k].size()) + idx[k];
  return values_.row(flat).transpose();
}

VecX GridField::operator()(const VecX& xi) const {
  if (xi.size() != chart_dim()) throw Error("grid field evaluated with the wrong chart dimension");
  std::vector<long> cell(axes_.size());
  std::vector<std::array<double, 4>> weights(axes_.size());
  for (int k = 0; k < chart_dim(); ++k) {
    const auto& ax = axes_[k];
    const double tol = 1e-12 * std::max(1.0, std::abs(xi(k)));
    if (xi(k) < ax.front() - tol || xi(k) > ax.back() + tol) {
      std::ostringstream msg;
      msg << "grid field evaluated outside its domain along axis " << k << " at " << xi(k);
      throw Error(msg.str());
    }
    const long n = static_cast<long>(ax.size());
    long i = static_cast<long>(std::floor((xi(k) - ax.front()) / spacing_[k]));
    i = std::clamp<long>(i, 0, n - 2);
    const double u = (xi(k) - ax[i]) / spacing_[k];
    const double u2 = u * u;
    const double u3 = u2 * u;
    cell[k] = i;
    weights[k] = {0.5 * (-u3 + 2.0 * u2 - u), 0.5 * (3.0 * u3 - 5.0 * u2 + 2.0),
                  0.5 * (-3.0 * u3 + 4.0 * u2 + u), 0.5 * (u3 - u2)};
  }
  std::vector<long> idx(axes_.size());
  // Iterate over the 4^d stencil.
  const int d = chart_dim();
  long combos = 1;
  for (int k = 0; k < d; ++k) combos *= 4;
  VecX out = VecX::Zero(components());
  for (long c = 0; c < combos; ++c) {
    long rest = c;
    double w = 1.0;
    for (int k = d - 1; k >= 0; --k) {
      const int j = static_cast<int>(rest % 4);
      rest /= 4;
      idx[k] = cell[k] + j - 1;
      w *= weights[k][j];
    }
    if (w != 0.0) out += w * at(idx);
  }
  return out;
}

}  // namespace torsor
