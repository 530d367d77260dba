#pragma once

// Central finite differences on chart coordinates.

#include "torsor/types.hpp"

#include <cmath>
#include <optional>
#include <sstream>

namespace torsor {

struct DifferenceOptions {
  /// Step along coordinate k is relative_step * max(1, |xi_k|).
  double relative_step = 1e-5;
  /// Fall back to one-sided second-order stencils near the domain boundary.
  bool one_sided_at_boundary = false;

  double step_for(double coordinate) const {
    return relative_step * std::max(1.0, std::abs(coordinate));
  }
};

/// Axis-aligned chart domain, bounds inclusive.
struct Box {
  VecX lower;
  VecX upper;

  bool contains(const VecX& xi) const;
};

enum class Stencil { Central, Forward, Backward };

/// Picks the stencil for coordinate k at xi, throwing DifferentiationFailure when
/// no admissible stencil fits inside the domain.
Stencil choose_stencil(const VecX& xi, int k, double h, const std::optional<Box>& domain,
                       bool one_sided);

/// d f / d xi_k at xi. F maps VecX to a double or a fixed/dynamic Eigen type.
template <typename F>
auto partial(const F& f, const VecX& xi, int k, const DifferenceOptions& opts = {},
             const std::optional<Box>& domain = std::nullopt) {
  const double h = opts.step_for(xi(k));
  const Stencil stencil = choose_stencil(xi, k, h, domain, opts.one_sided_at_boundary);
  auto shifted = [&](double delta) {
    VecX y = xi;
    y(k) += delta;
    return f(y);
  };
  using R = std::decay_t<decltype(f(xi))>;
  if (stencil == Stencil::Central) {
    R out = (shifted(h) - shifted(-h)) / (2.0 * h);
    return out;
  }
  const double s = stencil == Stencil::Forward ? h : -h;
  R out = (-3.0 * f(xi) + 4.0 * shifted(s) - shifted(2.0 * s)) / (2.0 * s);
  return out;
}

/// d f / dt for a one-parameter function, central stencil with h = relative_step * max(1, |t|).
template <typename F>
auto derivative(const F& f, double t, const DifferenceOptions& opts = {}) {
  const double h = opts.step_for(t);
  using R = std::decay_t<decltype(f(t))>;
  R out = (f(t + h) - f(t - h)) / (2.0 * h);
  return out;
}

}  // namespace torsor
