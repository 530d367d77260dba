#pragma once

#include "torsor/differentiation.hpp"
#include "torsor/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace torsor {

/// Torsor components of a medium of matter dimension d at one chart point.
/// T(gamma, beta) holds ^gamma T^beta, J[gamma](alpha, beta) holds ^gamma J^{alpha beta}.
/// Material index gamma runs 0..d (0 is time).
struct TorsorComponents {
  MatX T;
  std::vector<Mat4> J;

  static TorsorComponents zero(int dim);
  TorsorComponents& operator+=(const TorsorComponents& other);
  TorsorComponents& operator*=(double s);
};

/// Evaluable field bundle for a medium of dimension d on a chart xi in R^{d+1}.
struct MediumField {
  int dim = 3;
  /// Chart map of the embedding xi -> X.
  std::function<Vec4(const VecX&)> embedding;
  /// Tangent map U as a 4 x (d+1) matrix, U(sigma, gamma) = _gamma U^sigma.
  /// When empty it is differenced from the embedding.
  std::function<MatX(const VecX&)> tangent_map;
  std::function<TorsorComponents(const VecX&)> torsor;
  /// Optional analytic derivatives: entry gamma is d(components)/d xi^gamma.
  std::function<std::vector<TorsorComponents>(const VecX&)> torsor_derivative;

  DifferenceOptions differences;
  std::optional<Box> domain;

  int chart_dim() const { return dim + 1; }
  Vec4 position(const VecX& xi) const;
  MatX tangent(const VecX& xi) const;
  /// Throws Error when J is not skew in its last two indices at xi (tolerance 1e-12 relative).
  TorsorComponents components(const VecX& xi) const;

  /// Returns (d ^gamma T^beta / d xi^gamma, d ^gamma J^{alpha beta} / d xi^gamma).
  std::pair<Vec4, Mat4> divergence_of_components(const VecX& xi) const;
};

/// Identity embedding of a 3D medium with the given stress-mass tensor field
/// T^{beta gamma}(X) and moment field J^{alpha beta gamma}(X) (J[gamma](alpha, beta)).
MediumField identity_medium(std::function<Mat4(const Vec4&)> stress_mass,
                            std::function<std::vector<Mat4>(const Vec4&)> moments = {});

}  // namespace torsor
