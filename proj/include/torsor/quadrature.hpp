#pragma once

// Quadrature rules over rod cross-sections and shell thickness.

#include "torsor/types.hpp"

#include <functional>
#include <vector>

namespace torsor {

/// Gauss-Legendre nodes and weights on [a, b].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  static GaussLegendre on(int n, double a = -1.0, double b = 1.0);
};

struct SectionNode {
  Vec2 y;         ///< coordinates in the section plane (m), relative to the section origin
  double weight;  ///< m^2
};

/// Planar cross-section of a rod with quadrature nodes and an attached frame:
/// origin, unit tangent n and in-plane orthonormal basis (e1, e2).
class CrossSection {
 public:
  /// Polar Gauss rule: Gauss-Legendre in r (weight r dr) times uniform angles.
  /// Exact for bivariate polynomials up to degree min(2 radial - 2, angular - 1).
  static CrossSection disc(double radius, int radial = 8, int angular = 16);
  /// Tensor-product Gauss-Legendre rule on [-w/2, w/2] × [-h/2, h/2]; exact to degree 2n - 1 per axis.
  static CrossSection rectangle(double width, double height, int nx = 8, int ny = 8);
  static CrossSection from_nodes(std::vector<SectionNode> nodes);

  /// Places the section: origin, tangent n, first in-plane direction (orthogonalized).
  CrossSection placed(const Vec3& origin, const Vec3& n, const Vec3& e1_hint) const;
  /// Moves the origin to the mass center of the density rho(x) (x absolute);
  /// the returned section is flagged as mass-centered.
  CrossSection mass_centered(const std::function<double(const Vec3&)>& rho) const;

  const std::vector<SectionNode>& nodes() const { return nodes_; }
  double area() const;
  /// x-bar of a node: offset from the origin in space.
  Vec3 offset(const SectionNode& node) const { return node.y(0) * e1_ + node.y(1) * e2_; }
  Vec3 point(const SectionNode& node) const { return origin_ + offset(node); }
  const Vec3& origin() const { return origin_; }
  const Vec3& n() const { return n_; }
  const Vec3& e1() const { return e1_; }
  const Vec3& e2() const { return e2_; }
  bool is_mass_centered() const { return centered_; }
  /// Largest distance between the origin and a node, times two.
  double diameter() const;

 private:
  std::vector<SectionNode> nodes_;
  Vec3 origin_ = Vec3::Zero();
  Vec3 n_ = Vec3::UnitX();
  Vec3 e1_ = Vec3::UnitY();
  Vec3 e2_ = Vec3::UnitZ();
  bool centered_ = false;
};

/// Gauss-Legendre rule over theta^3 in [-h/2, h/2].
struct ThicknessRule {
  double h = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  static ThicknessRule gauss_legendre(double h, int n = 8);
  /// Polynomial degree integrated exactly.
  int degree() const { return 2 * static_cast<int>(nodes.size()) - 1; }
};

}  // namespace torsor
