#include "torsor/quadrature.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <cmath>

namespace torsor {

GaussLegendre GaussLegendre::on(int n, double a, double b) {
  if (n < 1) throw Error("Gauss-Legendre rule needs at least one node");
  // legendre_p_zeros returns the nonnegative zeros in increasing order.
  const std::vector<double> half = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> x;
  for (auto it = half.rbegin(); it != half.rend(); ++it)
    if (*it != 0.0) x.push_back(-*it);
  for (double z : half) x.push_back(z);

  GaussLegendre rule;
  const double mid = 0.5 * (a + b);
  const double half_len = 0.5 * (b - a);
  for (double z : x) {
    const double dp = boost::math::legendre_p_prime(n, z);
    rule.nodes.push_back(mid + half_len * z);
    rule.weights.push_back(half_len * 2.0 / ((1.0 - z * z) * dp * dp));
  }
  return rule;
}

CrossSection CrossSection::disc(double radius, int radial, int angular) {
  if (radius <= 0.0) throw EmptySection("disc radius must be positive");
  if (angular < 1) throw EmptySection("disc rule needs angular nodes");
  const double pi = boost::math::constants::pi<double>();
  const GaussLegendre r = GaussLegendre::on(radial, 0.0, radius);
  std::vector<SectionNode> nodes;
  const double dtheta = 2.0 * pi / angular;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    for (int j = 0; j < angular; ++j) {
      const double th = (j + 0.5) * dtheta;
      nodes.push_back({Vec2(r.nodes[i] * std::cos(th), r.nodes[i] * std::sin(th)),
                       r.weights[i] * r.nodes[i] * dtheta});
    }
  }
  return from_nodes(std::move(nodes));
}

CrossSection CrossSection::rectangle(double width, double height, int nx, int ny) {
  if (width <= 0.0 || height <= 0.0) throw EmptySection("rectangle sides must be positive");
  const GaussLegendre gx = GaussLegendre::on(nx, -0.5 * width, 0.5 * width);
  const GaussLegendre gy = GaussLegendre::on(ny, -0.5 * height, 0.5 * height);
  std::vector<SectionNode> nodes;
  for (std::size_t i = 0; i < gx.nodes.size(); ++i)
    for (std::size_t j = 0; j < gy.nodes.size(); ++j)
      nodes.push_back({Vec2(gx.nodes[i], gy.nodes[j]), gx.weights[i] * gy.weights[j]});
  return from_nodes(std::move(nodes));
}

CrossSection CrossSection::from_nodes(std::vector<SectionNode> nodes) {
  if (nodes.empty()) throw EmptySection("cross-section has no quadrature nodes");
  CrossSection cs;
  cs.nodes_ = std::move(nodes);
  return cs;
}

CrossSection CrossSection::placed(const Vec3& origin, const Vec3& n, const Vec3& e1_hint) const {
  if (n.norm() < 1e-12) throw DegenerateTangent("section normal vanishes");
  CrossSection cs = *this;
  cs.origin_ = origin;
  cs.n_ = n.normalized();
  Vec3 e1 = e1_hint - e1_hint.dot(cs.n_) * cs.n_;
  if (e1.norm() < 1e-12) throw DegenerateTangent("section basis hint is parallel to the tangent");
  cs.e1_ = e1.normalized();
  cs.e2_ = cs.n_.cross(cs.e1_);
  cs.centered_ = false;
  return cs;
}

CrossSection CrossSection::mass_centered(const std::function<double(const Vec3&)>& rho) const {
  double mass = 0.0;
  Vec2 first = Vec2::Zero();
  for (const auto& node : nodes_) {
    const double dm = rho(point(node)) * node.weight;
    mass += dm;
    first += dm * node.y;
  }
  if (mass <= 0.0) throw NonpositiveMass("cross-section carries no mass");
  const Vec2 c = first / mass;
  CrossSection cs = *this;
  for (auto& node : cs.nodes_) node.y -= c;
  cs.origin_ = origin_ + c(0) * e1_ + c(1) * e2_;
  cs.centered_ = true;
  return cs;
}

double CrossSection::area() const {
  double a = 0.0;
  for (const auto& node : nodes_) a += node.weight;
  return a;
}

double CrossSection::diameter() const {
  double r = 0.0;
  for (const auto& node : nodes_) r = std::max(r, node.y.norm());
  return 2.0 * r;
}

ThicknessRule ThicknessRule::gauss_legendre(double h, int n) {
  if (h <= 0.0) throw Error("shell thickness must be positive");
  const GaussLegendre g = GaussLegendre::on(n, -0.5 * h, 0.5 * h);
  return {h, g.nodes, g.weights};
}

}  // namespace torsor
