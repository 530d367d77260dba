#include "torsor/reduction.hpp"

namespace torsor {

Reduced1DT reduce_3d_to_1d_T(const SectionField& bar_T, const Mat24& Pi, const CrossSection& cs) {
  if (cs.nodes().empty()) throw EmptySection("cross-section has no quadrature nodes");
  Reduced1DT out;
  for (const auto& node : cs.nodes()) out.T += node.weight * (Pi * bar_T(cs.point(node)).transpose());
  out.force_mass = ForceMass1D::from_T(out.T);
  return out;
}

Reduced1DJ reduce_3d_to_1d_J(const SectionField& bar_T, const Mat24& Pi, const CrossSection& cs) {
  if (cs.nodes().empty()) throw EmptySection("cross-section has no quadrature nodes");
  if (!cs.is_mass_centered())
    throw Error("J reduction needs a mass-centered cross-section (use mass_centered())");
  Reduced1DJ out;
  out.J = {Mat4::Zero(), Mat4::Zero()};
  for (const auto& node : cs.nodes()) {
    const Vec3 xb = cs.offset(node);
    const Mat4 T = bar_T(cs.point(node));  // T-bar^{beta rho}
    // Jbar[rho](alpha, beta) = J-bar^{alpha beta rho}
    std::array<Mat4, 4> Jbar;
    for (int r = 0; r < 4; ++r) {
      Mat4 J = Mat4::Zero();
      for (int i = 0; i < 3; ++i) {
        J(i + 1, 0) = xb(i) * T(0, r);
        J(0, i + 1) = -J(i + 1, 0);
        for (int j = 0; j < 3; ++j) J(i + 1, j + 1) = xb(i) * T(j + 1, r) - xb(j) * T(i + 1, r);
      }
      Jbar[r] = J;
    }
    for (int g = 0; g < 2; ++g)
      for (int r = 0; r < 4; ++r) out.J[g] += node.weight * Pi(g, r) * Jbar[r];
  }
  for (int i = 0; i < 3; ++i) {
    const int k = (i + 1) % 3 + 1;
    const int l = (i + 2) % 3 + 1;
    out.q(i) = out.J[0](i + 1, 0);
    out.l(i) = out.J[0](k, l);
    out.l_star(i) = out.J[1](i + 1, 0);
    out.M_star(i) = out.J[1](k, l);
  }
  return out;
}

Reduced2D reduce_3d_to_2d(const std::function<Mat3(double)>& sigma_bar, double rho,
                          const ThicknessRule& rule) {
  Reduced2D out;
  out.rho_s = rho * rule.h;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double z = rule.nodes[k];
    const double w = rule.weights[k];
    const Mat3 s = sigma_bar(z);
    out.N += w * s.block<2, 2>(0, 0);
    out.Q += w * s.block<2, 1>(0, 2);
    out.M += w * z * s.block<2, 2>(0, 0);
  }
  return out;
}

TorsorComponents assemble_shell_T(const Reduced2D& reduced, const Vec2& w, double rho, double h) {
  const double I = rho * h * h * h / 12.0;
  TorsorComponents c = TorsorComponents::zero(2);
  c.T(0, 0) = reduced.rho_s;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      c.T(a + 1, b + 1) = I * w(a) * w(b) - reduced.N(a, b);
      c.J[a + 1](b + 1, 3) = reduced.M(a, b);
      c.J[a + 1](3, b + 1) = -reduced.M(a, b);
    }
    c.T(a + 1, 3) = -reduced.Q(a);
  }
  return c;
}

}  // namespace torsor
