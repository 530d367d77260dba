#pragma once

// Dimensional reduction of a 3D Cauchy stress-mass field to rod (3D -> 1D)
// and shell (3D -> 2D) torsor components.

#include "torsor/media_fields.hpp"
#include "torsor/quadrature.hpp"

#include <array>

namespace torsor {

/// 3D stress-mass tensor T-bar^{beta rho} at an absolute position in the section.
using SectionField = std::function<Mat4(const Vec3&)>;

struct Reduced1DT {
  Mat24 T = Mat24::Zero();  ///< ^gamma T^beta
  ForceMass1D force_mass;   ///< rho_l, v, v_t, F extracted from T
};

/// T = integral of Pi T-bar over the section, ^gamma T^beta = ^gamma Pi_rho T-bar^{beta rho}.
/// Throws EmptySection when the section has no nodes.
Reduced1DT reduce_3d_to_1d_T(const SectionField& bar_T, const Mat24& Pi, const CrossSection& cs);

struct Reduced1DJ {
  Vec3 q = Vec3::Zero();       ///< ^0J^{i0}
  Vec3 l = Vec3::Zero();       ///< ^0J^{kl}
  Vec3 l_star = Vec3::Zero();  ///< ^1J^{i0}
  Vec3 M_star = Vec3::Zero();  ///< ^1J^{kl}
  std::array<Mat4, 2> J{};     ///< ^gamma J^{alpha beta}
};

/// J components from J-bar^{i0 rho} = x-bar^i T-bar^{0 rho} and
/// J-bar^{ij rho} = x-bar^i T-bar^{j rho} - x-bar^j T-bar^{i rho}, with x-bar measured
/// from the section's mass center. The section must come from mass_centered().
Reduced1DJ reduce_3d_to_1d_J(const SectionField& bar_T, const Mat24& Pi, const CrossSection& cs);

struct Reduced2D {
  double rho_s = 0.0;     ///< kg/m^2
  Mat2 N = Mat2::Zero();  ///< membrane force density N^{ab}
  Vec2 Q = Vec2::Zero();  ///< shear force density Q^a
  Mat2 M = Mat2::Zero();  ///< bending/torsion moment density M^{ab}
};

/// sigma_bar(theta3) holds stress components in the adapted basis (indices 0, 1
/// in-plane, 2 normal). rho_s = rho h, N = int sigma^{ab}, Q = int sigma^{a3},
/// M = int theta3 sigma^{ab}.
Reduced2D reduce_3d_to_2d(const std::function<Mat3(double)>& sigma_bar, double rho,
                          const ThicknessRule& rule);

/// Shell torsor components with I = rho h^3 / 12 and w in surface components:
/// ^0T^0 = rho_s, ^aT^b = I w^a w^b - N^{ab}, ^aT^3 = -Q^a, ^aJ^{b3} = -^aJ^{3b} = M^{ab}.
TorsorComponents assemble_shell_T(const Reduced2D& reduced, const Vec2& w, double rho, double h);

}  // namespace torsor
