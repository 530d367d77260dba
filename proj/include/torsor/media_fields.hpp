#pragma once

// Kinematics and torsor-component assembly for the medium classes: rods
// (curves in space moving in time), shells (moving surfaces) and Cauchy media.

#include "torsor/connection.hpp"
#include "torsor/differentiation.hpp"
#include "torsor/medium_field.hpp"
#include "torsor/types.hpp"

#include <array>
#include <functional>

namespace torsor {

using Mat24 = Eigen::Matrix<double, 2, 4>;
using Mat42 = Eigen::Matrix<double, 4, 2>;
using Mat32 = Eigen::Matrix<double, 3, 2>;
using Mat23 = Eigen::Matrix<double, 2, 3>;

// --- Rods --------------------------------------------------------------------

/// Eulerian description x = psi(t, s) of a rod with s the arclength at time t,
/// plus the material velocity v(t, s).
struct Curve1D {
  std::function<Vec3(double, double)> psi;
  std::function<Vec3(double, double)> velocity;
  /// Optional exact unit tangent d psi / d s.
  std::function<Vec3(double, double)> unit_tangent;
  DifferenceOptions differences;

  Vec3 position(double t, double s) const { return psi(t, s); }
  Vec3 v(double t, double s) const { return velocity(t, s); }
  /// n = d psi / d s; throws DegenerateTangent when |d psi / d s| < 1e-9.
  Vec3 n(double t, double s) const;
  /// Tangential speed v . n.
  double v_t(double t, double s) const;
  /// | |d psi / d s| - 1 |, zero for an arclength parameterization.
  double arclength_defect(double t, double s) const;

  /// Reparameterizes gamma(t, u) to arclength measured from u_ref, by adaptive
  /// quadrature of |d gamma / d u| (tolerance 1e-8) and Newton inversion.
  /// velocity is given on the original parameter.
  static Curve1D arclength_reparameterized(std::function<Vec3(double, double)> gamma,
                                           std::function<Vec3(double, double)> velocity,
                                           double u_ref);
};

/// U = [[1, 0], [v - v_t n, n]].
Mat42 tangent_map_1d(const Curve1D& c, double t, double s);
/// Pi = [[1, 0], [0, n^T]], Pi U = 1.
Mat24 projector_1d(const Curve1D& c, double t, double s);

/// Force-mass tensor of a rod element: rho_l (kg/m), velocity v, tangential speed v_t,
/// statical force F through the cross-section (N).
struct ForceMass1D {
  double rho_l = 0.0;
  Vec3 v = Vec3::Zero();
  double v_t = 0.0;
  Vec3 F = Vec3::Zero();

  /// [[rho_l, rho_l v^T], [rho_l v_t, (rho_l v_t v - F)^T]]; row is the material index.
  Mat24 T() const;
  /// Inverse of T(); requires rho_l != 0.
  static ForceMass1D from_T(const Mat24& T);
};

/// Medium bundle of a rod: chart (t, s), embedding (t, psi), tangent map from
/// tangent_map_1d, torsor components from the given force-mass and moment fields.
/// moments(t, s) returns (^0 J, ^1 J).
MediumField rod_medium(const Curve1D& curve,
                       std::function<ForceMass1D(double, double)> force_mass,
                       std::function<std::array<Mat4, 2>(double, double)> moments = {});

// --- Cauchy medium -----------------------------------------------------------

/// Stress-mass tensor [[rho, rho v^T], [rho v, rho v v^T - sigma]].
Mat4 assemble_cauchy_T(double rho, const Vec3& v, const Mat3& sigma);

struct CauchyFields {
  std::function<double(double, const Vec3&)> rho;
  std::function<Vec3(double, const Vec3&)> v;
  std::function<Mat3(double, const Vec3&)> sigma;
};

/// Identity-embedded 3D Cauchy medium with J = 0.
MediumField cauchy_medium(const CauchyFields& fields);

// --- Shells ------------------------------------------------------------------

/// Moving surface x(t, theta) with unit normal n and thickness h (m).
struct ShellField {
  std::function<Vec3(double, const Vec2&)> x;
  /// Optional exact tangents pi_a = d x / d theta^a (columns).
  std::function<Mat32(double, const Vec2&)> tangents;
  /// Optional exact unit normal; defaults to (pi_1 × pi_2) / |pi_1 × pi_2|.
  std::function<Vec3(double, const Vec2&)> normal;
  /// Optional rigid rotation R(t) of the shell element.
  std::function<Mat3(double)> R;
  double h = 0.0;
  DifferenceOptions differences;
  /// Step used when differencing a quantity that is itself differenced.
  double nested_relative_step = 1e-4;

  Vec3 position(double t, const Vec2& th) const { return x(t, th); }
  Mat32 pi(double t, const Vec2& th) const;
  Vec3 n(double t, const Vec2& th) const;
  /// a_ab = pi_a . pi_b
  Mat2 first_form(double t, const Vec2& th) const;
  /// c = a^-1 pi^T (rows are c^a); throws SingularMetric when det a < 1e-12.
  Mat23 c(double t, const Vec2& th) const;
  /// d pi_b / d theta^c, entry [c] column b.
  std::array<Mat32, 2> dpi_dtheta(double t, const Vec2& th) const;
  Mat32 dpi_dt(double t, const Vec2& th) const;
  /// b_ab = n . d pi_b / d theta^a
  Mat2 second_form(double t, const Vec2& th) const;
  /// v = d x / d t
  Vec3 velocity(double t, const Vec2& th) const;
  /// d v / d t
  Vec3 acceleration(double t, const Vec2& th) const;
  /// w = d n / d t
  Vec3 w(double t, const Vec2& th) const;
  /// Poisson vector varpi with dR/dt = j(varpi) R.
  Vec3 poisson_vector(double t) const;
  /// max(|pi_a . n|, |n . n - 1|).
  double normal_defect(double t, const Vec2& th) const;

  double step(double coordinate) const { return differences.step_for(coordinate); }
  double nested_step(double coordinate) const {
    return nested_relative_step * std::max(1.0, std::abs(coordinate));
  }
};

/// Christoffels of the surface-adapted chart (t, theta^1, theta^2, theta^3).
struct ShellChristoffels {
  Vec2 G_a00 = Vec2::Zero();        ///< Gamma^a_00 = -(c g)^a
  double G_300 = 0.0;               ///< Gamma^3_00 = -n . g
  std::array<Mat2, 2> G_abc{};      ///< G_abc[a](b, c) = c^a . d pi_b / d theta^c
  Mat2 b = Mat2::Zero();            ///< Gamma^3_ab = b_ab
  Mat2 Phi_ab = Mat2::Zero();       ///< Phi(a, b) = Phi^a_b = c^a . (d pi_b/dt + Omega pi_b)
  Vec2 Phi_a = Vec2::Zero();        ///< Phi^a = c^a . (d n/dt + Omega n)
  Vec2 Phi_b = Vec2::Zero();        ///< Phi_b = n . (d pi_b/dt + Omega pi_b)
};

ShellChristoffels shell_christoffels(const ShellField& sf, const GalileanConnection& conn,
                                     double t, double theta1, double theta2);

}  // namespace torsor
