#pragma once

// Residuals of the ten balance equations (mass, linear momentum, position
// quantity, angular momentum) for pointwise objects, Cauchy media, rods,
// shells and 3D Cosserat media.
//
// Frame conventions are fixed per operator: angular balances are evaluated in
// a proper frame, position-quantity balances of pointwise objects and rods use
// the origin C = (0, x).

#include "torsor/affine_algebra.hpp"
#include "torsor/connection.hpp"
#include "torsor/media_fields.hpp"

#include <array>
#include <optional>

namespace torsor {

/// Ten scalar residuals. Slot layout of packed(): mass, linear momentum (3),
/// position quantity (3), angular momentum (3).
///
/// Shells reuse the slots as: linear = (in-plane 1, in-plane 2, off-plane),
/// angular = (off-plane 1, off-plane 2, in-plane), position quantity = the
/// identity rows (J^{10}, J^{20}, J^{03}).
struct BalanceResidual {
  double mass = 0.0;
  Vec3 linear_momentum = Vec3::Zero();
  Vec3 position_quantity = Vec3::Zero();
  Vec3 angular_momentum = Vec3::Zero();

  std::array<double, 10> packed() const;
  static BalanceResidual from_packed(const std::array<double, 10>& r);
  double max_norm() const;
  double l2_norm() const;
  bool finite() const;

  BalanceResidual& operator+=(const BalanceResidual& o);
  BalanceResidual& operator-=(const BalanceResidual& o);
  BalanceResidual& operator*=(double s);
};

BalanceResidual operator-(BalanceResidual a, const BalanceResidual& b);

/// Packs a torsor divergence: mass = divT^0, linear = divT^i, position
/// quantity^i = divJ^{i0}, angular^i = divJ^{kl} with (ikl) cyclic.
BalanceResidual pack_divergence(const Vec4& divT, const Mat4& divJ);

// --- Pointwise objects -------------------------------------------------------

/// State of a pointwise object along its worldline: torsor components and position.
struct PointwiseMotion {
  std::function<PointwiseTorsor(double)> torsor;
  /// Position x(t); defaults to q / m when empty.
  std::function<Vec3(double)> position;
  DifferenceOptions differences;

  Vec3 x(double t) const;
};

/// (mdot), (pdot - m(g - 2 Omega×v)), (qdot - p), (ldot + Omega×l0 - x×m(g - 2 Omega×v))
/// with v = p/m and l0 = l - x×p. origin must be OriginMotion::position().
BalanceResidual residual_pointwise(const PointwiseMotion& motion, const GalileanConnection& conn,
                                   const OriginMotion& origin, double t);

/// Same balance through the general divergence of the worldline medium (d = 0)
/// with Gamma_A from the given origin.
BalanceResidual residual_pointwise_general(const PointwiseMotion& motion,
                                           const GalileanConnection& conn,
                                           const OriginMotion& origin, double t);

// --- Cauchy media ------------------------------------------------------------

/// Density, velocity and stress recovered from the stress-mass tensor at X.
struct CauchyState {
  double rho = 0.0;
  Vec3 v = Vec3::Zero();
  Mat3 sigma = Mat3::Zero();
};
CauchyState cauchy_state(const MediumField& f, const Vec4& X);

/// Identity-embedded Cauchy medium. mass = d rho/dt + div(rho v);
/// linear = rho(dv/dt + (dv/dx) v) - div sigma - rho(g - 2 Omega×v);
/// position quantity^i = T^{0i} - T^{i0}, angular^i = T^{lk} - T^{kl} ((ikl) cyclic),
/// both from the proper-frame divergence of J.
BalanceResidual residual_cauchy(const MediumField& f, const GalileanConnection& conn,
                                const Vec4& X);

/// Conservative form of the Cauchy divergence: divT^0 = d_gamma T^{0 gamma},
/// divT^i = d_gamma T^{i gamma} - g^i T^00 + Omega^i_j (T^{j0} + T^{0j}).
Vec4 cauchy_divergence(const MediumField& f, const GalileanConnection& conn, const Vec4& X);

// --- Rods --------------------------------------------------------------------

struct RodFields {
  Curve1D curve;
  std::function<double(double, double)> rho_l;
  std::function<Vec3(double, double)> F;
  /// Optional J fields (zero when empty).
  std::function<Vec3(double, double)> q;
  std::function<Vec3(double, double)> l;
  std::function<Vec3(double, double)> l_star;
  std::function<Vec3(double, double)> M_star;
  /// Chart domain in (t, s).
  std::optional<Box> domain;
};

/// Separate terms of the angular balance
/// dl/dt + Omega×l + l*×(Omega×n) + dM*/ds - n×F.
struct RodAngularTerms {
  Vec3 dl_dt = Vec3::Zero();
  Vec3 omega_cross_l = Vec3::Zero();
  Vec3 lstar_term = Vec3::Zero();
  Vec3 dMstar_ds = Vec3::Zero();
  Vec3 n_cross_F = Vec3::Zero();
};

/// mass = d rho_l/dt + d(rho_l v_t)/ds;
/// linear = rho_l(dv/dt + v_t dv/ds) - dF/ds - rho_l(g - 2 Omega×v);
/// position quantity = dq/dt + dl*/ds - rho_l v;
/// angular = dl/dt + Omega×l + l*×(Omega×n) + dM*/ds - n×F.
BalanceResidual residual_1d(const RodFields& rod, const GalileanConnection& conn, double t,
                            double s, RodAngularTerms* terms = nullptr);

/// Medium bundle of the rod (force-mass tensor assembled from rho_l, v, v_t, F).
MediumField rod_force_medium(const RodFields& rod);

// --- Shells ------------------------------------------------------------------

struct ShellTorsorFields {
  std::function<double(double, const Vec2&)> rho_s;
  /// N(a, b) = N^{ab}, M(a, b) = M^{ab}, Q(a) = Q^a.
  std::function<Mat2(double, const Vec2&)> N;
  std::function<Vec2(double, const Vec2&)> Q;
  std::function<Mat2(double, const Vec2&)> M;
};

/// Separate terms of the shell angular balances.
struct ShellTerms {
  double eps_N = 0.0;          ///< eps_cb N^{cb}
  double eps_bM = 0.0;         ///< eps_cb b^c_a M^{ab}
  double eps_inertia = 0.0;    ///< eps_cb I (Phi^c + w^c) w^b
  Vec2 M_bar = Vec2::Zero();   ///< M^{ba}|_b
  Vec2 Q = Vec2::Zero();
  Vec2 inertia = Vec2::Zero(); ///< I (dw^a/dt + Phi^a_b w^b + Phi^c_c w^a)
  Vec2 identity_b0 = Vec2::Zero();
  double identity_03 = 0.0;
};

/// Shell residuals with I = rho_s h^2 / 12 and w^a = c^a . dn/dt:
/// mass = d rho_s/dt + Phi^a_a rho_s;
/// in-plane^a = (N - I w w)^{ba}|_b - b^a_b Q^b + c^a . rho_s(g - 2 Omega×v - dv/dt);
/// off-plane = b_ab (N - I w w)^{ba} + Q^b|_b + n . rho_s(g - 2 Omega×v - dv/dt);
/// in-plane angular = eps_cb (N^{cb} - b^c_a M^{ab} - I (Phi^c + w^c) w^b);
/// off-plane angular^a = M^{ba}|_b - Q^a - I (dw^a/dt + Phi^a_b w^b + Phi^c_c w^a).
/// The identity rows come from the general divergence of J in the adapted chart.
BalanceResidual residual_2d(const ShellField& sf, const ShellTorsorFields& fields,
                            const GalileanConnection& conn, double t, double theta1,
                            double theta2, ShellTerms* terms = nullptr);

/// Medium bundle of the shell on the adapted chart (t, theta^1, theta^2), with
/// ^0T^0 = rho_s, ^aT^b = I w^a w^b - N^{ab}, ^aT^3 = -Q^a, ^aJ^{b3} = M^{ab}.
MediumField shell_medium(const ShellField& sf, const ShellTorsorFields& fields);

/// Pulled-back Christoffels of the adapted chart (t, theta, theta^3) -> (t, x + theta^3 n),
/// proper-frame origin motion.
PullbackChristoffels shell_pullback(const ShellField& sf, const GalileanConnection& conn,
                                    double t, const Vec2& theta);

// --- 3D Cosserat media -------------------------------------------------------

/// Fields of a 3D Cosserat medium. T(X)(beta, gamma) = T^{beta gamma};
/// q^i = J^{i00}, l^i = J^{kl0}, l*^{ir} = J^{i0r}, M*^{ir} = J^{klr}, (ikl) cyclic.
struct Cosserat3DState {
  std::function<Mat4(const Vec4&)> T;
  std::function<Vec3(const Vec4&)> q;
  std::function<Vec3(const Vec4&)> l;
  std::function<Mat3(const Vec4&)> l_star;
  std::function<Mat3(const Vec4&)> M_star;
  DifferenceOptions differences;
  std::optional<Box> domain;
};

/// J[gamma](alpha, beta) = J^{alpha beta gamma} assembled from the engineer fields.
std::vector<Mat4> cosserat_moments(const Cosserat3DState& s, const Vec4& X);

/// Identity-embedded medium of the state.
MediumField cosserat_medium(const Cosserat3DState& s);

/// mass = dT^00/dt + dT^{0i}/dx^i;
/// linear^i = dT^{i0}/dt + dT^{ij}/dx^j - (T^00 g^i - Omega^i_j (T^{0j} + T^{j0}));
/// position^i = dq^i/dt + (Omega×q)^i + dl*^{ir}/dx^r + T^{0i} - T^{i0};
/// angular^k = dl^k/dt + dM*^{km}/dx^m - (q×g)^k + (Omega×l)^k
///             + Omega^j_r l*^{ir} - Omega^i_r l*^{jr} + T^{ji} - T^{ij}, (ijk) cyclic.
BalanceResidual residual_3d_cosserat(const Cosserat3DState& s, const GalileanConnection& conn,
                                     double t, const Vec3& x);

}  // namespace torsor
