#pragma once

// Affine frames, the Galilei group and the transformation laws of points,
// affine forms, torsors and vector-valued torsors (stress-mass tensors).
//
// A frame change (C, P) maps old components to new ones. Its linear
// representation on R^5 is
//
//     P~ = | 1  0 |
//          | C  P |
//
// and the laws read V~' = P~^-1 V~, Psi~' = Psi~ P~, tau~' = P~^-1 tau~ P~^-T.
// compose(f1, f2) has P~ = P~(f1) P~(f2): apply f1 first, then f2.

#include "torsor/types.hpp"

namespace torsor {

class AffineFrameChange {
 public:
  /// Identity change.
  AffineFrameChange();
  /// Throws InvalidFrame when P is singular.
  AffineFrameChange(const Vec4& C, const Mat4& P);

  static AffineFrameChange identity() { return {}; }
  /// Rebuild from a 5x5 representation; the top row must be (1, 0, 0, 0, 0).
  static AffineFrameChange from_extended(const Mat5& m);

  const Vec4& C() const { return C_; }
  const Mat4& P() const { return P_; }
  const Mat4& P_inverse() const { return P_inv_; }
  /// C' = -P^-1 C, the origin offset expressed in the new basis.
  Vec4 C_prime() const { return -P_inv_ * C_; }

  Mat5 extended() const;
  AffineFrameChange inverse() const;

 private:
  Vec4 C_;
  Mat4 P_;
  Mat4 P_inv_;
};

/// Element of the Galilei group: boost u (m/s), rotation R, time shift tau0 (s),
/// space translation k (m). Embeds as P = [[1, 0], [u, R]], C = (tau0, k).
class GalileanFrameChange {
 public:
  GalileanFrameChange();
  /// Throws InvalidFrame unless R is a proper rotation to 1e-12.
  GalileanFrameChange(const Vec3& u, const Mat3& R, double tau0, const Vec3& k);

  static GalileanFrameChange identity() { return {}; }
  static GalileanFrameChange boost(const Vec3& u);
  static GalileanFrameChange rotation(const Mat3& R);
  static GalileanFrameChange translation(double tau0, const Vec3& k);

  const Vec3& u() const { return u_; }
  const Mat3& R() const { return R_; }
  double tau0() const { return tau0_; }
  const Vec3& k() const { return k_; }

  AffineFrameChange affine() const;
  Mat4 P() const;
  Vec4 C() const { return spacetime(tau0_, k_); }
  GalileanFrameChange inverse() const;

 private:
  Vec3 u_;
  Mat3 R_;
  double tau0_;
  Vec3 k_;
};

struct AffinePoint {
  Vec4 V = Vec4::Zero();
};

struct AffineForm {
  double chi = 0.0;
  Eigen::RowVector4d Phi = Eigen::RowVector4d::Zero();
};

/// Real-valued torsor with linear part T and skew angular part J.
class Torsor {
 public:
  Torsor();
  /// J is stored as (J - J^T) / 2, so the stored matrix is exactly skew.
  Torsor(const Vec4& T, const Mat4& J);

  const Vec4& T() const { return T_; }
  const Mat4& J() const { return J_; }

  /// 5x5 storage [[0, T^T], [-T, J]].
  Mat5 extended() const;
  static Torsor from_extended(const Mat5& m);

 private:
  Vec4 T_;
  Mat4 J_;
};

/// Engineer view of a pointwise torsor: mass m (kg), linear momentum p (kg m/s),
/// position quantity q (kg m), angular momentum l (kg m^2/s).
/// Packing: T = (m, p), J = [[0, -q^T], [q, -j(l)]].
struct PointwiseTorsor {
  double m = 0.0;
  Vec3 p = Vec3::Zero();
  Vec3 q = Vec3::Zero();
  Vec3 l = Vec3::Zero();

  Torsor to_torsor() const;
  static PointwiseTorsor from_torsor(const Torsor& tau);

  /// Components seen from a frame boosted by v and translated to x, starting
  /// from the proper-frame torsor (m, l0): p = m v, q = m x, l = l0 + x × m v.
  static PointwiseTorsor from_proper_frame(double m, const Vec3& l0, const Vec3& v,
                                           const Vec3& x);
};

AffineFrameChange compose(const AffineFrameChange& f1, const AffineFrameChange& f2);
GalileanFrameChange compose(const GalileanFrameChange& f1, const GalileanFrameChange& f2);

AffinePoint transform_point(const AffineFrameChange& f, const AffinePoint& a);
AffineForm transform_form(const AffineFrameChange& f, const AffineForm& psi);
Torsor transform_torsor(const AffineFrameChange& f, const Torsor& tau);

/// T = P T' P^T for a vector-valued torsor whose material index follows the
/// space-time chart (identity embedding). Tp must be symmetric.
Mat4 transform_stress_mass(const GalileanFrameChange& f, const Mat4& Tp);

/// psi(a) = chi + Phi V.
double value(const AffineForm& psi, const AffinePoint& a);
/// tau(psi, psi_hat) = Psi~ tau~ Psi_hat~^T.
double pairing(const Torsor& tau, const AffineForm& psi, const AffineForm& psi_hat);

}  // namespace torsor
