#include "torsor/affine_algebra.hpp"

#include <cmath>

namespace torsor {

namespace {

constexpr double kRotationTol = 1e-12;
constexpr double kSingularTol = 1e-12;

void check_invertible(const Mat4& P) {
  const double scale = std::max(1.0, max_abs(P));
  const double det = P.determinant();
  if (!std::isfinite(det) || std::abs(det) <= kSingularTol * std::pow(scale, 4)) {
    throw InvalidFrame("frame change: basis matrix P is singular");
  }
}

void check_rotation(const Mat3& R) {
  const double orth = max_abs(Mat3(R.transpose() * R - Mat3::Identity()));
  if (!(orth <= kRotationTol) || std::abs(R.determinant() - 1.0) > kRotationTol) {
    throw InvalidFrame("Galilean frame change: R is not a proper rotation");
  }
}

}  // namespace

// --- AffineFrameChange -------------------------------------------------------

AffineFrameChange::AffineFrameChange()
    : C_(Vec4::Zero()), P_(Mat4::Identity()), P_inv_(Mat4::Identity()) {}

AffineFrameChange::AffineFrameChange(const Vec4& C, const Mat4& P) : C_(C), P_(P) {
  check_invertible(P_);
  P_inv_ = P_.inverse();
}

AffineFrameChange AffineFrameChange::from_extended(const Mat5& m) {
  if (m(0, 0) != 1.0 || m.block<1, 4>(0, 1).cwiseAbs().maxCoeff() != 0.0) {
    throw InvalidFrame("extended matrix must have top row (1, 0, 0, 0, 0)");
  }
  return {m.block<4, 1>(1, 0), m.block<4, 4>(1, 1)};
}

Mat5 AffineFrameChange::extended() const {
  Mat5 m = Mat5::Zero();
  m(0, 0) = 1.0;
  m.block<4, 1>(1, 0) = C_;
  m.block<4, 4>(1, 1) = P_;
  return m;
}

AffineFrameChange AffineFrameChange::inverse() const { return {C_prime(), P_inv_}; }

// --- GalileanFrameChange -----------------------------------------------------

GalileanFrameChange::GalileanFrameChange()
    : u_(Vec3::Zero()), R_(Mat3::Identity()), tau0_(0.0), k_(Vec3::Zero()) {}

GalileanFrameChange::GalileanFrameChange(const Vec3& u, const Mat3& R, double tau0, const Vec3& k)
    : u_(u), R_(R), tau0_(tau0), k_(k) {
  check_rotation(R_);
}

GalileanFrameChange GalileanFrameChange::boost(const Vec3& u) {
  return {u, Mat3::Identity(), 0.0, Vec3::Zero()};
}

GalileanFrameChange GalileanFrameChange::rotation(const Mat3& R) {
  return {Vec3::Zero(), R, 0.0, Vec3::Zero()};
}

GalileanFrameChange GalileanFrameChange::translation(double tau0, const Vec3& k) {
  return {Vec3::Zero(), Mat3::Identity(), tau0, k};
}

Mat4 GalileanFrameChange::P() const {
  Mat4 P = Mat4::Zero();
  P(0, 0) = 1.0;
  P.block<3, 1>(1, 0) = u_;
  P.block<3, 3>(1, 1) = R_;
  return P;
}

AffineFrameChange GalileanFrameChange::affine() const { return {C(), P()}; }

GalileanFrameChange GalileanFrameChange::inverse() const {
  // P^-1 = [[1, 0], [-R^T u, R^T]], C^-1 = -P^-1 C.
  const Mat3 Rt = R_.transpose();
  const Vec3 u_inv = -Rt * u_;
  const double tau_inv = -tau0_;
  const Vec3 k_inv = -(u_inv * tau0_ + Rt * k_);
  return {u_inv, Rt, tau_inv, k_inv};
}

// --- Torsor ------------------------------------------------------------------

Torsor::Torsor() : T_(Vec4::Zero()), J_(Mat4::Zero()) {}

Torsor::Torsor(const Vec4& T, const Mat4& J) : T_(T), J_(skew_part(J)) {}

Mat5 Torsor::extended() const {
  Mat5 m = Mat5::Zero();
  m.block<1, 4>(0, 1) = T_.transpose();
  m.block<4, 1>(1, 0) = -T_;
  m.block<4, 4>(1, 1) = J_;
  return m;
}

Torsor Torsor::from_extended(const Mat5& m) {
  const Vec4 T = 0.5 * (m.block<1, 4>(0, 1).transpose() - m.block<4, 1>(1, 0));
  return {T, m.block<4, 4>(1, 1)};
}

Torsor PointwiseTorsor::to_torsor() const {
  Vec4 T;
  T << m, p;
  Mat4 J = Mat4::Zero();
  J.block<3, 1>(1, 0) = q;
  J.block<1, 3>(0, 1) = -q.transpose();
  J.block<3, 3>(1, 1) = -skew(l);
  return {T, J};
}

PointwiseTorsor PointwiseTorsor::from_torsor(const Torsor& tau) {
  PointwiseTorsor out;
  out.m = tau.T()(0);
  out.p = tau.T().tail<3>();
  out.q = tau.J().block<3, 1>(1, 0);
  out.l = -axial(tau.J().block<3, 3>(1, 1));
  return out;
}

PointwiseTorsor PointwiseTorsor::from_proper_frame(double m, const Vec3& l0, const Vec3& v,
                                                   const Vec3& x) {
  PointwiseTorsor proper;
  proper.m = m;
  proper.l = l0;
  // The displayed boost-and-translate matrix maps proper components to the new
  // frame as P~ tau~' P~^T, which is the law applied with the inverse change.
  const GalileanFrameChange f(v, Mat3::Identity(), 0.0, x);
  return from_torsor(transform_torsor(f.affine().inverse(), proper.to_torsor()));
}

// --- Laws --------------------------------------------------------------------

AffineFrameChange compose(const AffineFrameChange& f1, const AffineFrameChange& f2) {
  return {f1.C() + f1.P() * f2.C(), f1.P() * f2.P()};
}

GalileanFrameChange compose(const GalileanFrameChange& f1, const GalileanFrameChange& f2) {
  // [[1,0],[u1,R1]] [[1,0],[u2,R2]] = [[1,0],[u1 + R1 u2, R1 R2]]
  const Vec3 u = f1.u() + f1.R() * f2.u();
  const Mat3 R = f1.R() * f2.R();
  const Vec4 C = f1.C() + f1.P() * f2.C();
  return {u, R, C(0), C.tail<3>()};
}

AffinePoint transform_point(const AffineFrameChange& f, const AffinePoint& a) {
  return {f.C_prime() + f.P_inverse() * a.V};
}

AffineForm transform_form(const AffineFrameChange& f, const AffineForm& psi) {
  return {psi.chi + psi.Phi.dot(f.C().transpose()), psi.Phi * f.P()};
}

Torsor transform_torsor(const AffineFrameChange& f, const Torsor& tau) {
  const Vec4& T = tau.T();
  const Vec4& C = f.C();
  const Mat4& Pi = f.P_inverse();
  const Mat4 inner = tau.J() + T * C.transpose() - C * T.transpose();
  return {Pi * T, Pi * inner * Pi.transpose()};
}

Mat4 transform_stress_mass(const GalileanFrameChange& f, const Mat4& Tp) {
  const double scale = std::max(1.0, max_abs(Tp));
  if (max_abs(Mat4(Tp - Tp.transpose())) > 1e-12 * scale) {
    throw Error("transform_stress_mass: T' must be symmetric");
  }
  const Mat4 P = f.P();
  const Mat4 T = P * Tp * P.transpose();
  return 0.5 * (T + T.transpose());
}

double value(const AffineForm& psi, const AffinePoint& a) { return psi.chi + psi.Phi.dot(a.V); }

double pairing(const Torsor& tau, const AffineForm& psi, const AffineForm& psi_hat) {
  Eigen::Matrix<double, 1, 5> row, row_hat;
  row << psi.chi, psi.Phi;
  row_hat << psi_hat.chi, psi_hat.Phi;
  return row * tau.extended() * row_hat.transpose();
}

}  // namespace torsor
