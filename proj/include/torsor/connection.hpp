#pragma once

// Galilean connections, the origin-motion column Gamma_A and the affine
// covariant divergence of vector-valued torsors.

#include "torsor/differentiation.hpp"
#include "torsor/medium_field.hpp"
#include "torsor/types.hpp"

#include <array>
#include <functional>

namespace torsor {

/// Space-time Christoffel symbols Gamma^alpha_{mu beta}; mu is the direction index.
class Christoffels {
 public:
  Christoffels() { data_.fill(0.0); }

  double operator()(int alpha, int mu, int beta) const { return data_[index(alpha, mu, beta)]; }
  double& operator()(int alpha, int mu, int beta) { return data_[index(alpha, mu, beta)]; }

  /// Connection matrix Gamma(dX)^alpha_beta = Gamma^alpha_{mu beta} dX^mu.
  Mat4 contract(const Vec4& dX) const;
  int nonzero_count(double tol = 0.0) const;

 private:
  static int index(int a, int m, int b) { return (a * 4 + m) * 4 + b; }
  std::array<double, 64> data_;
};

/// Gravity g(t, x) in m/s^2 and spin Omega(t, x) in rad/s.
struct GalileanConnection {
  std::function<Vec3(double, const Vec3&)> g;
  std::function<Vec3(double, const Vec3&)> Omega;

  static GalileanConnection uniform(const Vec3& gravity, const Vec3& spin);

  Vec3 gravity(double t, const Vec3& x) const { return g ? g(t, x) : Vec3::Zero(); }
  Vec3 spin(double t, const Vec3& x) const { return Omega ? Omega(t, x) : Vec3::Zero(); }
};

/// Field C(X) of the bound vector to the chosen origin of the affine tangent space.
struct OriginMotion {
  std::function<Vec4(const Vec4&)> C_field;
  /// Optional exact dC/dX (column mu is dC/dX^mu); differenced when empty.
  std::function<Mat4(const Vec4&)> C_jacobian;

  /// C = 0: the origin is the event itself (proper frame).
  static OriginMotion proper();
  /// C = (0, x): origin at the spatial origin of the chart.
  static OriginMotion position();

  Vec4 C(const Vec4& X) const { return C_field ? C_field(X) : Vec4::Zero(); }
};

/// Gamma^i_00 = -g^i, Gamma^i_0j = Gamma^i_j0 = j(Omega)^i_j, everything else zero.
Christoffels christoffels_at(const GalileanConnection& conn, double t, const Vec3& x);

/// Gamma_A(dX) = dX - (dC + Gamma(dX) C), dC by central differences.
Vec4 gamma_A_at(const GalileanConnection& conn, const OriginMotion& origin, double t,
                const Vec3& x, const Vec4& dX, const DifferenceOptions& opts = {});

/// Matrix Gamma^alpha_{A sigma}; column sigma is Gamma_A(e_sigma).
Mat4 gamma_A_matrix(const GalileanConnection& conn, const OriginMotion& origin, double t,
                    const Vec3& x, const DifferenceOptions& opts = {});

/// Christoffels of the pulled-back connection at one chart point of a medium
/// of dimension d: material ^gamma_{gamma' rho}Gamma, space-time
/// Gamma^alpha_{sigma rho} at the image point, and Gamma^alpha_{A sigma}.
class PullbackChristoffels {
 public:
  explicit PullbackChristoffels(int dim);

  int dim() const { return dim_; }
  double material(int gamma, int gamma_prime, int rho) const;
  double& material(int gamma, int gamma_prime, int rho);

  Christoffels spacetime;
  Mat4 origin_motion = Mat4::Identity();

  /// Identity embedding of a 3D medium: material symbols equal the space-time ones.
  static PullbackChristoffels identity_embedding(const GalileanConnection& conn,
                                                 const OriginMotion& origin, const Vec4& X,
                                                 const DifferenceOptions& opts = {});
  /// Chart whose tangent map is the inclusion of the first d+1 coordinates:
  /// material symbols are the restriction of the space-time ones.
  static PullbackChristoffels adapted_chart(int dim, const Christoffels& spacetime,
                                            const Mat4& origin_motion);
  /// Zero material symbols (arclength chart of a rod, worldline of a point).
  static PullbackChristoffels flat_material(int dim, const Christoffels& spacetime,
                                            const Mat4& origin_motion);

 private:
  int dim_;
  std::vector<double> material_;
};

/// Christoffels of a Galilean connection in a curvilinear chart X' -> X(X').
/// Jacobians and second derivatives are differenced with step h.
Christoffels chart_christoffels(const std::function<Vec4(const Vec4&)>& chart,
                                const GalileanConnection& conn, const Vec4& Xp,
                                double h = 1e-4);

/// _gamma nabla~ ^gamma T^beta.
Vec4 div_T(const MediumField& field, const VecX& xi, const PullbackChristoffels& chr);

/// _gamma nabla~ ^gamma J^{alpha beta}, returned exactly skew.
Mat4 div_J(const MediumField& field, const VecX& xi, const PullbackChristoffels& chr);

}  // namespace torsor
