#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace torsor {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

// Space-time indices run 0..3, index 0 is time.

/// Skew map j(a) with j(a) b = a × b.
inline Mat3 skew(const Vec3& a) {
  Mat3 m;
  m << 0.0, -a.z(), a.y(),
       a.z(), 0.0, -a.x(),
       -a.y(), a.x(), 0.0;
  return m;
}

/// Inverse of skew() on the antisymmetric part of m.
inline Vec3 axial(const Mat3& m) {
  return 0.5 * Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

template <typename Derived>
auto skew_part(const Eigen::MatrixBase<Derived>& m) {
  return (0.5 * (m - m.transpose())).eval();
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Vec4 spacetime(double t, const Vec3& x) { return Vec4(t, x.x(), x.y(), x.z()); }

// Errors. All derive from Error so callers can catch the family.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidFrame : public Error {
 public:
  using Error::Error;
};

class DifferentiationFailure : public Error {
 public:
  using Error::Error;
};

class DegenerateTangent : public Error {
 public:
  using Error::Error;
};

class SingularMetric : public Error {
 public:
  using Error::Error;
};

class EmptySection : public Error {
 public:
  using Error::Error;
};

class NonpositiveMass : public Error {
 public:
  using Error::Error;
};

class NonMonotoneError : public Error {
 public:
  using Error::Error;
};

}  // namespace torsor
