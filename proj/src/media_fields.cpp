#include "torsor/media_fields.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

namespace torsor {

// --- TorsorComponents / MediumField -----------------------------------------

TorsorComponents TorsorComponents::zero(int dim) {
  TorsorComponents c;
  c.T = MatX::Zero(dim + 1, 4);
  c.J.assign(static_cast<std::size_t>(dim + 1), Mat4::Zero());
  return c;
}

TorsorComponents& TorsorComponents::operator+=(const TorsorComponents& other) {
  T += other.T;
  for (std::size_t g = 0; g < J.size(); ++g) J[g] += other.J[g];
  return *this;
}

TorsorComponents& TorsorComponents::operator*=(double s) {
  T *= s;
  for (auto& j : J) j *= s;
  return *this;
}

Vec4 MediumField::position(const VecX& xi) const {
  if (!embedding) throw Error("medium field has no embedding");
  return embedding(xi);
}

MatX MediumField::tangent(const VecX& xi) const {
  if (tangent_map) return tangent_map(xi);
  MatX U(4, chart_dim());
  const auto X = [&](const VecX& y) -> Vec4 { return position(y); };
  for (int g = 0; g < chart_dim(); ++g) U.col(g) = partial(X, xi, g, differences, domain);
  return U;
}

TorsorComponents MediumField::components(const VecX& xi) const {
  if (!torsor) throw Error("medium field has no torsor components");
  TorsorComponents c = torsor(xi);
  if (c.T.rows() != chart_dim() || c.T.cols() != 4 ||
      static_cast<int>(c.J.size()) != chart_dim())
    throw Error("torsor components have the wrong shape for the medium dimension");
  for (std::size_t g = 0; g < c.J.size(); ++g) {
    const double scale = std::max(1.0, max_abs(c.J[g]));
    if (max_abs(c.J[g] + c.J[g].transpose()) > 1e-12 * scale) {
      std::ostringstream msg;
      msg << "J component " << g << " is not skew in its last two indices";
      throw Error(msg.str());
    }
  }
  return c;
}

std::pair<Vec4, Mat4> MediumField::divergence_of_components(const VecX& xi) const {
  Vec4 dT = Vec4::Zero();
  Mat4 dJ = Mat4::Zero();
  const int n = chart_dim();
  if (torsor_derivative) {
    const auto d = torsor_derivative(xi);
    for (int g = 0; g < n; ++g) {
      dT += d[g].T.row(g).transpose();
      dJ += d[g].J[g];
    }
    return {dT, dJ};
  }
  for (int g = 0; g < n; ++g) {
    const auto packed = [&](const VecX& y) -> VecX {
      const TorsorComponents c = torsor(y);
      VecX out(20);
      out.head<4>() = c.T.row(g).transpose();
      out.tail<16>() = Eigen::Map<const VecX>(c.J[g].data(), 16);
      return out;
    };
    const VecX d = partial(packed, xi, g, differences, domain);
    dT += d.head<4>();
    dJ += Eigen::Map<const Mat4>(d.tail<16>().data());
  }
  return {dT, dJ};
}

MediumField identity_medium(std::function<Mat4(const Vec4&)> stress_mass,
                            std::function<std::vector<Mat4>(const Vec4&)> moments) {
  MediumField f;
  f.dim = 3;
  f.embedding = [](const VecX& xi) -> Vec4 { return Vec4(xi); };
  f.tangent_map = [](const VecX&) -> MatX { return Mat4::Identity(); };
  f.torsor = [stress_mass, moments](const VecX& xi) {
    const Vec4 X(xi);
    TorsorComponents c = TorsorComponents::zero(3);
    c.T = stress_mass(X).transpose();  // ^gamma T^beta = T^{beta gamma}
    if (moments) {
      auto J = moments(X);
      if (J.size() != 4) throw Error("moment field must supply four J components");
      for (std::size_t g = 0; g < 4; ++g) c.J[g] = J[g];
    }
    return c;
  };
  return f;
}

// --- Rods --------------------------------------------------------------------

Vec3 Curve1D::n(double t, double s) const {
  Vec3 d;
  if (unit_tangent) {
    d = unit_tangent(t, s);
  } else {
    const double h = differences.step_for(s);
    d = (psi(t, s + h) - psi(t, s - h)) / (2.0 * h);
  }
  if (d.norm() < 1e-9) {
    std::ostringstream msg;
    msg << "degenerate rod tangent at t=" << t << ", s=" << s;
    throw DegenerateTangent(msg.str());
  }
  return d;
}

double Curve1D::v_t(double t, double s) const { return v(t, s).dot(n(t, s)); }

double Curve1D::arclength_defect(double t, double s) const { return std::abs(n(t, s).norm() - 1.0); }

namespace {

Vec3 parameter_derivative(const std::function<Vec3(double, double)>& gamma, double t, double u) {
  const double h = 1e-6 * std::max(1.0, std::abs(u));
  return (gamma(t, u + h) - gamma(t, u - h)) / (2.0 * h);
}

}  // namespace

Curve1D Curve1D::arclength_reparameterized(std::function<Vec3(double, double)> gamma,
                                           std::function<Vec3(double, double)> velocity,
                                           double u_ref) {
  using boost::math::quadrature::gauss_kronrod;
  auto speed = [gamma](double t, double u) { return parameter_derivative(gamma, t, u).norm(); };
  auto arclength = [speed, u_ref](double t, double u) {
    if (u == u_ref) return 0.0;
    return gauss_kronrod<double, 15>::integrate([&](double w) { return speed(t, w); }, u_ref, u,
                                                15, 1e-8);
  };
  // Newton on s(u) = s_target; ds/du = |gamma_u|.
  auto parameter_of = [speed, arclength, u_ref](double t, double s) {
    double sp = speed(t, u_ref);
    if (sp < 1e-9) throw DegenerateTangent("curve parameter speed vanishes at the reference point");
    double u = u_ref + s / sp;
    for (int it = 0; it < 60; ++it) {
      sp = speed(t, u);
      if (sp < 1e-9) throw DegenerateTangent("curve parameter speed vanishes");
      const double du = (arclength(t, u) - s) / sp;
      u -= du;
      if (std::abs(du) < 1e-13 * std::max(1.0, std::abs(u))) break;
    }
    return u;
  };

  Curve1D c;
  c.psi = [gamma, parameter_of](double t, double s) { return gamma(t, parameter_of(t, s)); };
  c.velocity = [velocity, parameter_of](double t, double s) {
    return velocity(t, parameter_of(t, s));
  };
  c.unit_tangent = [gamma, parameter_of](double t, double s) {
    return parameter_derivative(gamma, t, parameter_of(t, s)).normalized().eval();
  };
  return c;
}

Mat42 tangent_map_1d(const Curve1D& c, double t, double s) {
  const Vec3 n = c.n(t, s);
  const Vec3 v = c.v(t, s);
  Mat42 U = Mat42::Zero();
  U(0, 0) = 1.0;
  U.block<3, 1>(1, 0) = v - v.dot(n) * n;
  U.block<3, 1>(1, 1) = n;
  return U;
}

Mat24 projector_1d(const Curve1D& c, double t, double s) {
  Mat24 P = Mat24::Zero();
  P(0, 0) = 1.0;
  P.block<1, 3>(1, 1) = c.n(t, s).transpose();
  return P;
}

Mat24 ForceMass1D::T() const {
  Mat24 out;
  out(0, 0) = rho_l;
  out.block<1, 3>(0, 1) = rho_l * v.transpose();
  out(1, 0) = rho_l * v_t;
  out.block<1, 3>(1, 1) = (rho_l * v_t * v - F).transpose();
  return out;
}

ForceMass1D ForceMass1D::from_T(const Mat24& T) {
  ForceMass1D f;
  f.rho_l = T(0, 0);
  if (f.rho_l == 0.0) throw NonpositiveMass("force-mass tensor with zero linear density");
  f.v = T.block<1, 3>(0, 1).transpose() / f.rho_l;
  f.v_t = T(1, 0) / f.rho_l;
  f.F = f.rho_l * f.v_t * f.v - T.block<1, 3>(1, 1).transpose();
  return f;
}

MediumField rod_medium(const Curve1D& curve, std::function<ForceMass1D(double, double)> force_mass,
                       std::function<std::array<Mat4, 2>(double, double)> moments) {
  MediumField f;
  f.dim = 1;
  f.differences = curve.differences;
  f.embedding = [curve](const VecX& xi) { return spacetime(xi(0), curve.position(xi(0), xi(1))); };
  f.tangent_map = [curve](const VecX& xi) -> MatX { return tangent_map_1d(curve, xi(0), xi(1)); };
  f.torsor = [force_mass, moments](const VecX& xi) {
    TorsorComponents c = TorsorComponents::zero(1);
    c.T = force_mass(xi(0), xi(1)).T();
    if (moments) {
      const auto J = moments(xi(0), xi(1));
      c.J[0] = J[0];
      c.J[1] = J[1];
    }
    return c;
  };
  return f;
}

// --- Cauchy ------------------------------------------------------------------

Mat4 assemble_cauchy_T(double rho, const Vec3& v, const Mat3& sigma) {
  Mat4 T;
  T(0, 0) = rho;
  T.block<1, 3>(0, 1) = rho * v.transpose();
  T.block<3, 1>(1, 0) = rho * v;
  T.block<3, 3>(1, 1) = rho * v * v.transpose() - sigma;
  return T;
}

MediumField cauchy_medium(const CauchyFields& fields) {
  return identity_medium([fields](const Vec4& X) {
    const double t = X(0);
    const Vec3 x = X.tail<3>();
    return assemble_cauchy_T(fields.rho(t, x), fields.v(t, x), fields.sigma(t, x));
  });
}

// --- Shells ------------------------------------------------------------------

namespace {

Vec2 shifted(const Vec2& th, int a, double d) {
  Vec2 out = th;
  out(a) += d;
  return out;
}

}  // namespace

Mat32 ShellField::pi(double t, const Vec2& th) const {
  if (tangents) return tangents(t, th);
  Mat32 out;
  for (int a = 0; a < 2; ++a) {
    const double h = step(th(a));
    out.col(a) = (x(t, shifted(th, a, h)) - x(t, shifted(th, a, -h))) / (2.0 * h);
  }
  return out;
}

Vec3 ShellField::n(double t, const Vec2& th) const {
  if (normal) return normal(t, th);
  const Mat32 p = pi(t, th);
  const Vec3 cr = p.col(0).cross(p.col(1));
  if (cr.norm() < 1e-12) throw DegenerateTangent("shell tangents are parallel");
  return cr.normalized();
}

Mat2 ShellField::first_form(double t, const Vec2& th) const {
  const Mat32 p = pi(t, th);
  return p.transpose() * p;
}

Mat23 ShellField::c(double t, const Vec2& th) const {
  const Mat32 p = pi(t, th);
  const Mat2 a = p.transpose() * p;
  if (a.determinant() < 1e-12) {
    std::ostringstream msg;
    msg << "shell first fundamental form is singular (det a = " << a.determinant() << ")";
    throw SingularMetric(msg.str());
  }
  return a.inverse() * p.transpose();
}

std::array<Mat32, 2> ShellField::dpi_dtheta(double t, const Vec2& th) const {
  std::array<Mat32, 2> out;
  if (tangents) {
    for (int c = 0; c < 2; ++c) {
      const double h = step(th(c));
      out[c] = (tangents(t, shifted(th, c, h)) - tangents(t, shifted(th, c, -h))) / (2.0 * h);
    }
    return out;
  }
  // Second differences of x; the mixed entry is shared so the result is symmetric.
  const Vec3 x0 = x(t, th);
  for (int b = 0; b < 2; ++b) {
    const double hb = nested_step(th(b));
    out[b].col(b) = (x(t, shifted(th, b, hb)) - 2.0 * x0 + x(t, shifted(th, b, -hb))) / (hb * hb);
  }
  const double h0 = nested_step(th(0));
  const double h1 = nested_step(th(1));
  auto at = [&](double d0, double d1) { return x(t, Vec2(th(0) + d0, th(1) + d1)); };
  const Vec3 mixed = (at(h0, h1) - at(h0, -h1) - at(-h0, h1) + at(-h0, -h1)) / (4.0 * h0 * h1);
  out[0].col(1) = mixed;
  out[1].col(0) = mixed;
  return out;
}

Mat32 ShellField::dpi_dt(double t, const Vec2& th) const {
  if (tangents) {
    const double h = step(t);
    return (tangents(t + h, th) - tangents(t - h, th)) / (2.0 * h);
  }
  Mat32 out;
  const double ht = nested_step(t);
  for (int b = 0; b < 2; ++b) {
    const double hb = nested_step(th(b));
    out.col(b) = (x(t + ht, shifted(th, b, hb)) - x(t + ht, shifted(th, b, -hb)) -
                  x(t - ht, shifted(th, b, hb)) + x(t - ht, shifted(th, b, -hb))) /
                 (4.0 * ht * hb);
  }
  return out;
}

Mat2 ShellField::second_form(double t, const Vec2& th) const {
  const auto d = dpi_dtheta(t, th);
  const Vec3 nn = n(t, th);
  Mat2 b;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) b(a, c) = nn.dot(d[a].col(c));
  return b;
}

Vec3 ShellField::velocity(double t, const Vec2& th) const {
  const double h = step(t);
  return (x(t + h, th) - x(t - h, th)) / (2.0 * h);
}

Vec3 ShellField::acceleration(double t, const Vec2& th) const {
  const double h = nested_step(t);
  return (x(t + h, th) - 2.0 * x(t, th) + x(t - h, th)) / (h * h);
}

Vec3 ShellField::w(double t, const Vec2& th) const {
  const double h = normal ? step(t) : nested_step(t);
  return (n(t + h, th) - n(t - h, th)) / (2.0 * h);
}

Vec3 ShellField::poisson_vector(double t) const {
  if (!R) return Vec3::Zero();
  const double h = step(t);
  const Mat3 dR = (R(t + h) - R(t - h)) / (2.0 * h);
  return axial(dR * R(t).transpose());
}

double ShellField::normal_defect(double t, const Vec2& th) const {
  const Mat32 p = pi(t, th);
  const Vec3 nn = n(t, th);
  return std::max({std::abs(p.col(0).dot(nn)), std::abs(p.col(1).dot(nn)),
                   std::abs(nn.dot(nn) - 1.0)});
}

ShellChristoffels shell_christoffels(const ShellField& sf, const GalileanConnection& conn, double t,
                                     double theta1, double theta2) {
  const Vec2 th(theta1, theta2);
  const Vec3 x = sf.position(t, th);
  const Vec3 g = conn.gravity(t, x);
  const Vec3 Om = conn.spin(t, x);
  const Mat3 W = skew(Om);
  const Mat32 p = sf.pi(t, th);
  const Mat23 c = sf.c(t, th);
  const Vec3 n = sf.n(t, th);
  const auto dpi = sf.dpi_dtheta(t, th);
  const Mat32 rate = sf.dpi_dt(t, th) + W * p;

  ShellChristoffels out;
  out.G_a00 = -c * g;
  out.G_300 = -n.dot(g);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int cc = 0; cc < 2; ++cc) out.G_abc[a](b, cc) = c.row(a).dot(dpi[cc].col(b));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out.b(a, b) = n.dot(dpi[a].col(b));
  out.Phi_ab = c * rate;
  out.Phi_a = c * (sf.w(t, th) + Om.cross(n));
  out.Phi_b = (n.transpose() * rate).transpose();
  return out;
}

}  // namespace torsor
