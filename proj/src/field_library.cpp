#include "torsor/field_library.hpp"

#include "torsor/grid_field.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <filesystem>
#include <map>
#include <memory>

namespace torsor::fields {

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

Mat3 rotation_about(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis).toRotationMatrix();
}

void require_no_spin(const ConnectionSpec& c, const std::string& path, const std::string& field) {
  if (!c.Omega.isZero(0.0) || c.compensate)
    throw ConfigError(join(path, "type"), "field '" + field + "' needs a connection without spin");
}

void require_uniform(const ConnectionSpec& c, const std::string& path, const std::string& field) {
  if (c.compensate)
    throw ConfigError(join(path, "type"),
                      "field '" + field + "' needs uniform gravity (compensate_spin off)");
}

std::string type_of(const json& spec, const std::string& path) {
  if (!spec.is_object()) throw ConfigError(path, "expected an object");
  if (!spec.contains("type")) throw ConfigError(join(path, "type"), "missing field type");
  if (!spec.at("type").is_string()) throw ConfigError(join(path, "type"), "expected a string");
  return spec.at("type").get<std::string>();
}

struct AdvectedWave {
  double rho0, amp, k, shear, p0;
  Vec3 v0, dir;
  double b_norm;

  AdvectedWave(const json& spec, const ConnectionSpec& c, const std::string& path) {
    rho0 = number(spec, "rho", path, 2.0);
    amp = number(spec, "amplitude", path, 0.3);
    k = number(spec, "wavenumber", path, 1.5);
    shear = number(spec, "shear", path, 0.2);
    p0 = number(spec, "p0", path, 10.0);
    v0 = vec3(spec, "velocity", path, Vec3(0.4, -0.2, 0.1));
    if (std::abs(amp) >= rho0) throw ConfigError(join(path, "amplitude"), "density must stay positive");
    const Vec3 b = c.g - 2.0 * c.Omega.cross(v0);
    b_norm = b.norm();
    dir = b_norm > 0.0 ? Vec3(b / b_norm) : Vec3::UnitX();
  }
  double s(double t, const Vec3& x) const { return dir.dot(x - v0 * t); }
  double rho(double t, const Vec3& x) const { return rho0 + amp * std::sin(k * s(t, x)); }
  Mat3 sigma(double t, const Vec3& x) const {
    const double sv = s(t, x);
    const double p = p0 + b_norm * (rho0 * sv - amp * std::cos(k * sv) / k);
    Mat3 out = -p * Mat3::Identity();
    out(0, 1) = out(1, 0) = shear * std::sin(k * x(2));
    return out;
  }
};

}  // namespace

GalileanConnection ConnectionSpec::connection() const {
  if (!compensate) return GalileanConnection::uniform(g, Omega);
  const Vec3 g0 = g, O = Omega;
  return GalileanConnection{[g0, O](double, const Vec3& x) { return Vec3(g0 - O.cross(O.cross(x))); },
                            [O](double, const Vec3&) { return O; }};
}

ConnectionSpec connection_spec(const json& j, const std::string& key) {
  if (!j.is_object()) throw ConfigError(key, "expected an object");
  for (const auto& [name, _] : j.items())
    if (name != "gravity" && name != "spin" && name != "compensate_spin")
      throw ConfigError(join(key, name), "unknown connection entry");
  ConnectionSpec c;
  c.g = vec3(j, "gravity", key, Vec3::Zero());
  c.Omega = vec3(j, "spin", key, Vec3::Zero());
  if (j.contains("compensate_spin")) {
    if (!j.at("compensate_spin").is_boolean())
      throw ConfigError(join(key, "compensate_spin"), "expected true or false");
    c.compensate = j.at("compensate_spin").get<bool>();
  }
  return c;
}

double number(const json& j, const std::string& key, const std::string& path, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(join(path, key), "expected a finite number");
  return d;
}

double required_number(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(join(path, key), "missing");
  return number(j, key, path, 0.0);
}

VecX vector(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(join(path, key), "missing");
  const json& v = j.at(key);
  if (!v.is_array()) throw ConfigError(join(path, key), "expected an array of numbers");
  VecX out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(join(path, key), "expected an array of numbers");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

Vec3 vec3(const json& j, const std::string& key, const std::string& path, const Vec3& fallback) {
  if (!j.contains(key)) return fallback;
  const VecX v = vector(j, key, path);
  if (v.size() != 3) throw ConfigError(join(path, key), "expected 3 numbers");
  return v;
}

MatX matrix(const json& j, const std::string& key, const std::string& path, int rows, int cols,
            const MatX& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  const auto bad = [&]() {
    return ConfigError(join(path, key), "expected a " + std::to_string(rows) + "x" +
                                            std::to_string(cols) + " array of rows");
  };
  if (!v.is_array() || static_cast<int>(v.size()) != rows) throw bad();
  MatX out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!v[r].is_array() || static_cast<int>(v[r].size()) != cols) throw bad();
    for (int c = 0; c < cols; ++c) {
      if (!v[r][c].is_number()) throw bad();
      out(r, c) = v[r][c].get<double>();
    }
  }
  return out;
}

// --- Cauchy ------------------------------------------------------------------

CauchyFields cauchy_field(const json& spec, const ConnectionSpec& c, const std::string& base_dir,
                          const std::string& path) {
  const std::string type = type_of(spec, path);
  if (type == "hydrostatic") {
    require_uniform(c, path, type);
    const double rho = number(spec, "rho", path, 1000.0);
    const double p0 = number(spec, "p0", path, 1e5);
    const Vec3 g = c.g;
    return {[rho](double, const Vec3&) { return rho; },
            [](double, const Vec3&) { return Vec3::Zero().eval(); },
            [=](double, const Vec3& x) { return Mat3(-(p0 + rho * g.dot(x)) * Mat3::Identity()); }};
  }
  if (type == "advected_wave") {
    require_uniform(c, path, type);
    const AdvectedWave w(spec, c, path);
    return {[w](double t, const Vec3& x) { return w.rho(t, x); },
            [w](double, const Vec3&) { return w.v0; },
            [w](double t, const Vec3& x) { return w.sigma(t, x); }};
  }
  if (type == "grid") {
    if (!spec.contains("file") || !spec.at("file").is_string())
      throw ConfigError(join(path, "file"), "expected a file name");
    std::filesystem::path file = spec.at("file").get<std::string>();
    if (file.is_relative()) file = std::filesystem::path(base_dir) / file;
    std::shared_ptr<GridField> grid;
    try {
      grid = std::make_shared<GridField>(GridField::from_csv(file.string(), 4));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(join(path, "file"), e.what());
    }
    const std::vector<std::string> wanted{"rho", "v1", "v2", "v3", "s11", "s12", "s13", "s22", "s23", "s33"};
    std::map<std::string, int> col;
    const auto& names = grid->column_names();
    for (std::size_t i = 0; i < names.size(); ++i) col[names[i]] = static_cast<int>(i);
    std::array<int, 10> idx{};
    for (std::size_t i = 0; i < wanted.size(); ++i) {
      const auto it = col.find(wanted[i]);
      if (it == col.end()) throw ConfigError(join(path, "file"), "grid lacks column '" + wanted[i] + "'");
      idx[i] = it->second;
    }
    const auto at = [grid](double t, const Vec3& x) { return grid->operator()(VecX(spacetime(t, x))); };
    return {[at, idx](double t, const Vec3& x) { return at(t, x)(idx[0]); },
            [at, idx](double t, const Vec3& x) {
              const VecX v = at(t, x);
              return Vec3(v(idx[1]), v(idx[2]), v(idx[3]));
            },
            [at, idx](double t, const Vec3& x) {
              const VecX v = at(t, x);
              Mat3 s;
              s << v(idx[4]), v(idx[5]), v(idx[6]), v(idx[5]), v(idx[7]), v(idx[8]), v(idx[6]),
                  v(idx[8]), v(idx[9]);
              return s;
            }};
  }
  throw ConfigError(join(path, "type"), "unknown Cauchy field '" + type + "'");
}

// --- Rods --------------------------------------------------------------------

RodFields rod_field(const json& spec, const ConnectionSpec& c, const std::string& path) {
  const std::string type = type_of(spec, path);
  const double rho = number(spec, "rho_l", path, 1.0);
  RodFields rod;
  rod.rho_l = [rho](double, double) { return rho; };

  if (type == "cantilever") {
    require_uniform(c, path, type);
    Vec3 d = vec3(spec, "axis", path, Vec3::UnitX());
    if (d.norm() < 1e-12) throw ConfigError(join(path, "axis"), "axis must be nonzero");
    d.normalize();
    const Vec3 o = vec3(spec, "origin", path, Vec3::Zero());
    const Vec3 F0 = vec3(spec, "F0", path, Vec3::Zero());
    const Vec3 M0 = vec3(spec, "M0", path, Vec3::Zero());
    const Vec3 g = c.g;
    rod.curve.psi = [o, d](double, double s) { return Vec3(o + s * d); };
    rod.curve.unit_tangent = [d](double, double) { return d; };
    rod.curve.velocity = [](double, double) { return Vec3::Zero().eval(); };
    rod.F = [=](double, double s) { return Vec3(F0 - rho * g * s); };
    rod.M_star = [=](double, double s) { return Vec3(M0 + d.cross(F0 * s - 0.5 * rho * g * s * s)); };
    return rod;
  }
  if (type == "helix") {
    require_uniform(c, path, type);
    const double a = number(spec, "radius", path, 0.5);
    const double b = number(spec, "pitch", path, 0.2);
    if (!(a > 0.0)) throw ConfigError(join(path, "radius"), "must be positive");
    const double k = std::sqrt(a * a + b * b);
    const Vec3 F0 = vec3(spec, "F0", path, Vec3::Zero());
    const Vec3 M0 = vec3(spec, "M0", path, Vec3::Zero());
    const Vec3 g = c.g;
    // Helix given in a non-arclength parameter u; the curve is reparameterized.
    const auto gamma = [a, b](double, double u) {
      return Vec3(a * std::cos(u), a * std::sin(u), b * u);
    };
    rod.curve = Curve1D::arclength_reparameterized(
        gamma, [](double, double) { return Vec3::Zero().eval(); }, 0.0);
    const auto psi = [a, b, k](double s) {
      return Vec3(a * std::cos(s / k), a * std::sin(s / k), b * s / k);
    };
    // Primitive of psi in s.
    const auto Psi = [a, b, k](double s) {
      return Vec3(a * k * std::sin(s / k), -a * k * std::cos(s / k), 0.5 * b * s * s / k);
    };
    rod.F = [=](double, double s) { return Vec3(F0 - rho * g * s); };
    rod.M_star = [=](double, double s) {
      return Vec3(M0 + psi(s).cross(F0 - rho * g * s) + rho * Psi(s).cross(g));
    };
    return rod;
  }
  if (type == "spinning_rod") {
    if (!c.flat() || c.compensate)
      throw ConfigError(join(path, "type"), "field 'spinning_rod' needs a flat connection");
    const double w = number(spec, "omega", path, 1.5);
    const double L = number(spec, "length", path, 2.0);
    rod.curve.psi = [w](double t, double s) { return Vec3(rotation_about(Vec3::UnitZ(), w * t) * Vec3(s, 0, 0)); };
    rod.curve.velocity = [w](double t, double s) {
      return Vec3(rotation_about(Vec3::UnitZ(), w * t) * Vec3(0, w * s, 0));
    };
    rod.F = [=](double t, double s) {
      return Vec3(rotation_about(Vec3::UnitZ(), w * t) * Vec3(0.5 * rho * w * w * (L * L - s * s), 0, 0));
    };
    rod.q = [rho, psi = rod.curve.psi](double t, double s) { return Vec3(rho * psi(t, s)); };
    return rod;
  }
  throw ConfigError(join(path, "type"), "unknown rod field '" + type + "'");
}

// --- Shells ------------------------------------------------------------------

ShellSetup shell_field(const json& spec, const ConnectionSpec& c, const std::string& path) {
  const std::string type = type_of(spec, path);
  ShellSetup out;
  out.geometry.h = number(spec, "h", path, 0.01);
  if (!(out.geometry.h > 0.0)) throw ConfigError(join(path, "h"), "must be positive");

  if (type == "flat_plate") {
    require_uniform(c, path, type);
    const double rho = number(spec, "rho_s", path, 20.0);
    const Mat2 N0 = matrix(spec, "N0", path, 2, 2, Mat2::Zero());
    const Mat2 M0 = matrix(spec, "M0", path, 2, 2, Mat2::Zero());
    if (std::abs(N0(0, 1) - N0(1, 0)) > 0.0 || std::abs(M0(0, 1) - M0(1, 0)) > 0.0)
      throw ConfigError(join(path, "N0"), "N0 and M0 must be symmetric");
    const Vec3 g = c.g;
    out.geometry.x = [](double, const Vec2& th) { return Vec3(th(0), th(1), 0.0); };
    out.geometry.tangents = [](double, const Vec2&) {
      Mat32 p;
      p << 1, 0, 0, 1, 0, 0;
      return p;
    };
    out.geometry.normal = [](double, const Vec2&) { return Vec3::UnitZ().eval(); };
    out.fields.rho_s = [rho](double, const Vec2&) { return rho; };
    out.fields.N = [=](double, const Vec2& th) {
      Mat2 N = N0;
      N(0, 0) -= rho * g(0) * th(0);
      N(1, 1) -= rho * g(1) * th(1);
      return N;
    };
    out.fields.Q = [=](double, const Vec2& th) { return Vec2(-rho * g(2) * th(0), 0.0); };
    out.fields.M = [=](double, const Vec2& th) {
      Mat2 M = M0;
      M(0, 0) -= 0.5 * rho * g(2) * th(0) * th(0);
      return M;
    };
    return out;
  }
  if (type == "breathing_sphere") {
    require_no_spin(c, path, type);
    const double rho0 = number(spec, "rho_s", path, 20.0);
    const double R0 = number(spec, "radius", path, 1.0);
    const double eps = number(spec, "amplitude", path, 0.1);
    const double nu = number(spec, "frequency", path, 2.0);
    if (!(R0 > 0.0)) throw ConfigError(join(path, "radius"), "must be positive");
    if (!(std::abs(eps) < 1.0)) throw ConfigError(join(path, "amplitude"), "must be below 1");
    const Vec3 g = c.g;
    const auto R = [=](double t) { return R0 * (1.0 + eps * std::sin(nu * t)); };
    const auto Rdd = [=](double t) { return -R0 * eps * nu * nu * std::sin(nu * t); };
    const auto S = [](const Vec2& th) {
      return Vec3(std::sin(th(0)) * std::cos(th(1)), std::sin(th(0)) * std::sin(th(1)), std::cos(th(0)));
    };
    const auto rho_s = [=](double t) { return rho0 * R0 * R0 / (R(t) * R(t)); };
    out.geometry.x = [=](double t, const Vec2& th) { return Vec3(0.5 * g * t * t + R(t) * S(th)); };
    out.geometry.tangents = [=](double t, const Vec2& th) {
      const double s0 = std::sin(th(0)), c0 = std::cos(th(0)), s1 = std::sin(th(1)), c1 = std::cos(th(1));
      Mat32 p;
      p << c0 * c1, -s0 * s1, c0 * s1, s0 * c1, -s0, 0.0;
      return Mat32(R(t) * p);
    };
    out.geometry.normal = [S](double, const Vec2& th) { return S(th); };
    out.fields.rho_s = [rho_s](double t, const Vec2&) { return rho_s(t); };
    // Isotropic membrane force carrying the radial acceleration: N^{ab} = N0 a^{ab}.
    out.fields.N = [=](double t, const Vec2& th) {
      const double N0 = -0.5 * rho_s(t) * R(t) * Rdd(t);
      const double r2 = R(t) * R(t);
      const double s0 = std::sin(th(0));
      Mat2 N = Mat2::Zero();
      N(0, 0) = N0 / r2;
      N(1, 1) = N0 / (r2 * s0 * s0);
      return N;
    };
    out.fields.Q = [](double, const Vec2&) { return Vec2::Zero().eval(); };
    out.fields.M = [](double, const Vec2&) { return Mat2::Zero().eval(); };
    return out;
  }
  throw ConfigError(join(path, "type"), "unknown shell field '" + type + "'");
}

// --- 3D Cosserat ---------------------------------------------------------------

Cosserat3DState cosserat_field(const json& spec, const ConnectionSpec& c, const std::string& path) {
  const std::string type = type_of(spec, path);
  Cosserat3DState s;
  if (type == "cauchy_wave") {
    require_uniform(c, path, type);
    const AdvectedWave w(spec, c, path);
    s.T = [w](const Vec4& X) {
      const Vec3 x = X.tail<3>();
      return assemble_cauchy_T(w.rho(X(0), x), w.v0, w.sigma(X(0), x));
    };
    return s;
  }
  if (type == "couple_stress") {
    require_no_spin(c, path, type);
    const double rho = number(spec, "rho", path, 1.5);
    const double p0 = number(spec, "p0", path, 10.0);
    const double cs = number(spec, "couple", path, 0.4);
    const double k = number(spec, "wavenumber", path, 1.3);
    const double A = number(spec, "q_amplitude", path, 0.2);
    const double wq = number(spec, "q_frequency", path, 2.0);
    if (k == 0.0) throw ConfigError(join(path, "wavenumber"), "must be nonzero");
    if (wq == 0.0) throw ConfigError(join(path, "q_frequency"), "must be nonzero");
    const Vec3 g = c.g;
    s.T = [=](const Vec4& X) {
      const Vec3 x = X.tail<3>();
      Mat3 sigma = -(p0 + rho * g.dot(x)) * Mat3::Identity();
      sigma(0, 1) -= 0.5 * cs * std::cos(k * x(2));
      sigma(1, 0) += 0.5 * cs * std::cos(k * x(2));
      Mat4 T = Mat4::Zero();
      T(0, 0) = rho;
      T.bottomRightCorner<3, 3>() = -sigma;
      return T;
    };
    s.q = [=](const Vec4& X) { return Vec3(A * std::sin(wq * X(0)), 0, 0); };
    s.l = [=](const Vec4& X) { return Vec3(-(A * std::cos(wq * X(0)) / wq) * Vec3::UnitX().cross(g)); };
    s.l_star = [=](const Vec4& X) {
      Mat3 m = Mat3::Zero();
      m(0, 0) = -A * wq * std::cos(wq * X(0)) * X(1);
      return m;
    };
    s.M_star = [=](const Vec4& X) {
      Mat3 m = Mat3::Zero();
      m(2, 2) = cs / k * std::sin(k * X(3));
      return m;
    };
    return s;
  }
  throw ConfigError(join(path, "type"), "unknown Cosserat field '" + type + "'");
}

// --- Pointwise references -----------------------------------------------------

std::function<PointwiseState(double)> pointwise_reference(const std::string& name,
                                                          const PointwiseState& init,
                                                          const ConnectionSpec& c,
                                                          const std::string& path) {
  const double t0 = init.t, m = init.m;
  const Vec3 x0 = init.x, v0 = init.v(), L0 = init.l0;
  if (name == "free" || name == "projectile") {
    if (!c.Omega.isZero(0.0) || c.compensate)
      throw ConfigError(path, "reference '" + name + "' needs a connection without spin");
    if (name == "free" && !c.g.isZero(0.0))
      throw ConfigError(path, "reference 'free' needs zero gravity");
    const Vec3 g = c.g;
    return [=](double t) {
      const double tau = t - t0;
      return PointwiseState::from_motion(t, m, x0 + v0 * tau + 0.5 * g * tau * tau, v0 + g * tau, L0);
    };
  }
  if (name == "spinning_frame" || name == "compensated") {
    if (!c.g.isZero(0.0)) throw ConfigError(path, "reference '" + name + "' needs zero uniform gravity");
    if (c.compensate != (name == "compensated"))
      throw ConfigError(path, name == "compensated" ? "reference 'compensated' needs compensate_spin"
                                                    : "reference 'spinning_frame' excludes compensate_spin");
    const double w = c.Omega.norm();
    if (w == 0.0) throw ConfigError(path, "reference '" + name + "' needs a nonzero spin");
    const Vec3 e = c.Omega / w, Om = c.Omega;
    const bool oscillator = name == "spinning_frame";
    // Observer coordinates y = R(w t) x, in which the motion is either a planar
    // isotropic oscillator (no centrifugal field) or a straight line.
    const Vec3 y0 = x0, yd0 = v0 + Om.cross(x0);
    return [=](double t) {
      const double tau = t - t0;
      Vec3 y, yd;
      if (oscillator) {
        const Vec3 par = e.dot(y0) * e, dpar = e.dot(yd0) * e;
        const double co = std::cos(w * tau), si = std::sin(w * tau);
        y = par + dpar * tau + (y0 - par) * co + (yd0 - dpar) * si / w;
        yd = dpar - (y0 - par) * w * si + (yd0 - dpar) * co;
      } else {
        y = y0 + yd0 * tau;
        yd = yd0;
      }
      const Mat3 back = rotation_about(e, -w * tau);
      return PointwiseState::from_motion(t, m, back * y, back * (yd - Om.cross(y)), back * L0);
    };
  }
  throw ConfigError(path, "unknown reference motion '" + name + "'");
}

}  // namespace torsor::fields
