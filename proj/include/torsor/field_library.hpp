#pragma once

// Named analytic fields used by the bundled scenarios. Every field is an exact
// solution of its balance equations for the connection it is built with, so a
// correct residual evaluator returns zero up to differencing error.

#include "torsor/balance.hpp"
#include "torsor/simulate.hpp"

#include <json.hpp>

#include <string>

namespace torsor {

/// Invalid scenario input; key is the JSON path of the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error("config error at '" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

namespace fields {

using json = nlohmann::json;

/// Uniform gravity and spin, optionally with the field -Omega × (Omega × x) added
/// to gravity (the spinning frame of an inertial observer).
struct ConnectionSpec {
  Vec3 g = Vec3::Zero();
  Vec3 Omega = Vec3::Zero();
  bool compensate = false;

  GalileanConnection connection() const;
  bool flat() const { return g.isZero(0.0) && Omega.isZero(0.0); }
};

/// Reads {"gravity": [3], "spin": [3], "compensate_spin": bool}; key is the JSON path.
ConnectionSpec connection_spec(const json& j, const std::string& key);

// Typed parameter access. Missing optional entries take the default; present
// entries of the wrong shape throw ConfigError naming key.key.
double number(const json& j, const std::string& key, const std::string& path, double fallback);
double required_number(const json& j, const std::string& key, const std::string& path);
Vec3 vec3(const json& j, const std::string& key, const std::string& path, const Vec3& fallback);
VecX vector(const json& j, const std::string& key, const std::string& path);
MatX matrix(const json& j, const std::string& key, const std::string& path, int rows, int cols,
            const MatX& fallback);

/// "hydrostatic" {rho, p0}; "advected_wave" {rho, amplitude, wavenumber, velocity, shear, p0};
/// "grid" {file} with columns t,x1,x2,x3,rho,v1,v2,v3,s11,s12,s13,s22,s23,s33.
CauchyFields cauchy_field(const json& spec, const ConnectionSpec& conn, const std::string& base_dir,
                          const std::string& path);

/// "cantilever" {rho_l, axis, origin, F0, M0}; "helix" {rho_l, radius, pitch, F0, M0};
/// "spinning_rod" {rho_l, omega, length} (flat connection only).
RodFields rod_field(const json& spec, const ConnectionSpec& conn, const std::string& path);

struct ShellSetup {
  ShellField geometry;
  ShellTorsorFields fields;
};

/// "flat_plate" {rho_s, h, N0, M0}; "breathing_sphere" {rho_s, h, radius, amplitude,
/// frequency} (no spin).
ShellSetup shell_field(const json& spec, const ConnectionSpec& conn, const std::string& path);

/// "cauchy_wave" (advected_wave parameters, zero J fields); "couple_stress" {rho, p0,
/// couple, wavenumber, q_amplitude, q_frequency} (no spin).
Cosserat3DState cosserat_field(const json& spec, const ConnectionSpec& conn,
                               const std::string& path);

/// Closed-form pointwise motion from init: "free" and "projectile" (no spin),
/// "spinning_frame" (no gravity, spin about any axis), "compensated" (compensate_spin).
std::function<PointwiseState(double)> pointwise_reference(const std::string& name,
                                                          const PointwiseState& init,
                                                          const ConnectionSpec& conn,
                                                          const std::string& path);

}  // namespace fields
}  // namespace torsor
