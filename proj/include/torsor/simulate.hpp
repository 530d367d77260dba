#pragma once

// Fixed-step RK4 integration of pointwise-object dynamics in a Galilean
// connection, and the h-refinement harness used by the residual checks.

#include "torsor/affine_algebra.hpp"
#include "torsor/connection.hpp"

#include <functional>
#include <vector>

namespace torsor {

/// t (s), m (kg), x (m), p (kg m/s), q (kg m), l (kg m^2/s), l0 (kg m^2/s).
/// l0 is integrated on its own (dl0/dt = -Omega × l0) so that l - l0 - x × p
/// measures the drift of the decomposition.
struct PointwiseState {
  double t = 0.0;
  double m = 1.0;
  Vec3 x = Vec3::Zero();
  Vec3 p = Vec3::Zero();
  Vec3 q = Vec3::Zero();
  Vec3 l = Vec3::Zero();
  Vec3 l0 = Vec3::Zero();

  /// Consistent state: q = m x, p = m v, l = l0 + x × p.
  static PointwiseState from_motion(double t, double m, const Vec3& x, const Vec3& v,
                                    const Vec3& l0);
  PointwiseTorsor torsor() const { return {m, p, q, l}; }
  Vec3 v() const { return p / m; }
};

struct IntegratorConfig {
  enum class Method { RK4 };
  Method method = Method::RK4;
  double dt = 1e-3;
  double t_end = 1.0;
  int output_stride = 1;

  /// Throws Error unless dt > 0, t_end finite and output_stride >= 1.
  void validate() const;
};

/// One RK4 step of size cfg.dt: xdot = p/m, pdot = m(g - 2 Omega × v), qdot = p,
/// ldot = -Omega × l0 + x × m(g - 2 Omega × v), l0dot = -Omega × l0. Mass is copied.
PointwiseState step(const PointwiseState& s, const GalileanConnection& conn,
                    const IntegratorConfig& cfg);

struct DriftReport {
  double mass = 0.0;           ///< |m_end - m_0|, exactly zero
  double position_quantity = 0.0;  ///< max over samples of |q - m x|
  double angular = 0.0;        ///< max over samples of |l - l0 - x × p|
};

struct Trajectory {
  std::vector<PointwiseState> samples;
  DriftReport drift;
};

/// Integrates from init.t to cfg.t_end; samples every output_stride steps plus the
/// final state. Step k lands on t0 + k dt; the last step is shortened to hit t_end.
Trajectory run_scenario(const PointwiseState& init, const GalileanConnection& conn,
                        const IntegratorConfig& cfg);

struct ConvergenceResult {
  std::vector<double> steps;
  std::vector<double> errors;
  double order = 0.0;
  /// All errors below the floor: slope not computed.
  bool at_floor = false;
};

/// Least-squares slope of log(error) against log(h). Needs at least three
/// steps. Throws NonMonotoneError when errors fail to decrease as h shrinks.
ConvergenceResult observed_order(const std::function<double(double)>& error,
                                 std::vector<double> steps, double floor = 1e-10);

}  // namespace torsor
