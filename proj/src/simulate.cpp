#include "torsor/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace torsor {

PointwiseState PointwiseState::from_motion(double t, double m, const Vec3& x, const Vec3& v,
                                           const Vec3& l0) {
  PointwiseState s;
  s.t = t;
  s.m = m;
  s.x = x;
  s.p = m * v;
  s.q = m * x;
  s.l0 = l0;
  s.l = l0 + x.cross(s.p);
  return s;
}

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("integrator dt must be positive");
  if (!std::isfinite(t_end)) throw Error("integrator t_end must be finite");
  if (output_stride < 1) throw Error("integrator output_stride must be at least 1");
}

namespace {

struct Rates {
  Vec3 x, p, q, l, l0;
};

Rates rates(double t, double m, const Vec3& x, const Vec3& p, const Vec3& l0,
            const GalileanConnection& conn) {
  const Vec3 Om = conn.spin(t, x);
  const Vec3 force = m * conn.gravity(t, x) - 2.0 * Om.cross(p);
  return {p / m, force, p, -Om.cross(l0) + x.cross(force), -Om.cross(l0)};
}

PointwiseState rk4(const PointwiseState& s, const GalileanConnection& conn, double h) {
  if (!(s.m > 0.0)) throw NonpositiveMass("pointwise object with nonpositive mass");
  const auto shifted = [&](const Rates& k, double c) {
    PointwiseState y = s;
    y.x += c * k.x;
    y.p += c * k.p;
    y.q += c * k.q;
    y.l += c * k.l;
    y.l0 += c * k.l0;
    return y;
  };
  const auto eval = [&](const PointwiseState& y, double t) {
    return rates(t, y.m, y.x, y.p, y.l0, conn);
  };
  const Rates k1 = eval(s, s.t);
  const Rates k2 = eval(shifted(k1, 0.5 * h), s.t + 0.5 * h);
  const Rates k3 = eval(shifted(k2, 0.5 * h), s.t + 0.5 * h);
  const Rates k4 = eval(shifted(k3, h), s.t + h);
  PointwiseState out = s;
  const double c = h / 6.0;
  out.x += c * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
  out.p += c * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
  out.q += c * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
  out.l += c * (k1.l + 2.0 * k2.l + 2.0 * k3.l + k4.l);
  out.l0 += c * (k1.l0 + 2.0 * k2.l0 + 2.0 * k3.l0 + k4.l0);
  out.t = s.t + h;
  return out;
}

}  // namespace

PointwiseState step(const PointwiseState& s, const GalileanConnection& conn,
                    const IntegratorConfig& cfg) {
  cfg.validate();
  return rk4(s, conn, cfg.dt);
}

Trajectory run_scenario(const PointwiseState& init, const GalileanConnection& conn,
                        const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(init.m > 0.0)) throw NonpositiveMass("pointwise object with nonpositive mass");
  Trajectory traj;
  const auto record_drift = [&](const PointwiseState& s) {
    traj.drift.position_quantity = std::max(traj.drift.position_quantity, (s.q - s.m * s.x).norm());
    traj.drift.angular = std::max(traj.drift.angular, (s.l - s.l0 - s.x.cross(s.p)).norm());
  };
  traj.samples.push_back(init);
  record_drift(init);

  const double t0 = init.t;
  const double span = cfg.t_end - t0;
  const long n = span <= 0.0 ? 0 : static_cast<long>(std::ceil(span / cfg.dt - 1e-9));
  PointwiseState s = init;
  for (long k = 1; k <= n; ++k) {
    const double t_next = k == n ? cfg.t_end : t0 + static_cast<double>(k) * cfg.dt;
    s = rk4(s, conn, t_next - s.t);
    s.t = t_next;
    record_drift(s);
    if (k % cfg.output_stride == 0 || k == n) traj.samples.push_back(s);
  }
  traj.drift.mass = std::abs(s.m - init.m);
  return traj;
}

ConvergenceResult observed_order(const std::function<double(double)>& error,
                                 std::vector<double> steps, double floor) {
  if (steps.size() < 3) throw Error("convergence check needs at least three step sizes");
  std::sort(steps.begin(), steps.end(), std::greater<>());
  ConvergenceResult out;
  out.steps = steps;
  for (double h : steps) out.errors.push_back(std::abs(error(h)));

  if (std::all_of(out.errors.begin(), out.errors.end(), [&](double e) { return e < floor; })) {
    out.at_floor = true;
    return out;
  }
  for (std::size_t i = 1; i < out.errors.size(); ++i) {
    if (!(out.errors[i] < out.errors[i - 1])) {
      std::ostringstream msg;
      msg << "error did not decrease from h=" << steps[i - 1] << " (" << out.errors[i - 1]
          << ") to h=" << steps[i] << " (" << out.errors[i] << ")";
      throw NonMonotoneError(msg.str());
    }
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double x = std::log(steps[i]);
    const double y = std::log(out.errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

}  // namespace torsor
