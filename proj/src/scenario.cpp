#include "torsor/scenario.hpp"

#include "torsor/quadrature.hpp"
#include "torsor/reduction.hpp"
#include "torsor/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>

namespace torsor::scenario {

namespace fs = std::filesystem;
using fields::ConnectionSpec;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string> kTopKeys{"schema",  "name",      "description", "exercises", "kind",
                                     "medium",  "connection", "field",      "points",    "point",
                                     "steps",   "initial",   "integrator",  "reference", "checks",
                                     "outputs", "seed"};

const std::map<std::string, std::set<std::string>> kMediaForKind{
    {"pointwise_sim", {"d0"}},
    {"residual_check", {"d1", "d2", "d3_cauchy", "d3_cosserat"}},
    {"reduction", {"d1", "d2"}},
    {"convergence", {"d1", "d2", "d3_cauchy", "d3_cosserat"}}};

const std::map<std::string, std::vector<std::string>> kRequired{
    {"pointwise_sim", {"connection", "initial", "integrator", "checks"}},
    {"residual_check", {"connection", "field", "points", "checks"}},
    {"reduction", {"field", "checks"}},
    {"convergence", {"connection", "field", "point", "steps", "checks"}}};

std::set<std::string> check_types(const std::string& kind, const std::string& medium) {
  if (kind == "pointwise_sim")
    return {"reference",   "mass_drift",  "position_quantity_drift", "angular_drift",
            "vertical_invariant", "l0_vertical", "l0_magnitude", "precession_rate"};
  if (kind == "residual_check") {
    if (medium == "d1") return {"residual", "statics"};
    if (medium == "d2") return {"residual", "identity_rows", "plate_recovery"};
    return {"residual"};
  }
  if (kind == "reduction") {
    if (medium == "d1") return {"linear_density", "spin_angular_momentum", "parity", "traction", "bending_moment"};
    return {"surface_density", "bending_moment", "membrane", "shear"};
  }
  return {"order", "finest_error"};
}

const std::set<std::string> kOutputKeys{"trajectory", "residuals_csv", "residuals_json",
                                        "reduction", "convergence", "report"};

std::string idx(const std::string& key, std::size_t i) { return key + "[" + std::to_string(i) + "]"; }

std::string string_entry(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(key, "missing");
  if (!j.at(key).is_string()) throw ConfigError(key, "expected a string");
  return j.at(key).get<std::string>();
}

int chart_dim(const std::string& medium) {
  if (medium == "d0") return 1;
  if (medium == "d1") return 2;
  if (medium == "d2") return 3;
  return 4;
}

std::vector<std::string> chart_names(const std::string& medium) {
  if (medium == "d1") return {"t", "s"};
  if (medium == "d2") return {"t", "theta1", "theta2"};
  return {"t", "x1", "x2", "x3"};
}

double tolerance_of(const json& check, const std::string& key, double fallback, bool required) {
  if (!check.contains("tolerance")) {
    if (required) throw ConfigError(key + ".tolerance", "missing");
    return fallback;
  }
  const double t = fields::number(check, "tolerance", key, 0.0);
  if (t < 0.0) throw ConfigError(key + ".tolerance", "must be nonnegative");
  return t;
}

void write_csv(const fs::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write '" + file.string() + "'");
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

void write_json(const fs::path& file, const json& j) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write '" + file.string() + "'");
  out << j.dump(2) << '\n';
}

double state_error(const PointwiseState& a, const PointwiseState& b) {
  return std::max({(a.x - b.x).cwiseAbs().maxCoeff(), (a.p - b.p).cwiseAbs().maxCoeff(),
                   (a.q - b.q).cwiseAbs().maxCoeff(), (a.l - b.l).cwiseAbs().maxCoeff()});
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Unit vector orthogonal to e.
Vec3 any_perpendicular(const Vec3& e) {
  const Vec3 t = std::abs(e.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return (t - t.dot(e) * e).normalized();
}

// Shared state of one run.
struct Context {
  json sc;
  std::string name, kind, medium;
  fs::path base_dir, out_dir;
  RunOptions opts;
  Report report;

  fs::path output(const std::string& key, const std::string& suffix) {
    std::string file = name + suffix;
    if (sc.contains("outputs") && sc["outputs"].contains(key)) file = sc["outputs"][key].get<std::string>();
    const fs::path p = out_dir / file;
    report.outputs.push_back(file);
    return p;
  }

  void add(const std::string& check, double value, double tolerance, bool pass_override = false) {
    CheckResult r;
    r.name = check;
    r.value = value;
    r.tolerance = tolerance * opts.tolerance_scale;
    r.pass = pass_override || (std::isfinite(value) && value <= r.tolerance);
    report.checks.push_back(r);
  }
};

ConnectionSpec connection_of(const Context& c) {
  if (!c.sc.contains("connection")) return {};
  return fields::connection_spec(c.sc.at("connection"), "connection");
}

// --- Pointwise simulation ---------------------------------------------------------

void run_pointwise(Context& c) {
  const ConnectionSpec cs = connection_of(c);
  const json& ini = c.sc.at("initial");
  if (!ini.is_object()) throw ConfigError("initial", "expected an object");
  const double m = fields::required_number(ini, "m", "initial");
  if (!(m > 0.0)) throw ConfigError("initial.m", "mass must be positive");
  const PointwiseState init = PointwiseState::from_motion(
      fields::number(ini, "t", "initial", 0.0), m, fields::vec3(ini, "x", "initial", Vec3::Zero()),
      fields::vec3(ini, "v", "initial", Vec3::Zero()), fields::vec3(ini, "l0", "initial", Vec3::Zero()));

  const json& ij = c.sc.at("integrator");
  if (!ij.is_object()) throw ConfigError("integrator", "expected an object");
  IntegratorConfig cfg;
  if (ij.contains("method") && ij.at("method") != "RK4")
    throw ConfigError("integrator.method", "only RK4 is available");
  cfg.dt = fields::required_number(ij, "dt", "integrator");
  cfg.t_end = fields::required_number(ij, "t_end", "integrator");
  const double stride = fields::number(ij, "output_stride", "integrator", 1.0);
  if (stride != std::floor(stride) || stride < 1.0 || stride > 1e9)
    throw ConfigError("integrator.output_stride", "expected a positive integer");
  cfg.output_stride = static_cast<int>(stride);
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw ConfigError("integrator", e.what());
  }

  std::function<PointwiseState(double)> reference;
  const json& checks = c.sc.at("checks");
  for (std::size_t i = 0; i < checks.size(); ++i)
    if (checks[i].at("type") == "reference")
      reference = fields::pointwise_reference(string_entry(c.sc, "reference"), init, cs, "reference");

  const Trajectory traj = run_scenario(init, cs.connection(), cfg);

  for (std::size_t i = 0; i < checks.size(); ++i) {
    const json& ch = checks[i];
    const std::string key = idx("checks", i);
    const std::string type = ch.at("type");
    if (type == "reference") {
      double worst = 0.0;
      for (const auto& s : traj.samples) worst = std::max(worst, state_error(s, reference(s.t)));
      c.add(type, worst, tolerance_of(ch, key, 0.0, true));
    } else if (type == "mass_drift") {
      c.add(type, traj.drift.mass, tolerance_of(ch, key, 0.0, false));
    } else if (type == "position_quantity_drift") {
      c.add(type, traj.drift.position_quantity, tolerance_of(ch, key, 0.0, true));
    } else if (type == "angular_drift") {
      c.add(type, traj.drift.angular, tolerance_of(ch, key, 0.0, true));
    } else if (type == "l0_magnitude") {
      double worst = 0.0;
      for (const auto& s : traj.samples) worst = std::max(worst, std::abs(s.l0.norm() - init.l0.norm()));
      c.add(type, worst, tolerance_of(ch, key, 0.0, true));
    } else {
      // Spin-axis properties.
      const double w = cs.Omega.norm();
      if (w == 0.0) throw ConfigError(key + ".type", "check '" + type + "' needs a nonzero spin");
      const Vec3 e = cs.Omega / w;
      if (type == "vertical_invariant") {
        if (cs.compensate || cs.g.cross(e).norm() > 1e-12 * std::max(1.0, cs.g.norm()))
          throw ConfigError(key + ".type", "check 'vertical_invariant' needs gravity along the spin axis");
        // l.e + m w |x_perp|^2 is conserved when g and Omega are both along e.
        const auto inv = [&](const PointwiseState& s) {
          const Vec3 perp = s.x - s.x.dot(e) * e;
          return s.l.dot(e) + s.m * w * perp.squaredNorm();
        };
        double worst = 0.0;
        for (const auto& s : traj.samples) worst = std::max(worst, std::abs(inv(s) - inv(init)));
        c.add(type, worst, tolerance_of(ch, key, 0.0, true));
      } else if (type == "l0_vertical") {
        double worst = 0.0;
        for (const auto& s : traj.samples) worst = std::max(worst, std::abs(s.l0.dot(e) - init.l0.dot(e)));
        c.add(type, worst, tolerance_of(ch, key, 0.0, true));
      } else if (type == "precession_rate") {
        const Vec3 a = any_perpendicular(e), b = e.cross(a);
        if (std::hypot(init.l0.dot(a), init.l0.dot(b)) < 1e-12)
          throw ConfigError("initial.l0", "precession check needs l0 off the spin axis");
        std::vector<double> ts, phis;
        double prev = 0.0, offset = 0.0;
        for (std::size_t k = 0; k < traj.samples.size(); ++k) {
          const auto& s = traj.samples[k];
          double phi = std::atan2(s.l0.dot(b), s.l0.dot(a));
          if (k > 0) {
            while (phi + offset - prev > std::numbers::pi) offset -= 2.0 * std::numbers::pi;
            while (phi + offset - prev < -std::numbers::pi) offset += 2.0 * std::numbers::pi;
          }
          prev = phi + offset;
          ts.push_back(s.t);
          phis.push_back(prev);
        }
        const double rate = ts.size() >= 2 ? least_squares_slope(ts, phis) : kNaN;
        c.add(type, std::abs(rate + w), tolerance_of(ch, key, 0.0, true));
      }
    }
  }

  std::vector<std::vector<double>> rows;
  for (const auto& s : traj.samples)
    rows.push_back({s.t, s.m, s.x(0), s.x(1), s.x(2), s.p(0), s.p(1), s.p(2), s.q(0), s.q(1), s.q(2),
                    s.l(0), s.l(1), s.l(2)});
  write_csv(c.output("trajectory", "_trajectory.csv"),
            {"t", "m", "x1", "x2", "x3", "p1", "p2", "p3", "q1", "q2", "q3", "l1", "l2", "l3"}, rows);
}

// --- Residual evaluation ---------------------------------------------------------

struct PointTerms {
  double statics = 0.0;
  double identity = 0.0;
  double plate = 0.0;
};

using Evaluator = std::function<BalanceResidual(const VecX&, PointTerms*)>;

Evaluator make_evaluator(const Context& c, const ConnectionSpec& cs, double step) {
  const json& field = c.sc.at("field");
  const GalileanConnection conn = cs.connection();
  const std::string base = c.base_dir.string();
  if (c.medium == "d1") {
    RodFields rod = fields::rod_field(field, cs, "field");
    if (step > 0.0) rod.curve.differences.relative_step = step;
    return [rod, conn](const VecX& xi, PointTerms* pt) {
      RodAngularTerms t;
      const BalanceResidual r = residual_1d(rod, conn, xi(0), xi(1), &t);
      if (pt) {
        const Vec3 recovered = t.dMstar_ds - t.n_cross_F;
        pt->statics = std::max({(r.angular_momentum - recovered).cwiseAbs().maxCoeff(),
                                t.dl_dt.cwiseAbs().maxCoeff(), t.omega_cross_l.cwiseAbs().maxCoeff(),
                                t.lstar_term.cwiseAbs().maxCoeff(),
                                rod.curve.v(xi(0), xi(1)).cwiseAbs().maxCoeff()});
      }
      return r;
    };
  }
  if (c.medium == "d2") {
    fields::ShellSetup s = fields::shell_field(field, cs, "field");
    if (step > 0.0) s.geometry.differences.relative_step = step;
    return [s, conn](const VecX& xi, PointTerms* pt) {
      ShellTerms t;
      const BalanceResidual r = residual_2d(s.geometry, s.fields, conn, xi(0), xi(1), xi(2), &t);
      if (pt) {
        pt->identity = std::max(t.identity_b0.cwiseAbs().maxCoeff(), std::abs(t.identity_03));
        const Vec2 off = r.angular_momentum.head<2>() - (t.M_bar - t.Q);
        pt->plate = std::max({std::abs(r.angular_momentum(2) - t.eps_N), std::abs(t.eps_bM),
                              std::abs(t.eps_inertia), off.cwiseAbs().maxCoeff(),
                              t.inertia.cwiseAbs().maxCoeff()});
      }
      return r;
    };
  }
  if (c.medium == "d3_cauchy") {
    MediumField m = cauchy_medium(fields::cauchy_field(field, cs, base, "field"));
    if (step > 0.0) m.differences.relative_step = step;
    return [m, conn](const VecX& xi, PointTerms*) { return residual_cauchy(m, conn, Vec4(xi)); };
  }
  Cosserat3DState s = fields::cosserat_field(field, cs, "field");
  if (step > 0.0) s.differences.relative_step = step;
  return [s, conn](const VecX& xi, PointTerms*) {
    return residual_3d_cosserat(s, conn, xi(0), Vec3(xi.tail<3>()));
  };
}

std::vector<VecX> chart_points(const Context& c) {
  const json& p = c.sc.at("points");
  const int dim = chart_dim(c.medium);
  if (!p.is_object() || p.size() != 1) throw ConfigError("points", "expected one of list, grid, random");
  std::vector<VecX> out;
  const auto check_dim = [&](const VecX& v, const std::string& key) {
    if (v.size() != dim) throw ConfigError(key, "expected " + std::to_string(dim) + " chart coordinates");
  };
  if (p.contains("list")) {
    const json& l = p.at("list");
    if (!l.is_array() || l.empty()) throw ConfigError("points.list", "expected a nonempty array");
    for (std::size_t i = 0; i < l.size(); ++i) {
      const json wrap{{"p", l[i]}};
      const VecX v = fields::vector(wrap, "p", "points.list");
      check_dim(v, idx("points.list", i));
      out.push_back(v);
    }
    return out;
  }
  if (p.contains("grid") || p.contains("random")) {
    const bool grid = p.contains("grid");
    const std::string key = grid ? "points.grid" : "points.random";
    const json& g = grid ? p.at("grid") : p.at("random");
    if (!g.is_object()) throw ConfigError(key, "expected an object");
    const VecX lo = fields::vector(g, "lower", key), hi = fields::vector(g, "upper", key);
    check_dim(lo, key + ".lower");
    check_dim(hi, key + ".upper");
    if ((hi - lo).minCoeff() < 0.0) throw ConfigError(key + ".upper", "must not be below lower");
    if (grid) {
      const VecX n = fields::vector(g, "counts", key);
      check_dim(n, key + ".counts");
      long total = 1;
      for (int k = 0; k < dim; ++k) {
        if (n(k) < 1 || n(k) != std::floor(n(k)) || n(k) > 1000)
          throw ConfigError(key + ".counts", "expected positive integers");
        total *= static_cast<long>(n(k));
      }
      if (total > 100000) throw ConfigError(key + ".counts", "grid too large");
      for (long flat = 0; flat < total; ++flat) {
        VecX v(dim);
        long rest = flat;
        for (int k = dim - 1; k >= 0; --k) {
          const long nk = static_cast<long>(n(k));
          const long i = rest % nk;
          rest /= nk;
          v(k) = nk == 1 ? lo(k) : lo(k) + (hi(k) - lo(k)) * static_cast<double>(i) / static_cast<double>(nk - 1);
        }
        out.push_back(v);
      }
      return out;
    }
    const double count = fields::required_number(g, "count", key);
    if (count < 1 || count != std::floor(count) || count > 100000)
      throw ConfigError(key + ".count", "expected a positive integer");
    std::uint64_t seed = 1;
    if (c.sc.contains("seed")) {
      if (!c.sc.at("seed").is_number_unsigned()) throw ConfigError("seed", "expected a nonnegative integer");
      seed = c.sc.at("seed").get<std::uint64_t>();
    }
    if (c.opts.seed) seed = *c.opts.seed;
    std::mt19937_64 gen(seed);
    for (int i = 0; i < static_cast<int>(count); ++i) {
      VecX v(dim);
      // Raw 53-bit draws keep the sequence identical across standard libraries.
      for (int k = 0; k < dim; ++k)
        v(k) = lo(k) + (hi(k) - lo(k)) * static_cast<double>(gen() >> 11) * 0x1.0p-53;
      out.push_back(v);
    }
    return out;
  }
  throw ConfigError("points", "expected one of list, grid, random");
}

void run_residual(Context& c) {
  const ConnectionSpec cs = connection_of(c);
  const Evaluator eval = make_evaluator(c, cs, 0.0);
  const std::vector<VecX> points = chart_points(c);

  std::vector<std::vector<double>> rows;
  json records = json::array();
  double worst = 0.0;
  PointTerms extremes;
  for (const VecX& xi : points) {
    PointTerms pt;
    BalanceResidual r;
    try {
      r = eval(xi, &pt);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError("points", e.what());
    }
    const double mx = r.finite() ? r.max_norm() : kNaN;
    worst = std::isnan(mx) || std::isnan(worst) ? kNaN : std::max(worst, mx);
    extremes.statics = std::max(extremes.statics, pt.statics);
    extremes.identity = std::max(extremes.identity, pt.identity);
    extremes.plate = std::max(extremes.plate, pt.plate);
    std::vector<double> row(xi.data(), xi.data() + xi.size());
    const auto packed = r.packed();
    row.insert(row.end(), packed.begin(), packed.end());
    row.push_back(r.max_norm());
    row.push_back(r.l2_norm());
    rows.push_back(row);
    records.push_back({{"chart_point", to_json_vector(xi)},
                       {"residual", packed},
                       {"norms", {{"max", r.max_norm()}, {"l2", r.l2_norm()}}}});
  }

  const json& checks = c.sc.at("checks");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string type = checks[i].at("type");
    const double tol = tolerance_of(checks[i], idx("checks", i), 0.0, true);
    if (type == "residual") c.add(type, worst, tol);
    if (type == "statics") c.add(type, extremes.statics, tol);
    if (type == "identity_rows") c.add(type, extremes.identity, tol);
    if (type == "plate_recovery") c.add(type, extremes.plate, tol);
  }

  std::vector<std::string> header = chart_names(c.medium);
  for (const char* n : {"mass", "lin1", "lin2", "lin3", "pos1", "pos2", "pos3", "ang1", "ang2", "ang3",
                        "max_norm", "l2_norm"})
    header.emplace_back(n);
  write_csv(c.output("residuals_csv", "_residuals.csv"), header, rows);
  write_json(c.output("residuals_json", "_residuals.json"), records);
}

// --- Reduction -----------------------------------------------------------------------

void run_reduction(Context& c) {
  using std::numbers::pi;
  const json& f = c.sc.at("field");
  if (!f.is_object()) throw ConfigError("field", "expected an object");
  const json& checks = c.sc.at("checks");
  json out;

  if (c.medium == "d1") {
    if (!f.contains("section") || !f.at("section").is_object())
      throw ConfigError("field.section", "expected an object");
    const json& sec = f.at("section");
    const std::string shape = string_entry(sec, "shape");
    const auto count = [&](const char* key, double fallback) {
      const double n = fields::number(sec, key, "field.section", fallback);
      if (n < 1 || n != std::floor(n) || n > 256)
        throw ConfigError(std::string("field.section.") + key, "expected a positive integer");
      return static_cast<int>(n);
    };
    CrossSection base;
    double area = 0, polar = 0, second = 0;
    if (shape == "disc") {
      const double r = fields::required_number(sec, "radius", "field.section");
      if (!(r > 0)) throw ConfigError("field.section.radius", "must be positive");
      base = CrossSection::disc(r, count("radial", 8), count("angular", 16));
      area = pi * r * r;
      polar = pi * std::pow(r, 4) / 2.0;
      second = pi * std::pow(r, 4) / 4.0;
    } else if (shape == "rectangle") {
      const double w = fields::required_number(sec, "width", "field.section");
      const double h = fields::required_number(sec, "height", "field.section");
      if (!(w > 0 && h > 0)) throw ConfigError("field.section", "width and height must be positive");
      base = CrossSection::rectangle(w, h, count("nx", 8), count("ny", 8));
      area = w * h;
      polar = w * h * (w * w + h * h) / 12.0;
      second = h * w * w * w / 12.0;
    } else {
      throw ConfigError("field.section.shape", "expected disc or rectangle");
    }
    const double rho = fields::number(f, "rho", "field", 1000.0);
    if (!(rho > 0)) throw ConfigError("field.rho", "must be positive");
    const double w = fields::number(f, "omega", "field", 0.0);
    const Vec3 v = fields::vec3(f, "velocity", "field", Vec3::Zero());
    const Mat3 sigma = fields::matrix(f, "stress", "field", 3, 3, Mat3::Zero());
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 0.0)
      throw ConfigError("field.stress", "must be symmetric");
    const double k = fields::number(f, "bending", "field", 0.0);

    const Vec3 n = Vec3::UnitX();
    const CrossSection cs =
        base.placed(Vec3::Zero(), n, Vec3::UnitY()).mass_centered([rho](const Vec3&) { return rho; });
    const SectionField bar_T = [=](const Vec3& x) {
      Mat3 s = sigma;
      s(0, 0) += k * x(1);
      return assemble_cauchy_T(rho, Vec3(v + w * n.cross(x)), s);
    };
    Mat24 Pi = Mat24::Zero();
    Pi(0, 0) = 1.0;
    Pi.block<1, 3>(1, 1) = n.transpose();
    const Reduced1DT T = reduce_3d_to_1d_T(bar_T, Pi, cs);
    const Reduced1DJ J = reduce_3d_to_1d_J(bar_T, Pi, cs);
    const Vec3 F_exact = area * sigma * n;
    const Vec3 l_exact = rho * w * polar * n;
    out = {{"rho_l", T.force_mass.rho_l},         {"rho_l_exact", rho * area},
           {"v", to_json_vector(T.force_mass.v)}, {"v_t", T.force_mass.v_t},
           {"F", to_json_vector(T.force_mass.F)}, {"F_exact", to_json_vector(F_exact)},
           {"q", to_json_vector(J.q)},            {"l", to_json_vector(J.l)},
           {"l_exact", to_json_vector(l_exact)},  {"l_star", to_json_vector(J.l_star)},
           {"M_star", to_json_vector(J.M_star)},  {"M_star_exact", to_json_vector(Vec3(0, 0, k * second))}};
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const std::string type = checks[i].at("type");
      const std::string key = idx("checks", i);
      const double tol = tolerance_of(checks[i], key, 0.0, true);
      if (type == "linear_density") c.add(type, std::abs(T.force_mass.rho_l / (rho * area) - 1.0), tol);
      if (type == "spin_angular_momentum") {
        if (w == 0.0) throw ConfigError("field.omega", "spin check needs a nonzero omega");
        c.add(type, (J.l - l_exact).norm() / l_exact.norm(), tol);
      }
      if (type == "parity") c.add(type, std::max(J.q.norm(), J.l_star.norm()), tol);
      if (type == "traction")
        c.add(type, (T.force_mass.F - F_exact).norm() / std::max(1.0, F_exact.norm()), tol);
      if (type == "bending_moment") {
        if (k == 0.0) throw ConfigError("field.bending", "bending check needs a nonzero bending gradient");
        c.add(type, std::abs(J.M_star(2) / (k * second) - 1.0), tol);
      }
    }
  } else {
    const double rho = fields::number(f, "rho", "field", 1000.0);
    const double h = fields::required_number(f, "h", "field");
    if (!(h > 0)) throw ConfigError("field.h", "must be positive");
    const double kappa = fields::number(f, "kappa", "field", 0.0);
    const Mat2 N0 = fields::matrix(f, "N0", "field", 2, 2, Mat2::Zero());
    const Vec3 q3 = fields::vec3(f, "Q0", "field", Vec3::Zero());
    const Vec2 Q0 = q3.head<2>();
    const double nodes = fields::number(f, "nodes", "field", 8.0);
    if (nodes < 1 || nodes != std::floor(nodes) || nodes > 64)
      throw ConfigError("field.nodes", "expected a positive integer");
    const ThicknessRule rule = ThicknessRule::gauss_legendre(h, static_cast<int>(nodes));
    // Uniform membrane stress, linear bending stress, parabolic shear profile.
    const auto sigma_bar = [=](double z) {
      Mat3 s = Mat3::Zero();
      s.topLeftCorner<2, 2>() = N0 / h;
      s(0, 0) += kappa * z;
      for (int a = 0; a < 2; ++a) s(a, 2) = s(2, a) = 1.5 * Q0(a) / h * (1.0 - 4.0 * z * z / (h * h));
      return s;
    };
    const Reduced2D r = reduce_3d_to_2d(sigma_bar, rho, rule);
    const double M_exact = kappa * h * h * h / 12.0;
    out = {{"rho_s", r.rho_s},      {"rho_s_exact", rho * h},   {"N", to_json_value(r.N)},
           {"N_exact", to_json_value(N0)}, {"Q", to_json_vector(r.Q)}, {"Q_exact", to_json_vector(Q0)},
           {"M", to_json_value(r.M)}, {"M11_exact", M_exact}};
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const std::string type = checks[i].at("type");
      const double tol = tolerance_of(checks[i], idx("checks", i), 0.0, true);
      if (type == "surface_density") c.add(type, std::abs(r.rho_s - rho * h), tol);
      if (type == "bending_moment") c.add(type, std::abs(r.M(0, 0) - M_exact), tol);
      if (type == "membrane") c.add(type, (r.N - N0).cwiseAbs().maxCoeff(), tol);
      if (type == "shear") c.add(type, (r.Q - Q0).cwiseAbs().maxCoeff(), tol);
    }
  }
  write_json(c.output("reduction", "_reduction.json"), out);
}

// --- Convergence ---------------------------------------------------------------------

void run_convergence(Context& c) {
  const ConnectionSpec cs = connection_of(c);
  const VecX point = fields::vector(c.sc, "point", "");
  if (point.size() != chart_dim(c.medium))
    throw ConfigError("point", "expected " + std::to_string(chart_dim(c.medium)) + " chart coordinates");
  const VecX steps_v = fields::vector(c.sc, "steps", "");
  if (steps_v.size() < 3) throw ConfigError("steps", "expected at least three step sizes");
  std::vector<double> steps(steps_v.data(), steps_v.data() + steps_v.size());
  for (double h : steps)
    if (!(h > 0.0)) throw ConfigError("steps", "step sizes must be positive");
  make_evaluator(c, cs, steps.front());  // surface field errors as config errors

  const auto error = [&](double h) { return make_evaluator(c, cs, h)(point, nullptr).max_norm(); };
  ConvergenceResult res;
  bool monotone = true;
  try {
    res = observed_order(error, steps);
  } catch (const NonMonotoneError&) {
    monotone = false;
    std::sort(steps.begin(), steps.end(), std::greater<>());
    res.steps = steps;
    for (double h : steps) res.errors.push_back(error(h));
  }

  const json& checks = c.sc.at("checks");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string type = checks[i].at("type");
    const std::string key = idx("checks", i);
    const double tol = tolerance_of(checks[i], key, 0.0, true);
    if (type == "order") {
      const double expected = fields::required_number(checks[i], "expected", key);
      if (res.at_floor)
        c.add(type, 0.0, tol, true);  // slope skipped at the roundoff floor
      else
        c.add(type, monotone ? std::abs(res.order - expected) : kNaN, tol);
    }
    if (type == "finest_error") c.add(type, res.errors.back(), tol);
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < res.steps.size(); ++i) rows.push_back({res.steps[i], res.errors[i]});
  write_csv(c.output("convergence", "_convergence.csv"), {"h", "error"}, rows);
}

}  // namespace

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open scenario file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("(root)", "expected an object");
  for (const auto& [key, _] : j.items())
    if (!kTopKeys.count(key)) throw ConfigError(key, "unknown entry");
  if (!j.contains("schema")) throw ConfigError("schema", "missing");
  if (!j.at("schema").is_number_integer() || j.at("schema").get<int>() != 1)
    throw ConfigError("schema", "only schema 1 is supported");
  for (const char* key : {"name", "description", "exercises"}) string_entry(j, key);
  const std::string kind = string_entry(j, "kind");
  const std::string medium = string_entry(j, "medium");
  const auto media = kMediaForKind.find(kind);
  if (media == kMediaForKind.end())
    throw ConfigError("kind", "expected pointwise_sim, residual_check, reduction or convergence");
  if (!media->second.count(medium))
    throw ConfigError("medium", "medium '" + medium + "' does not fit kind '" + kind + "'");
  for (const auto& key : kRequired.at(kind))
    if (!j.contains(key)) throw ConfigError(key, "missing (required for kind '" + kind + "')");

  const json& checks = j.at("checks");
  if (!checks.is_array() || checks.empty()) throw ConfigError("checks", "expected a nonempty array");
  const auto allowed = check_types(kind, medium);
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string key = idx("checks", i);
    if (!checks[i].is_object()) throw ConfigError(key, "expected an object");
    const std::string type = string_entry(checks[i], "type");
    if (!allowed.count(type)) throw ConfigError(key + ".type", "check '" + type + "' does not apply here");
    for (const auto& [k, _] : checks[i].items())
      if (k != "type" && k != "tolerance" && k != "expected") throw ConfigError(key + "." + k, "unknown entry");
  }
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    if (!o.is_object()) throw ConfigError("outputs", "expected an object");
    for (const auto& [k, v] : o.items()) {
      if (!kOutputKeys.count(k)) throw ConfigError("outputs." + k, "unknown output");
      if (!v.is_string() || v.get<std::string>().empty() ||
          v.get<std::string>().find('/') != std::string::npos)
        throw ConfigError("outputs." + k, "expected a plain file name");
    }
  }
  if (j.contains("connection")) fields::connection_spec(j.at("connection"), "connection");
  return j;
}

Info info_of(const json& j, const std::string& path) {
  return {j.at("name"), j.at("kind"), j.at("medium"), j.at("description"), j.at("exercises"), path};
}

Report run(const std::string& path, const RunOptions& opts) {
  Context c;
  c.sc = load(path);
  c.name = c.sc.at("name");
  c.kind = c.sc.at("kind");
  c.medium = c.sc.at("medium");
  c.base_dir = fs::path(path).parent_path();
  c.out_dir = opts.out_dir;
  c.opts = opts;
  if (!(opts.tolerance_scale > 0.0) || !std::isfinite(opts.tolerance_scale))
    throw ConfigError("--tolerance-scale", "must be a positive number");
  c.report.name = c.name;
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec) throw Error("cannot create output directory '" + c.out_dir.string() + "'");

  if (c.kind == "pointwise_sim") run_pointwise(c);
  if (c.kind == "residual_check") run_residual(c);
  if (c.kind == "reduction") run_reduction(c);
  if (c.kind == "convergence") run_convergence(c);

  json checks = json::array();
  for (const auto& r : c.report.checks)
    checks.push_back({{"name", r.name}, {"value", r.value}, {"tolerance", r.tolerance}, {"pass", r.pass}});
  const fs::path report_file = c.output("report", "_report.json");
  write_json(report_file, {{"scenario", c.name},
                           {"kind", c.kind},
                           {"medium", c.medium},
                           {"passed", c.report.passed()},
                           {"checks", checks},
                           {"outputs", c.report.outputs}});
  return c.report;
}

std::vector<Info> list(const std::string& dir) {
  std::vector<Info> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().extension() != ".json") continue;
    const json j = load(entry.path().string());
    out.push_back(info_of(j, entry.path().string()));
  }
  if (ec) throw Error("cannot read scenario directory '" + dir + "'");
  std::sort(out.begin(), out.end(), [](const Info& a, const Info& b) { return a.name < b.name; });
  return out;
}

Info describe(const std::string& dir, const std::string& name) {
  for (const auto& i : list(dir))
    if (i.name == name) return i;
  throw ConfigError("name", "no bundled scenario named '" + name + "'");
}

}  // namespace torsor::scenario
