#include "oracles.hpp"
#include "torsor/field_library.hpp"

#include <doctest.h>

#include <cmath>

using namespace torsor;
using namespace torsor::fields;
using oracle::max_abs_diff;

namespace {

ConnectionSpec spec_of(const char* text) { return connection_spec(json::parse(text), "connection"); }

}  // namespace

TEST_CASE("connection spec") {
  const auto c = spec_of(R"({"gravity": [0, 0, -9.81], "spin": [0, 0, 1], "compensate_spin": true})");
  const auto conn = c.connection();
  CHECK(max_abs_diff(conn.gravity(0, Vec3(1, 0, 0)), Vec3(1, 0, -9.81)) < 1e-15);
  try {
    spec_of(R"({"gravity": [0, 0]})");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "connection.gravity");
  }
  CHECK_THROWS_AS(spec_of(R"({"gravty": [0, 0, 1]})"), ConfigError);
}

TEST_CASE("Cauchy fields balance exactly") {
  const auto c = spec_of(R"({"gravity": [0.3, 0, -9.81], "spin": [0.1, -0.2, 0.5]})");
  const auto conn = c.connection();
  for (const char* f : {R"({"type": "hydrostatic"})", R"({"type": "advected_wave"})"}) {
    const MediumField m = cauchy_medium(cauchy_field(json::parse(f), c, ".", "field"));
    for (const Vec4& X : {Vec4(0.1, 0.2, -0.3, 0.4), Vec4(0.7, 1.0, 0.5, -0.8)})
      CHECK(residual_cauchy(m, conn, X).max_norm() < 1e-4);
  }
  MediumField wave = cauchy_medium(cauchy_field(json::parse(R"({"type": "advected_wave"})"), c, ".", "field"));
  CHECK(residual_cauchy(wave, conn, Vec4(0.3, 0.1, 0.2, 0.3)).max_norm() < 1e-7);
  CHECK_THROWS_AS(cauchy_field(json::parse(R"({"type": "vortex"})"), c, ".", "field"), ConfigError);
  CHECK_THROWS_AS(cauchy_field(json::parse(R"({"type": "grid", "file": "missing.csv"})"), c, ".", "field"),
                  ConfigError);
}

TEST_CASE("rod fields balance exactly") {
  const auto grav = spec_of(R"({"gravity": [0.5, -1.0, -9.81], "spin": [0, 0.3, 0]})");
  for (const char* f : {R"({"type": "cantilever", "axis": [1, 1, 0], "F0": [1, 2, 3], "M0": [0, 1, 0]})",
                        R"({"type": "helix", "F0": [0.2, 0, 1]})"}) {
    const RodFields rod = rod_field(json::parse(f), grav, "field");
    for (double s : {0.3, 1.2}) {
      RodAngularTerms t;
      const auto r = residual_1d(rod, grav.connection(), 0.0, s, &t);
      CHECK(r.max_norm() < 1e-6);
      CHECK(max_abs_diff(r.angular_momentum, t.dMstar_ds - t.n_cross_F) < 1e-9);
    }
  }
  const auto flat = spec_of("{}");
  const RodFields spin = rod_field(json::parse(R"({"type": "spinning_rod"})"), flat, "field");
  CHECK(residual_1d(spin, flat.connection(), 0.4, 0.7).max_norm() < 1e-6);
  CHECK_THROWS_AS(rod_field(json::parse(R"({"type": "spinning_rod"})"), grav, "field"), ConfigError);
}

TEST_CASE("shell fields balance exactly") {
  const auto grav = spec_of(R"({"gravity": [0.2, -0.1, -9.81]})");
  for (const char* f : {R"({"type": "flat_plate", "N0": [[3, 1], [1, 2]], "M0": [[0.1, 0], [0, 0.2]]})",
                        R"({"type": "breathing_sphere"})"}) {
    const ShellSetup s = shell_field(json::parse(f), grav, "field");
    for (const Vec2& th : {Vec2(0.6, 0.3), Vec2(1.2, -0.8)}) {
      ShellTerms terms;
      const auto r = residual_2d(s.geometry, s.fields, grav.connection(), 0.35, th(0), th(1), &terms);
      CHECK(r.max_norm() < 1e-6);
      CHECK(terms.identity_b0.norm() < 1e-8);
      CHECK(std::abs(terms.identity_03) < 1e-8);
    }
  }
  const auto spin = spec_of(R"({"spin": [0, 0, 1]})");
  CHECK_THROWS_AS(shell_field(json::parse(R"({"type": "breathing_sphere"})"), spin, "field"), ConfigError);
  CHECK_THROWS_AS(shell_field(json::parse(R"({"type": "flat_plate", "N0": [[1, 2], [3, 4]]})"), grav, "field"),
                  ConfigError);
}

TEST_CASE("Cosserat fields balance exactly") {
  const auto grav = spec_of(R"({"gravity": [0.2, -0.1, -9.81]})");
  for (const char* f : {R"({"type": "cauchy_wave"})", R"({"type": "couple_stress"})"}) {
    const Cosserat3DState s = cosserat_field(json::parse(f), grav, "field");
    for (const Vec4& X : {Vec4(0.1, 0.2, -0.3, 0.4), Vec4(0.7, 1.0, 0.5, -0.8)})
      CHECK(residual_3d_cosserat(s, grav.connection(), X(0), X.tail<3>()).max_norm() < 1e-6);
  }
}

TEST_CASE("pointwise references satisfy the balance") {
  const auto init = PointwiseState::from_motion(0.2, 1.3, Vec3(1, -0.5, 0.2), Vec3(0.3, 0.4, -0.1),
                                                Vec3(0.1, 0.2, 0.3));
  for (const char* c : {R"({})", R"({"gravity": [0, 0, -9.81]})", R"({"spin": [0.2, 0.1, 1.0]})",
                        R"({"spin": [0, 0.5, 1.0], "compensate_spin": true})"}) {
    const auto spec = spec_of(c);
    const std::string name = spec.compensate ? "compensated"
                             : !spec.Omega.isZero() ? "spinning_frame"
                             : spec.g.isZero()      ? "free"
                                                    : "projectile";
    const auto ref = pointwise_reference(name, init, spec, "reference");
    CHECK(max_abs_diff(ref(0.2).x, init.x) < 1e-15);
    CHECK(max_abs_diff(ref(0.2).p, init.p) < 1e-14);
    PointwiseMotion mo;
    mo.torsor = [ref](double t) { return ref(t).torsor(); };
    for (double t : {0.2, 0.9})
      CHECK(residual_pointwise(mo, spec.connection(), OriginMotion::position(), t).max_norm() < 1e-7);
  }
  CHECK_THROWS_AS(pointwise_reference("free", init, spec_of(R"({"gravity": [0, 0, 1]})"), "reference"),
                  ConfigError);
}
