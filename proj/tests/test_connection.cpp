#include "oracles.hpp"
#include "torsor/connection.hpp"
#include "torsor/media_fields.hpp"

#include <doctest.h>

using namespace torsor;
using oracle::max_abs_diff;

namespace {

// Quadratic field f(xi) = a + b.xi + xi^T C xi with analytic gradient.
struct Quadratic {
  double a;
  Vec4 b;
  Mat4 C;
  static Quadratic random(oracle::Rng& rng) {
    Mat4 C = rng.mat4();
    return {rng.uniform(), rng.vec4(), C + C.transpose()};
  }
  double operator()(const Vec4& x) const { return a + b.dot(x) + x.dot(C * x); }
  Vec4 grad(const Vec4& x) const { return b + 2.0 * C * x; }
};

struct PolyTorsor {
  std::array<std::array<Quadratic, 4>, 4> T;      // T[gamma][beta]
  std::array<std::array<Quadratic, 6>, 4> J;      // strict upper triangle per gamma
  static PolyTorsor random(oracle::Rng& rng) {
    PolyTorsor p;
    for (auto& row : p.T)
      for (auto& q : row) q = Quadratic::random(rng);
    for (auto& row : p.J)
      for (auto& q : row) q = Quadratic::random(rng);
    return p;
  }
  TorsorComponents eval(const Vec4& x) const {
    TorsorComponents c = TorsorComponents::zero(3);
    for (int g = 0; g < 4; ++g) {
      for (int b = 0; b < 4; ++b) c.T(g, b) = T[g][b](x);
      int k = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j, ++k) {
          c.J[g](i, j) = J[g][k](x);
          c.J[g](j, i) = -c.J[g](i, j);
        }
    }
    return c;
  }
  std::vector<TorsorComponents> derivative(const Vec4& x) const {
    std::vector<TorsorComponents> d(4, TorsorComponents::zero(3));
    for (int mu = 0; mu < 4; ++mu)
      for (int g = 0; g < 4; ++g) {
        for (int b = 0; b < 4; ++b) d[mu].T(g, b) = T[g][b].grad(x)(mu);
        int k = 0;
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j, ++k) {
            d[mu].J[g](i, j) = J[g][k].grad(x)(mu);
            d[mu].J[g](j, i) = -d[mu].J[g](i, j);
          }
      }
    return d;
  }
};

MediumField poly_medium(const PolyTorsor& p, bool analytic, double step = 1e-4) {
  MediumField f;
  f.dim = 3;
  f.embedding = [](const VecX& xi) { return Vec4(xi); };
  f.tangent_map = [](const VecX&) -> MatX { return Mat4::Identity(); };
  f.torsor = [p](const VecX& xi) { return p.eval(Vec4(xi)); };
  if (analytic) f.torsor_derivative = [p](const VecX& xi) { return p.derivative(Vec4(xi)); };
  f.differences.relative_step = step;
  return f;
}

}  // namespace

TEST_CASE("christoffels_at") {
  const auto zero = christoffels_at(GalileanConnection::uniform(Vec3::Zero(), Vec3::Zero()), 0.0,
                                    Vec3::Zero());
  CHECK(zero.nonzero_count() == 0);

  const auto grav = christoffels_at(GalileanConnection::uniform(Vec3(0, 0, -9.81), Vec3::Zero()),
                                    0.0, Vec3(1, 2, 3));
  CHECK(grav(3, 0, 0) == doctest::Approx(9.81).epsilon(1e-15));
  CHECK(grav.nonzero_count() == 1);

  const double w = 0.7;
  const auto spin = christoffels_at(GalileanConnection::uniform(Vec3::Zero(), Vec3(0, 0, w)), 0.0,
                                    Vec3::Zero());
  CHECK(spin(1, 0, 2) == -w);
  CHECK(spin(2, 0, 1) == w);
  CHECK(spin(1, 2, 0) == -w);
  CHECK(spin(2, 1, 0) == w);

  oracle::Rng rng(11);
  const auto full = christoffels_at(GalileanConnection::uniform(rng.vec3(), rng.vec3()), 0.0,
                                    Vec3::Zero());
  for (int a = 0; a < 4; ++a)
    for (int m = 0; m < 4; ++m)
      for (int b = 0; b < 4; ++b) {
        if (a == 0 || (m > 0 && b > 0)) CHECK(full(a, m, b) == 0.0);
        CHECK(full(a, m, b) == full(a, b, m));
      }
  // 3 gravity entries and 3 independent spin entries, each spin entry stored twice and skew
  CHECK(full.nonzero_count() == 3 + 12);
}

TEST_CASE("gamma_A_at") {
  oracle::Rng rng(12);
  const auto conn = GalileanConnection::uniform(rng.vec3(), rng.vec3());
  const Vec4 dX = rng.vec4();
  CHECK(max_abs_diff(gamma_A_at(conn, OriginMotion::proper(), 0.3, rng.vec3(), dX), dX) == 0.0);
  CHECK(max_abs_diff(gamma_A_matrix(conn, OriginMotion::proper(), 0.3, rng.vec3()),
                     Mat4::Identity()) == 0.0);

  const auto still = GalileanConnection::uniform(Vec3(0, 0, -9.81), Vec3::Zero());
  const Vec4 out = gamma_A_at(still, OriginMotion::position(), 0.0, Vec3(1, 2, 3), dX);
  CHECK(max_abs_diff(out, Vec4(dX(0), 0, 0, 0)) < 1e-15);

  const double w = 0.9;
  const auto rot = GalileanConnection::uniform(Vec3::Zero(), Vec3(0, 0, w));
  const Vec4 r = gamma_A_at(rot, OriginMotion::position(), 0.0, Vec3(1, 0, 0), Vec4(1, 0, 0, 0));
  CHECK(max_abs_diff(r, Vec4(1, 0, -w, 0)) < 1e-15);

  SUBCASE("differenced origin motion agrees with the exact Jacobian") {
    OriginMotion fd;
    fd.C_field = OriginMotion::position().C_field;
    const Vec3 x = rng.vec3();
    const Vec4 d = rng.vec4();
    CHECK(max_abs_diff(gamma_A_at(conn, fd, 0.1, x, d), gamma_A_at(conn, OriginMotion::position(), 0.1, x, d)) <
          1e-9);
  }
}

TEST_CASE("div_T") {
  oracle::Rng rng(13);
  const auto conn = GalileanConnection::uniform(rng.vec3(), rng.vec3());
  const Vec4 X = rng.vec4();

  SUBCASE("constant components with zero Christoffels") {
    TorsorComponents c = TorsorComponents::zero(3);
    c.T = rng.mat4();
    MediumField f = identity_medium([c](const Vec4&) { return Mat4(c.T.transpose()); });
    PullbackChristoffels none(3);
    CHECK(max_abs_diff(div_T(f, VecX(X), none), Vec4::Zero()) == 0.0);
  }

  SUBCASE("polynomial field against the analytic divergence") {
    const PolyTorsor p = PolyTorsor::random(rng);
    PullbackChristoffels none(3);
    const MediumField f = poly_medium(p, false, 1e-4);
    Vec4 expected = Vec4::Zero();
    for (int g = 0; g < 4; ++g)
      for (int b = 0; b < 4; ++b) expected(b) += p.T[g][b].grad(X)(g);
    CHECK(max_abs_diff(div_T(f, VecX(X), none), expected) < 1e-6);
  }

  SUBCASE("Cauchy specialization equals the general formula") {
    const PolyTorsor p = PolyTorsor::random(rng);
    const MediumField f = poly_medium(p, true);
    const auto chr = PullbackChristoffels::identity_embedding(conn, OriginMotion::proper(), X);
    const Mat4 T = p.eval(X).T.transpose();  // T^{beta gamma}
    Vec4 expected = Vec4::Zero();
    for (int g = 0; g < 4; ++g)
      for (int b = 0; b < 4; ++b) expected(b) += p.T[g][b].grad(X)(g);
    const Vec3 g = conn.gravity(0, Vec3::Zero());
    const Vec3 Om = conn.spin(0, Vec3::Zero());
    const Vec3 flux = T.block<3, 1>(1, 0) + T.block<1, 3>(0, 1).transpose();
    expected.tail<3>() += -g * T(0, 0) + oracle::cross(Om, flux);
    CHECK(max_abs_diff(div_T(f, VecX(X), chr), expected) < 1e-9);
  }

  SUBCASE("linearity") {
    const PolyTorsor p = PolyTorsor::random(rng);
    const PolyTorsor q = PolyTorsor::random(rng);
    const double a = 0.7, b = -1.3;
    MediumField fp = poly_medium(p, false), fq = poly_medium(q, false);
    MediumField sum = fp;
    sum.torsor = [&](const VecX& xi) {
      TorsorComponents c = p.eval(Vec4(xi));
      c *= a;
      TorsorComponents d = q.eval(Vec4(xi));
      d *= b;
      c += d;
      return c;
    };
    const auto chr = PullbackChristoffels::identity_embedding(conn, OriginMotion::position(), X);
    const VecX xi(X);
    CHECK(max_abs_diff(div_T(sum, xi, chr), a * div_T(fp, xi, chr) + b * div_T(fq, xi, chr)) < 1e-9);
    CHECK(max_abs_diff(div_J(sum, xi, chr), a * div_J(fp, xi, chr) + b * div_J(fq, xi, chr)) < 1e-9);
  }

  SUBCASE("boundary handling") {
    const PolyTorsor p = PolyTorsor::random(rng);
    MediumField f = poly_medium(p, false, 1e-4);
    f.domain = Box{Vec4(0, 0, 0, 0), Vec4(1, 1, 1, 1)};
    PullbackChristoffels none(3);
    const VecX edge = Vec4(0.5, 0.0, 0.5, 0.5);
    CHECK_THROWS_AS(div_T(f, edge, none), DifferentiationFailure);
    f.differences.one_sided_at_boundary = true;
    Vec4 expected = Vec4::Zero();
    for (int g = 0; g < 4; ++g)
      for (int b = 0; b < 4; ++b) expected(b) += p.T[g][b].grad(Vec4(edge))(g);
    CHECK(max_abs_diff(div_T(f, edge, none), expected) < 1e-6);
  }
}

TEST_CASE("div_J") {
  oracle::Rng rng(14);
  const Vec4 X = rng.vec4();

  SUBCASE("zero torsor") {
    MediumField f = identity_medium([](const Vec4&) { return Mat4::Zero().eval(); });
    const auto chr = PullbackChristoffels::identity_embedding(
        GalileanConnection::uniform(rng.vec3(), rng.vec3()), OriginMotion::proper(), X);
    CHECK(max_abs_diff(div_J(f, VecX(X), chr), Mat4::Zero()) == 0.0);
  }

  SUBCASE("zero J in a proper frame gives the antisymmetric part of T") {
    for (int n = 0; n < 50; ++n) {
      const Mat4 T = rng.mat4(3.0);
      MediumField f = identity_medium([T](const Vec4&) { return T; });
      const auto chr = PullbackChristoffels::identity_embedding(
          GalileanConnection::uniform(rng.vec3(), rng.vec3()), OriginMotion::proper(), X);
      const Mat4 d = div_J(f, VecX(X), chr);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(std::abs(d(a, b) - (T(b, a) - T(a, b))) < 1e-12);
    }
  }

  SUBCASE("differenced and analytic derivatives agree") {
    const auto conn = GalileanConnection::uniform(Vec3::Zero(), rng.vec3());
    const PolyTorsor p = PolyTorsor::random(rng);
    const auto chr = PullbackChristoffels::identity_embedding(conn, OriginMotion::position(), X);
    const VecX xi(X);
    CHECK(max_abs_diff(div_J(poly_medium(p, false, 1e-4), xi, chr),
                       div_J(poly_medium(p, true), xi, chr)) < 1e-6);
    CHECK(max_abs_diff(div_T(poly_medium(p, false, 1e-4), xi, chr),
                       div_T(poly_medium(p, true), xi, chr)) < 1e-6);
  }

  SUBCASE("rejects non-skew J") {
    MediumField f = identity_medium([](const Vec4&) { return Mat4::Zero().eval(); },
                                    [](const Vec4&) {
                                      std::vector<Mat4> J(4, Mat4::Zero());
                                      J[1](0, 1) = 1.0;
                                      return J;
                                    });
    CHECK_THROWS_AS(f.components(VecX(X)), Error);
  }
}

TEST_CASE("chart_christoffels") {
  oracle::Rng rng(15);
  const auto conn = GalileanConnection::uniform(rng.vec3(), rng.vec3());
  const Vec4 X = rng.vec4();
  const auto identity = chart_christoffels([](const Vec4& y) { return y; }, conn, X);
  const auto direct = christoffels_at(conn, X(0), X.tail<3>());
  for (int a = 0; a < 4; ++a)
    for (int m = 0; m < 4; ++m)
      for (int b = 0; b < 4; ++b) CHECK(std::abs(identity(a, m, b) - direct(a, m, b)) < 1e-12);

  SUBCASE("rotating chart of a flat connection") {
    // x = R(w t) x' seen from the rotating coordinates: spin w e3 and centrifugal gravity.
    const double w = 0.8;
    const auto flat = GalileanConnection::uniform(Vec3::Zero(), Vec3::Zero());
    const auto chart = [w](const Vec4& y) {
      return spacetime(y(0), oracle::rot_z(w * y(0)) * Vec3(y.tail<3>()));
    };
    const Vec4 Xp(0.4, 1.0, -0.5, 0.3);
    const auto G = chart_christoffels(chart, flat, Xp);
    const Vec3 centrifugal(w * w * Xp(1), w * w * Xp(2), 0.0);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(-G(i + 1, 0, 0) - centrifugal(i)) < 1e-6);
    CHECK(std::abs(G(1, 0, 2) + w) < 1e-6);
    CHECK(std::abs(G(2, 0, 1) - w) < 1e-6);
    CHECK(std::abs(G(1, 2, 2)) < 1e-6);
  }
}
