#include "torsor/connection.hpp"

namespace torsor {

Mat4 Christoffels::contract(const Vec4& dX) const {
  Mat4 m = Mat4::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int mu = 0; mu < 4; ++mu) m(a, b) += (*this)(a, mu, b) * dX(mu);
  return m;
}

int Christoffels::nonzero_count(double tol) const {
  int n = 0;
  for (double v : data_) n += std::abs(v) > tol ? 1 : 0;
  return n;
}

GalileanConnection GalileanConnection::uniform(const Vec3& gravity, const Vec3& spin) {
  return {[gravity](double, const Vec3&) { return gravity; },
          [spin](double, const Vec3&) { return spin; }};
}

OriginMotion OriginMotion::proper() { return {}; }

OriginMotion OriginMotion::position() {
  return {[](const Vec4& X) {
            Vec4 C = X;
            C(0) = 0.0;
            return C;
          },
          [](const Vec4&) {
            Mat4 dC = Mat4::Identity();
            dC(0, 0) = 0.0;
            return dC;
          }};
}

Christoffels christoffels_at(const GalileanConnection& conn, double t, const Vec3& x) {
  Christoffels G;
  const Vec3 g = conn.gravity(t, x);
  const Mat3 W = skew(conn.spin(t, x));
  for (int i = 0; i < 3; ++i) {
    G(i + 1, 0, 0) = -g(i);
    for (int j = 0; j < 3; ++j) {
      G(i + 1, 0, j + 1) = W(i, j);
      G(i + 1, j + 1, 0) = W(i, j);
    }
  }
  return G;
}

namespace {

// dC/dX^mu as columns. Exact for the two standard origins.
Mat4 origin_jacobian(const OriginMotion& origin, const Vec4& X, const DifferenceOptions& opts) {
  if (!origin.C_field) return Mat4::Zero();
  if (origin.C_jacobian) return origin.C_jacobian(X);
  Mat4 dC;
  const auto C = [&](const VecX& y) -> Vec4 { return origin.C(Vec4(y)); };
  for (int mu = 0; mu < 4; ++mu) dC.col(mu) = partial(C, VecX(X), mu, opts);
  return dC;
}

}  // namespace

Mat4 gamma_A_matrix(const GalileanConnection& conn, const OriginMotion& origin, double t,
                    const Vec3& x, const DifferenceOptions& opts) {
  const Vec4 X = spacetime(t, x);
  if (!origin.C_field) return Mat4::Identity();
  const Christoffels G = christoffels_at(conn, t, x);
  const Vec4 C = origin.C(X);
  const Mat4 dC = origin_jacobian(origin, X, opts);
  Mat4 A = Mat4::Identity() - dC;
  for (int sigma = 0; sigma < 4; ++sigma) {
    Vec4 e = Vec4::Zero();
    e(sigma) = 1.0;
    A.col(sigma) -= G.contract(e) * C;
  }
  return A;
}

Vec4 gamma_A_at(const GalileanConnection& conn, const OriginMotion& origin, double t,
                const Vec3& x, const Vec4& dX, const DifferenceOptions& opts) {
  if (!origin.C_field) return dX;
  const Vec4 X = spacetime(t, x);
  const Christoffels G = christoffels_at(conn, t, x);
  const Vec4 dC = origin_jacobian(origin, X, opts) * dX;
  return dX - (dC + G.contract(dX) * origin.C(X));
}

// --- PullbackChristoffels ----------------------------------------------------

PullbackChristoffels::PullbackChristoffels(int dim)
    : dim_(dim), material_(static_cast<std::size_t>((dim + 1) * (dim + 1) * (dim + 1)), 0.0) {
  if (dim < 0 || dim > 3) throw Error("matter dimension must be in 0..3");
}

double PullbackChristoffels::material(int g, int gp, int r) const {
  const int n = dim_ + 1;
  return material_[static_cast<std::size_t>((g * n + gp) * n + r)];
}

double& PullbackChristoffels::material(int g, int gp, int r) {
  const int n = dim_ + 1;
  return material_[static_cast<std::size_t>((g * n + gp) * n + r)];
}

PullbackChristoffels PullbackChristoffels::adapted_chart(int dim, const Christoffels& spacetime,
                                                         const Mat4& origin_motion) {
  PullbackChristoffels out(dim);
  out.spacetime = spacetime;
  out.origin_motion = origin_motion;
  for (int g = 0; g <= dim; ++g)
    for (int gp = 0; gp <= dim; ++gp)
      for (int r = 0; r <= dim; ++r) out.material(g, gp, r) = spacetime(g, gp, r);
  return out;
}

PullbackChristoffels PullbackChristoffels::flat_material(int dim, const Christoffels& spacetime,
                                                         const Mat4& origin_motion) {
  PullbackChristoffels out(dim);
  out.spacetime = spacetime;
  out.origin_motion = origin_motion;
  return out;
}

PullbackChristoffels PullbackChristoffels::identity_embedding(const GalileanConnection& conn,
                                                              const OriginMotion& origin,
                                                              const Vec4& X,
                                                              const DifferenceOptions& opts) {
  const Vec3 x = X.tail<3>();
  return adapted_chart(3, christoffels_at(conn, X(0), x),
                       gamma_A_matrix(conn, origin, X(0), x, opts));
}

Christoffels chart_christoffels(const std::function<Vec4(const Vec4&)>& chart,
                                const GalileanConnection& conn, const Vec4& Xp, double h) {
  const Vec4 X = chart(Xp);
  auto at = [&](int i, double di, int j, double dj) {
    Vec4 y = Xp;
    y(i) += di;
    y(j) += dj;
    return chart(y);
  };

  Mat4 jac;
  for (int mu = 0; mu < 4; ++mu) jac.col(mu) = (at(mu, h, mu, 0.0) - at(mu, -h, mu, 0.0)) / (2 * h);

  std::array<Vec4, 16> second;  // second[mu * 4 + nu] = d^2 X / dX'^mu dX'^nu
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu; nu < 4; ++nu) {
      Vec4 d;
      if (mu == nu) {
        d = (at(mu, h, mu, 0.0) - 2.0 * X + at(mu, -h, mu, 0.0)) / (h * h);
      } else {
        d = (at(mu, h, nu, h) - at(mu, h, nu, -h) - at(mu, -h, nu, h) + at(mu, -h, nu, -h)) /
            (4 * h * h);
      }
      second[mu * 4 + nu] = d;
      second[nu * 4 + mu] = d;
    }
  }

  const Christoffels G = christoffels_at(conn, X(0), X.tail<3>());
  const Mat4 jinv = jac.inverse();
  Christoffels out;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      Vec4 bracket = second[mu * 4 + nu];
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          for (int t = 0; t < 4; ++t) bracket(k) += G(k, l, t) * jac(l, mu) * jac(t, nu);
      const Vec4 projected = jinv * bracket;
      for (int a = 0; a < 4; ++a) out(a, mu, nu) = projected(a);
    }
  }
  return out;
}

// --- Divergence --------------------------------------------------------------

Vec4 div_T(const MediumField& field, const VecX& xi, const PullbackChristoffels& chr) {
  const int n = field.chart_dim();
  if (chr.dim() != field.dim) throw Error("div_T: Christoffel dimension does not match the medium");
  const TorsorComponents c = field.components(xi);
  const MatX U = field.tangent(xi);
  const auto [dT, dJ] = field.divergence_of_components(xi);
  (void)dJ;

  Vec4 out = dT;
  for (int beta = 0; beta < 4; ++beta) {
    double sum = 0.0;
    for (int g = 0; g < n; ++g) {
      for (int r = 0; r < n; ++r) sum += chr.material(g, g, r) * c.T(r, beta);
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) sum += c.T(g, r) * U(s, g) * chr.spacetime(beta, s, r);
    }
    out(beta) += sum;
  }
  return out;
}

Mat4 div_J(const MediumField& field, const VecX& xi, const PullbackChristoffels& chr) {
  const int n = field.chart_dim();
  if (chr.dim() != field.dim) throw Error("div_J: Christoffel dimension does not match the medium");
  const TorsorComponents c = field.components(xi);
  const MatX U = field.tangent(xi);
  const auto [dT, dJ] = field.divergence_of_components(xi);
  (void)dT;
  const Mat4& A = chr.origin_motion;

  // Gamma(U_gamma)^alpha_rho = U^sigma_gamma Gamma^alpha_{sigma rho}
  std::vector<Mat4> conn_along(static_cast<std::size_t>(n));
  for (int g = 0; g < n; ++g) conn_along[g] = chr.spacetime.contract(U.col(g));

  Mat4 out = dJ;
  for (int g = 0; g < n; ++g) {
    const Mat4& Jg = c.J[g];
    const Mat4& Gg = conn_along[g];
    out += Gg * Jg + Jg * Gg.transpose();
    for (int r = 0; r < n; ++r) out += chr.material(g, g, r) * c.J[r];
    const Vec4 AU = A * U.col(g);
    const Vec4 Tg = c.T.row(g).transpose();
    out += AU * Tg.transpose() - Tg * AU.transpose();
  }
  return skew_part(out);
}

}  // namespace torsor
