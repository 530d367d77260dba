#include "torsor/balance.hpp"

#include <cmath>

namespace torsor {

// --- BalanceResidual ---------------------------------------------------------

std::array<double, 10> BalanceResidual::packed() const {
  return {mass,
          linear_momentum(0), linear_momentum(1), linear_momentum(2),
          position_quantity(0), position_quantity(1), position_quantity(2),
          angular_momentum(0), angular_momentum(1), angular_momentum(2)};
}

BalanceResidual BalanceResidual::from_packed(const std::array<double, 10>& r) {
  BalanceResidual out;
  out.mass = r[0];
  out.linear_momentum = Vec3(r[1], r[2], r[3]);
  out.position_quantity = Vec3(r[4], r[5], r[6]);
  out.angular_momentum = Vec3(r[7], r[8], r[9]);
  return out;
}

double BalanceResidual::max_norm() const {
  double m = 0.0;
  for (double v : packed()) m = std::max(m, std::abs(v));
  return m;
}

double BalanceResidual::l2_norm() const {
  double s = 0.0;
  for (double v : packed()) s += v * v;
  return std::sqrt(s);
}

bool BalanceResidual::finite() const {
  for (double v : packed())
    if (!std::isfinite(v)) return false;
  return true;
}

BalanceResidual& BalanceResidual::operator+=(const BalanceResidual& o) {
  mass += o.mass;
  linear_momentum += o.linear_momentum;
  position_quantity += o.position_quantity;
  angular_momentum += o.angular_momentum;
  return *this;
}

BalanceResidual& BalanceResidual::operator-=(const BalanceResidual& o) {
  mass -= o.mass;
  linear_momentum -= o.linear_momentum;
  position_quantity -= o.position_quantity;
  angular_momentum -= o.angular_momentum;
  return *this;
}

BalanceResidual& BalanceResidual::operator*=(double s) {
  mass *= s;
  linear_momentum *= s;
  position_quantity *= s;
  angular_momentum *= s;
  return *this;
}

BalanceResidual operator-(BalanceResidual a, const BalanceResidual& b) { return a -= b; }

BalanceResidual pack_divergence(const Vec4& divT, const Mat4& divJ) {
  BalanceResidual r;
  r.mass = divT(0);
  r.linear_momentum = divT.tail<3>();
  for (int i = 0; i < 3; ++i) {
    const int k = (i + 1) % 3;
    const int l = (i + 2) % 3;
    r.position_quantity(i) = divJ(i + 1, 0);
    r.angular_momentum(i) = divJ(k + 1, l + 1);
  }
  return r;
}

namespace {

// Central difference of a closure over (a, b) in its first or second argument.
template <typename F>
auto d_arg(const F& f, double a, double b, int k, const DifferenceOptions& opts,
           const std::optional<Box>& domain) {
  const auto g = [&](const VecX& y) { return f(y(0), y(1)); };
  return partial(g, Eigen::Vector2d(a, b), k, opts, domain);
}

Vec3 zero_or(const std::function<Vec3(double, double)>& f, double t, double s) {
  return f ? f(t, s) : Vec3::Zero();
}

}  // namespace

// --- Pointwise ---------------------------------------------------------------

Vec3 PointwiseMotion::x(double t) const {
  if (position) return position(t);
  const PointwiseTorsor s = torsor(t);
  if (s.m <= 0.0) throw NonpositiveMass("pointwise object with nonpositive mass");
  return s.q / s.m;
}

namespace {

void require_position_origin(const OriginMotion& origin) {
  if (!origin.C_field) throw Error("pointwise and rod position balances use the origin C = (0, x)");
  const Vec4 probe(0.3, 1.1, -0.7, 2.3);
  const Vec4 c = origin.C(probe);
  if (std::abs(c(0)) > 1e-15 || max_abs(Vec3(c.tail<3>() - probe.tail<3>())) > 1e-15)
    throw Error("pointwise and rod position balances use the origin C = (0, x)");
}

}  // namespace

BalanceResidual residual_pointwise(const PointwiseMotion& motion, const GalileanConnection& conn,
                                   const OriginMotion& origin, double t) {
  require_position_origin(origin);
  const PointwiseTorsor s = motion.torsor(t);
  if (s.m <= 0.0) throw NonpositiveMass("pointwise object with nonpositive mass");
  const auto& opts = motion.differences;
  const double mdot = derivative([&](double u) { return motion.torsor(u).m; }, t, opts);
  const Vec3 pdot = derivative([&](double u) { return motion.torsor(u).p; }, t, opts);
  const Vec3 qdot = derivative([&](double u) { return motion.torsor(u).q; }, t, opts);
  const Vec3 ldot = derivative([&](double u) { return motion.torsor(u).l; }, t, opts);

  const Vec3 x = motion.x(t);
  const Vec3 v = s.p / s.m;
  const Vec3 Om = conn.spin(t, x);
  const Vec3 force = s.m * (conn.gravity(t, x) - 2.0 * Om.cross(v));
  const Vec3 l0 = s.l - x.cross(s.p);

  BalanceResidual r;
  r.mass = mdot;
  r.linear_momentum = pdot - force;
  r.position_quantity = qdot - s.p;
  r.angular_momentum = ldot + Om.cross(l0) - x.cross(force);
  return r;
}

BalanceResidual residual_pointwise_general(const PointwiseMotion& motion,
                                           const GalileanConnection& conn,
                                           const OriginMotion& origin, double t) {
  MediumField f;
  f.dim = 0;
  f.differences = motion.differences;
  f.embedding = [&motion](const VecX& xi) { return spacetime(xi(0), motion.x(xi(0))); };
  f.torsor = [&motion](const VecX& xi) {
    const Torsor tau = motion.torsor(xi(0)).to_torsor();
    TorsorComponents c = TorsorComponents::zero(0);
    c.T.row(0) = tau.T().transpose();
    c.J[0] = tau.J();
    return c;
  };
  const Vec3 x = motion.x(t);
  const auto chr = PullbackChristoffels::flat_material(
      0, christoffels_at(conn, t, x), gamma_A_matrix(conn, origin, t, x, motion.differences));
  VecX xi(1);
  xi << t;
  return pack_divergence(div_T(f, xi, chr), div_J(f, xi, chr));
}

// --- Cauchy ------------------------------------------------------------------

CauchyState cauchy_state(const MediumField& f, const Vec4& X) {
  const Mat4 T = f.components(VecX(X)).T.transpose();  // T^{beta gamma}
  CauchyState s;
  s.rho = T(0, 0);
  if (s.rho <= 0.0) throw NonpositiveMass("Cauchy medium with nonpositive density");
  s.v = T.block<1, 3>(0, 1).transpose() / s.rho;
  s.sigma = s.rho * s.v * s.v.transpose() - T.block<3, 3>(1, 1);
  return s;
}

BalanceResidual residual_cauchy(const MediumField& f, const GalileanConnection& conn,
                                const Vec4& X) {
  if (f.dim != 3) throw Error("residual_cauchy needs a 3D medium");
  const VecX xi(X);
  const auto& opts = f.differences;
  const CauchyState s = cauchy_state(f, X);
  const Vec3 x = X.tail<3>();

  const auto rho_v = [&](const VecX& y) -> Vec4 {
    const Mat4 T = f.torsor(y).T;  // ^gamma T^beta
    return T.col(0);               // T^{0 gamma} = (rho, rho v)
  };
  const auto vel = [&](const VecX& y) -> Vec3 {
    const Mat4 T = f.torsor(y).T;
    return T.block<3, 1>(1, 0) / T(0, 0);
  };
  const auto sigma_row = [&](const VecX& y, int j) -> Vec3 {
    const Mat4 T = f.torsor(y).T.transpose();
    const double rho = T(0, 0);
    const Vec3 v = T.block<1, 3>(0, 1).transpose() / rho;
    const Mat3 sig = rho * v * v.transpose() - T.block<3, 3>(1, 1);
    return sig.col(j);
  };

  BalanceResidual r;
  for (int g = 0; g < 4; ++g) r.mass += partial(rho_v, xi, g, opts, f.domain)(g);

  Vec3 accel = partial(vel, xi, 0, opts, f.domain);
  Vec3 div_sigma = Vec3::Zero();
  for (int j = 0; j < 3; ++j) {
    accel += partial(vel, xi, j + 1, opts, f.domain) * s.v(j);
    div_sigma += partial([&](const VecX& y) { return sigma_row(y, j); }, xi, j + 1, opts, f.domain);
  }
  const Vec3 Om = conn.spin(X(0), x);
  r.linear_momentum =
      s.rho * accel - div_sigma - s.rho * (conn.gravity(X(0), x) - 2.0 * Om.cross(s.v));

  const auto chr = PullbackChristoffels::identity_embedding(conn, OriginMotion::proper(), X, opts);
  const BalanceResidual ang = pack_divergence(Vec4::Zero(), div_J(f, xi, chr));
  r.position_quantity = ang.position_quantity;
  r.angular_momentum = ang.angular_momentum;
  return r;
}

Vec4 cauchy_divergence(const MediumField& f, const GalileanConnection& conn, const Vec4& X) {
  const VecX xi(X);
  const auto [dT, dJ] = f.divergence_of_components(xi);
  (void)dJ;
  const Mat4 T = f.components(xi).T.transpose();
  const Vec3 x = X.tail<3>();
  const Mat3 W = skew(conn.spin(X(0), x));
  Vec4 out = dT;
  out.tail<3>() += -conn.gravity(X(0), x) * T(0, 0) +
                   W * (T.block<3, 1>(1, 0) + T.block<1, 3>(0, 1).transpose());
  return out;
}

// --- Rods --------------------------------------------------------------------

BalanceResidual residual_1d(const RodFields& rod, const GalileanConnection& conn, double t,
                            double s, RodAngularTerms* terms) {
  const Curve1D& c = rod.curve;
  const auto& opts = c.differences;
  const auto& dom = rod.domain;
  const Vec3 x = c.position(t, s);
  const Vec3 n = c.n(t, s);
  const Vec3 v = c.v(t, s);
  const double vt = v.dot(n);
  const double rho = rod.rho_l(t, s);
  const Vec3 F = rod.F(t, s);
  const Vec3 g = conn.gravity(t, x);
  const Vec3 Om = conn.spin(t, x);

  const auto flux = [&](double a, double b) { return rod.rho_l(a, b) * c.v_t(a, b); };
  const auto vel = [&](double a, double b) { return c.v(a, b); };
  const auto rho_l = [&](double a, double b) { return rod.rho_l(a, b); };
  const auto force = [&](double a, double b) { return rod.F(a, b); };
  const auto q = [&](double a, double b) { return zero_or(rod.q, a, b); };
  const auto l = [&](double a, double b) { return zero_or(rod.l, a, b); };
  const auto lstar = [&](double a, double b) { return zero_or(rod.l_star, a, b); };
  const auto Mstar = [&](double a, double b) { return zero_or(rod.M_star, a, b); };

  BalanceResidual r;
  r.mass = d_arg(rho_l, t, s, 0, opts, dom) + d_arg(flux, t, s, 1, opts, dom);
  const Vec3 accel = d_arg(vel, t, s, 0, opts, dom) + vt * d_arg(vel, t, s, 1, opts, dom);
  r.linear_momentum =
      rho * accel - d_arg(force, t, s, 1, opts, dom) - rho * (g - 2.0 * Om.cross(v));

  const Vec3 dq = rod.q ? Vec3(d_arg(q, t, s, 0, opts, dom)) : Vec3::Zero();
  const Vec3 dlstar = rod.l_star ? Vec3(d_arg(lstar, t, s, 1, opts, dom)) : Vec3::Zero();
  r.position_quantity = dq + dlstar - rho * v;

  RodAngularTerms a;
  a.dl_dt = rod.l ? Vec3(d_arg(l, t, s, 0, opts, dom)) : Vec3::Zero();
  a.omega_cross_l = Om.cross(l(t, s));
  a.lstar_term = lstar(t, s).cross(Om.cross(n));
  a.dMstar_ds = rod.M_star ? Vec3(d_arg(Mstar, t, s, 1, opts, dom)) : Vec3::Zero();
  a.n_cross_F = n.cross(F);
  r.angular_momentum = a.dl_dt + a.omega_cross_l + a.lstar_term + a.dMstar_ds - a.n_cross_F;
  if (terms) *terms = a;
  return r;
}

MediumField rod_force_medium(const RodFields& rod) {
  MediumField f = rod_medium(rod.curve, [rod](double t, double s) {
    ForceMass1D fm;
    fm.rho_l = rod.rho_l(t, s);
    fm.v = rod.curve.v(t, s);
    fm.v_t = rod.curve.v_t(t, s);
    fm.F = rod.F(t, s);
    return fm;
  });
  f.domain = rod.domain;
  return f;
}

// --- Shells ------------------------------------------------------------------

namespace {

// Derivative along xi = (t, theta1, theta2) coordinate k with an explicit step.
template <typename F>
auto d_shell(const F& f, double t, const Vec2& th, int k, double h) {
  auto at = [&](double d) {
    Vec2 p = th;
    double tt = t;
    if (k == 0)
      tt += d;
    else
      p(k - 1) += d;
    return f(tt, p);
  };
  using R = std::decay_t<decltype(f(t, th))>;
  R out = (at(h) - at(-h)) / (2.0 * h);
  return out;
}

double coord(double t, const Vec2& th, int k) { return k == 0 ? t : th(k - 1); }

}  // namespace

BalanceResidual residual_2d(const ShellField& sf, const ShellTorsorFields& fields,
                            const GalileanConnection& conn, double t, double theta1,
                            double theta2, ShellTerms* terms) {
  const Vec2 th(theta1, theta2);
  const ShellChristoffels G = shell_christoffels(sf, conn, t, theta1, theta2);
  const double h2 = sf.h * sf.h / 12.0;
  const auto base = [&](int k) { return sf.step(coord(t, th, k)); };
  const auto nested = [&](int k) { return sf.nested_step(coord(t, th, k)); };

  const Vec3 x = sf.position(t, th);
  const Vec3 n = sf.n(t, th);
  const Mat23 c = sf.c(t, th);
  const Mat2 a = sf.first_form(t, th);
  const Mat2 b_mixed = a.inverse() * G.b;  // b^a_b
  const Vec3 v = sf.velocity(t, th);
  const Vec3 Om = conn.spin(t, x);

  const double rho_s = fields.rho_s(t, th);
  const double I = rho_s * h2;
  const Mat2 N = fields.N(t, th);
  const Vec2 Q = fields.Q(t, th);
  const Mat2 M = fields.M(t, th);

  const auto w_surface = [&](double tt, const Vec2& p) -> Vec2 { return sf.c(tt, p) * sf.w(tt, p); };
  const Vec2 wa = w_surface(t, th);
  const auto inertia_ww = [&](double tt, const Vec2& p) -> Mat2 {
    const Vec2 ws = w_surface(tt, p);
    return fields.rho_s(tt, p) * h2 * ws * ws.transpose();
  };

  // Covariant bar of a surface tensor X^{ba}: free index a.
  const auto bar = [&](const Mat2& X, const std::array<Mat2, 2>& dX) {
    Vec2 out = Vec2::Zero();
    for (int aa = 0; aa < 2; ++aa) {
      for (int b = 0; b < 2; ++b) {
        out(aa) += dX[b](b, aa);
        for (int cc = 0; cc < 2; ++cc) {
          out(aa) += G.G_abc[aa](b, cc) * X(b, cc) + G.G_abc[cc](cc, b) * X(b, aa);
        }
      }
    }
    return out;
  };

  std::array<Mat2, 2> dN, dIww, dM;
  Vec2 dQ;
  for (int b = 0; b < 2; ++b) {
    dN[b] = d_shell(fields.N, t, th, b + 1, base(b + 1));
    dM[b] = d_shell(fields.M, t, th, b + 1, base(b + 1));
    dQ(b) = d_shell(fields.Q, t, th, b + 1, base(b + 1))(b);
    dIww[b] = h2 == 0.0 ? Mat2::Zero() : Mat2(d_shell(inertia_ww, t, th, b + 1, nested(b + 1)));
  }
  const Mat2 Iww = I * wa * wa.transpose();
  const Mat2 Xm = N - Iww;
  const std::array<Mat2, 2> dXm{dN[0] - dIww[0], dN[1] - dIww[1]};

  const Vec3 body = rho_s * (conn.gravity(t, x) - 2.0 * Om.cross(v) - sf.acceleration(t, th));

  BalanceResidual r;
  r.mass = d_shell(fields.rho_s, t, th, 0, base(0)) + G.Phi_ab.trace() * rho_s;

  const Vec2 in_plane = bar(Xm, dXm) - b_mixed * Q + c * body;
  double Qbar = dQ.sum();
  for (int b = 0; b < 2; ++b)
    for (int cc = 0; cc < 2; ++cc) Qbar += G.G_abc[cc](b, cc) * Q(b);
  double bX = 0.0;
  for (int aa = 0; aa < 2; ++aa)
    for (int b = 0; b < 2; ++b) bX += G.b(aa, b) * Xm(b, aa);
  r.linear_momentum = Vec3(in_plane(0), in_plane(1), bX + Qbar + n.dot(body));

  ShellTerms st;
  const auto eps = [](const Mat2& Y) { return Y(0, 1) - Y(1, 0); };
  st.eps_N = eps(N);
  st.eps_bM = eps(b_mixed * M);
  st.eps_inertia = eps(I * (G.Phi_a + wa) * wa.transpose());
  const double in_plane_angular = st.eps_N - st.eps_bM - st.eps_inertia;

  st.M_bar = bar(M, dM);
  st.Q = Q;
  if (I != 0.0) {
    const Vec2 dwa = d_shell(w_surface, t, th, 0, nested(0));
    st.inertia = I * (dwa + G.Phi_ab * wa + G.Phi_ab.trace() * wa);
  }
  const Vec2 off_plane_angular = st.M_bar - st.Q - st.inertia;
  r.angular_momentum = Vec3(off_plane_angular(0), off_plane_angular(1), in_plane_angular);

  // Identity rows from the general divergence in the adapted chart.
  const MediumField medium = shell_medium(sf, fields);
  const PullbackChristoffels chr = shell_pullback(sf, conn, t, th);
  const Mat4 divJ = div_J(medium, Eigen::Vector3d(t, theta1, theta2), chr);
  st.identity_b0 = Vec2(divJ(1, 0), divJ(2, 0));
  st.identity_03 = divJ(0, 3);
  r.position_quantity = Vec3(st.identity_b0(0), st.identity_b0(1), st.identity_03);

  if (terms) *terms = st;
  return r;
}

MediumField shell_medium(const ShellField& sf, const ShellTorsorFields& fields) {
  MediumField f;
  f.dim = 2;
  f.differences = sf.differences;
  f.embedding = [](const VecX& xi) { return Vec4(xi(0), xi(1), xi(2), 0.0); };
  f.tangent_map = [](const VecX&) -> MatX {
    MatX U = MatX::Zero(4, 3);
    U(0, 0) = U(1, 1) = U(2, 2) = 1.0;
    return U;
  };
  f.torsor = [sf, fields](const VecX& xi) {
    const double t = xi(0);
    const Vec2 th(xi(1), xi(2));
    const double rho_s = fields.rho_s(t, th);
    const double I = rho_s * sf.h * sf.h / 12.0;
    const Vec2 wa = I == 0.0 ? Vec2::Zero() : Vec2(sf.c(t, th) * sf.w(t, th));
    const Mat2 N = fields.N(t, th);
    const Vec2 Q = fields.Q(t, th);
    const Mat2 M = fields.M(t, th);
    TorsorComponents c = TorsorComponents::zero(2);
    c.T(0, 0) = rho_s;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        c.T(a + 1, b + 1) = I * wa(a) * wa(b) - N(a, b);
        c.J[a + 1](b + 1, 3) = M(a, b);
        c.J[a + 1](3, b + 1) = -M(a, b);
      }
      c.T(a + 1, 3) = -Q(a);
    }
    return c;
  };
  return f;
}

PullbackChristoffels shell_pullback(const ShellField& sf, const GalileanConnection& conn,
                                    double t, const Vec2& theta) {
  const auto chart = [&sf](const Vec4& Xp) {
    const Vec2 th(Xp(1), Xp(2));
    return spacetime(Xp(0), sf.position(Xp(0), th) + Xp(3) * sf.n(Xp(0), th));
  };
  const Christoffels G = chart_christoffels(chart, conn, Vec4(t, theta(0), theta(1), 0.0));
  return PullbackChristoffels::adapted_chart(2, G, Mat4::Identity());
}

// --- 3D Cosserat -------------------------------------------------------------

namespace {

Mat3 or_zero(const std::function<Mat3(const Vec4&)>& f, const Vec4& X) {
  return f ? f(X) : Mat3::Zero();
}
Vec3 or_zero(const std::function<Vec3(const Vec4&)>& f, const Vec4& X) {
  return f ? f(X) : Vec3::Zero();
}

// Angular block: spatial entries (k, l) = a^i for (ikl) cyclic; (i, 0) = b^i.
Mat4 pack_moment(const Vec3& b, const Vec3& a) {
  Mat4 J = Mat4::Zero();
  J.block<3, 1>(1, 0) = b;
  J.block<1, 3>(0, 1) = -b.transpose();
  J.block<3, 3>(1, 1) = -skew(a);
  return J;
}

}  // namespace

std::vector<Mat4> cosserat_moments(const Cosserat3DState& s, const Vec4& X) {
  std::vector<Mat4> J(4);
  J[0] = pack_moment(or_zero(s.q, X), or_zero(s.l, X));
  const Mat3 ls = or_zero(s.l_star, X);
  const Mat3 Ms = or_zero(s.M_star, X);
  for (int r = 0; r < 3; ++r) J[r + 1] = pack_moment(ls.col(r), Ms.col(r));
  return J;
}

MediumField cosserat_medium(const Cosserat3DState& s) {
  MediumField f = identity_medium(s.T, [s](const Vec4& X) { return cosserat_moments(s, X); });
  f.differences = s.differences;
  f.domain = s.domain;
  return f;
}

BalanceResidual residual_3d_cosserat(const Cosserat3DState& s, const GalileanConnection& conn,
                                     double t, const Vec3& x) {
  const Vec4 X = spacetime(t, x);
  const VecX xi(X);
  const auto& opts = s.differences;
  const auto& dom = s.domain;
  const auto d = [&](const auto& f, int k) {
    return partial([&](const VecX& y) { return f(Vec4(y)); }, xi, k, opts, dom);
  };

  const Mat4 T = s.T(X);
  const Vec3 g = conn.gravity(t, x);
  const Vec3 Om = conn.spin(t, x);
  const Mat3 W = skew(Om);
  const Vec3 q = or_zero(s.q, X);
  const Vec3 l = or_zero(s.l, X);
  const Mat3 ls = or_zero(s.l_star, X);

  // d_gamma T^{beta gamma}
  Vec4 dT = Vec4::Zero();
  for (int gam = 0; gam < 4; ++gam) dT += d(s.T, gam).col(gam);

  BalanceResidual r;
  r.mass = dT(0);
  r.linear_momentum = dT.tail<3>() - (T(0, 0) * g - W * (T.block<1, 3>(0, 1).transpose() +
                                                         T.block<3, 1>(1, 0)));

  Vec3 div_ls = Vec3::Zero();
  Vec3 div_Ms = Vec3::Zero();
  for (int rr = 0; rr < 3; ++rr) {
    if (s.l_star) div_ls += d(s.l_star, rr + 1).col(rr);
    if (s.M_star) div_Ms += d(s.M_star, rr + 1).col(rr);
  }
  const Vec3 dq = s.q ? Vec3(d(s.q, 0)) : Vec3::Zero();
  const Vec3 dl = s.l ? Vec3(d(s.l, 0)) : Vec3::Zero();
  r.position_quantity =
      dq + Om.cross(q) + div_ls + T.block<1, 3>(0, 1).transpose() - T.block<3, 1>(1, 0);

  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3;
    const int j = (k + 2) % 3;
    double star = 0.0;
    for (int rr = 0; rr < 3; ++rr) star += W(j, rr) * ls(i, rr) - W(i, rr) * ls(j, rr);
    r.angular_momentum(k) = dl(k) + div_Ms(k) - q.cross(g)(k) + Om.cross(l)(k) + star +
                            T(j + 1, i + 1) - T(i + 1, j + 1);
  }
  return r;
}

}  // namespace torsor
