#include "lt/lubin_tate.hpp"

#include <string>

#include "lt/budgets.hpp"

namespace lt {

namespace {

Ser x_series(const Zp& R, int D) { return Ser::linear(Scalar::from_int(R, 1), D); }

// log(1+T) = sum_{i>=1} (-1)^{i-1} T^i / i
Ser log_one_plus(const Zp& R, int D) {
  Ser s(Scalar::zero(R), D);
  for (int i = 1; i <= D; ++i)
    s.mut(i) = Scalar::from_int(R, i % 2 ? 1 : -1) / Scalar::from_int(R, i);
  return s;
}

TowerElem lift_scalar_tower(const TowerCtx& T, const Scalar& c) {
  return TowerElem::from_unram(T, UnramElem::from_scalar(*T.L, c));
}

}  // namespace

const Ser& LTGroup::mult_by(const Scalar& a) const {
  std::pair<uint64_t, int> key;
  auto v = a.valuation();
  if (!v)
    key = {0, 1 << 20};  // zero to precision: the zero endomorphism
  else
    key = {a.lift(), 0};
  auto it = mult_cache.find(key);
  if (it != mult_cache.end()) return it->second;
  Ser arg = lambda.mapped([&](const Scalar& c) { return c * a; });
  Ser m = exp_f.compose(arg);
  return mult_cache.emplace(key, std::move(m)).first->second;
}

const Ser& LTGroup::mult_by_int(long long a) const {
  return mult_by(Scalar::from_int(*zp, a));
}

Ser formal_log(const Zp& R, const Scalar& pi, int deg) {
  Ser f(Scalar::zero(R), deg);
  f.mut(1) = pi;
  if (deg >= R.p()) f.mut(int(R.p())) = Scalar::from_int(R, 1);
  // lambda = lim f^{(n)} / pi^n coefficientwise; the coefficient of T^m
  // stabilizes mod p^cap well before n = cap, and the last two iterates are
  // compared as the stabilization certificate.
  const int iters = R.cap() + 2;
  Ser fn = f;
  Scalar pin = pi;
  Ser prev = x_series(R, deg);
  Ser lam = prev;
  for (int n = 1; n <= iters; ++n) {
    lam = fn.mapped([&](const Scalar& c) { return c / pin; });
    if (n < iters) {
      prev = lam;
      fn = f.compose(fn);
      pin = pin * pi;
    }
  }
  if ((lam - prev).zero_mod(R.cap() - 4) == Cong::kNo)
    throw ConvergenceError("formal logarithm failed to stabilize");
  return lam;
}

LTGroup build_group(const Zp& R, const Scalar& pi, int D) {
  auto vpi = pi.valuation();
  if (!vpi || *vpi != 1) throw HypothesisError("build_group requires v_p(pi) = 1");
  LTGroup G;
  G.zp = &R;
  G.pi = pi;
  G.D = D;

  G.f = Ser(Scalar::zero(R), D);
  G.f.mut(1) = pi;
  if (D >= R.p()) G.f.mut(int(R.p())) = Scalar::from_int(R, 1);

  G.lambda = formal_log(R, pi, D);
  if ((G.lambda[1] - Scalar::from_int(R, 1)).zero_mod(R.cap() - 2) == Cong::kNo)
    throw IdentityError("lambda'(0) != 1");
  G.exp_f = G.lambda.revert();
  G.lam_prime_inv = G.lambda.derivative().inverse();

  // group law F(X,Y) = exp_f(lambda(X) + lambda(Y)) at bidegree (D/2, D/2)
  const int Db = D / 2;
  Ser zx(Scalar::zero(R), Db);
  Biv lamX(zx, Db), lamY(zx, Db);
  lamX.mut(0) = G.lambda.truncated(Db);
  for (int j = 1; j <= Db; ++j) {
    Ser cj(Scalar::zero(R), Db);
    cj.mut(0) = G.lambda[j];
    lamY.mut(j) = cj;
  }
  Biv arg = lamX + lamY;
  Biv acc(zx, Db);
  {
    Ser top(Scalar::zero(R), Db);
    top.mut(0) = G.exp_f[G.exp_f.degree()];
    acc.mut(0) = top;
  }
  for (int m = G.exp_f.degree() - 1; m >= 0; --m) {
    acc = acc * arg;
    Ser c0 = acc[0];
    c0.mut(0) = c0[0] + G.exp_f[m];
    acc.mut(0) = c0;
  }
  G.group_law = acc;
  return G;
}

ThetaData build_theta(const LTGroup& G, const PeriodCtx& P) {
  const Zp& R = *G.zp;
  const int D = G.D;
  ThetaData th;
  Ser logT = log_one_plus(R, D);
  th.log_pow.assign(size_t(D) + 1, Ser(Scalar::zero(R), D));
  th.lam_pow.assign(size_t(D) + 1, Ser(Scalar::zero(R), D));
  th.log_pow[0] = Ser::constant(Scalar::from_int(R, 1), D);
  th.lam_pow[0] = th.log_pow[0];
  for (int j = 1; j <= D; ++j) {
    th.log_pow[size_t(j)] = th.log_pow[size_t(j - 1)] * logT;
    th.lam_pow[size_t(j)] = th.lam_pow[size_t(j - 1)] * G.lambda;
  }

  OmegaScalar oz = OmegaScalar::zero(P);
  th.theta = OSer(oz, D);
  th.theta_finv = OSer(oz, D);
  th.eta = OSer(oz, D);

  // theta_m = sum_j exp_f[j] Ω^j [log^j]_m; the F^{-1} twist scales the Ω^j
  // component by (p/pi)^j.
  std::vector<Scalar> ppi_pow(size_t(D) + 1, Scalar::from_int(R, 1));
  for (int j = 1; j <= D; ++j) ppi_pow[size_t(j)] = ppi_pow[size_t(j - 1)] * P.p_over_pi;
  for (int m = 1; m <= D; ++m) {
    OmegaScalar acc = oz, accf = oz;
    for (int j = 1; j <= m; ++j) {
      Scalar c = G.exp_f[j] * th.log_pow[size_t(j)][m];
      if (c.is_exact_zero()) continue;
      acc += OmegaScalar::monomial(P, c, j);
      accf += OmegaScalar::monomial(P, c * ppi_pow[size_t(j)], j);
    }
    th.theta.mut(m) = acc;
    th.theta_finv.mut(m) = accf;
  }

  // eta_m = sum_j (1/j!) ((pi/p) Ω^{-1})^j [lambda^j]_m
  std::vector<Scalar> coef(size_t(D) + 1, Scalar::from_int(R, 1));
  {
    Scalar inv_fact = Scalar::from_int(R, 1), pip_pow = Scalar::from_int(R, 1);
    for (int j = 1; j <= D; ++j) {
      inv_fact = inv_fact / Scalar::from_int(R, j);
      pip_pow = pip_pow * P.pi_over_p;
      coef[size_t(j)] = inv_fact * pip_pow;
    }
  }
  for (int m = 1; m <= D; ++m) {
    OmegaScalar acc = oz;
    for (int j = 1; j <= m; ++j) {
      Scalar c = coef[size_t(j)] * th.lam_pow[size_t(j)][m];
      if (c.is_exact_zero()) continue;
      acc += OmegaScalar::monomial(P, c, -j);
    }
    th.eta.mut(m) = acc;
  }
  return th;
}

OSer theta_at_log_multiple(const ThetaData& th, const PeriodCtx& P, long long mult) {
  const Zp& R = *P.R1->L->zp;
  const int D = th.theta.degree();
  OmegaScalar oz = OmegaScalar::zero(P);
  OSer out(oz, D);
  // theta(W) for log(1+W) = mult·log(1+T): scale the Ω^j component by mult^j.
  std::vector<Scalar> mpow(size_t(D) + 1, Scalar::from_int(R, 1));
  for (int j = 1; j <= D; ++j)
    mpow[size_t(j)] = mpow[size_t(j - 1)] * Scalar::from_int(R, mult);
  for (int m = 1; m <= D; ++m) {
    OmegaScalar acc = oz;
    for (int j = 1; j <= m; ++j) {
      Scalar base = th.theta[m].component(j);
      if (base.is_exact_zero()) continue;
      acc += OmegaScalar::monomial(P, base * mpow[size_t(j)], j);
    }
    out.mut(m) = acc;
  }
  return out;
}

Ser biv_subst(const Biv& F, const Ser& u, const Ser& v) {
  // Horner over the outer variable: F = sum_j row_j(X) Y^j with Y <- v, X <- u.
  int J = F.degree();
  Ser acc = F[J].compose(u);
  for (int j = J - 1; j >= 0; --j) acc = acc * v + F[j].compose(u);
  return acc;
}

OBiv theta_hom_defect(const LTGroup& G, const ThetaData& th, const PeriodCtx& P, int b) {
  const Zp& R = *G.zp;
  OmegaScalar oz = OmegaScalar::zero(P);
  OmegaScalar o1 = OmegaScalar::from_int(P, 1);
  using OX = TruncSeries<OmegaScalar>;
  OX zx(oz, b);
  OBiv W(zx, b);
  // W = X + Y + XY
  {
    OX x = OX::linear(o1, b);
    W.mut(0) = x;
    OX one_plus_x = x;
    one_plus_x.mut(0) = o1;
    W.mut(1) = one_plus_x;
  }
  auto const_biv = [&](const OmegaScalar& c) {
    OBiv cb(zx, b);
    OX cx(oz, b);
    cx.mut(0) = c;
    cb.mut(0) = cx;
    return cb;
  };
  // LHS: theta(W) by Horner
  OSer theta_b = th.theta.truncated(2 * b);
  OBiv lhs = const_biv(theta_b[theta_b.degree()]);
  for (int m = theta_b.degree() - 1; m >= 0; --m)
    lhs = lhs * W + const_biv(theta_b[m]);

  // RHS: F(theta(X), theta(Y)) — substitute X first, then Horner over Y.
  OX thetaX(oz, b);
  for (int m = 0; m <= b; ++m) thetaX.mut(m) = theta_b[m];
  auto lift_ser = [&](const Ser& s) {
    OX out(oz, b);
    for (int m = 0; m <= std::min(b, s.degree()); ++m)
      out.mut(m) = OmegaScalar::from_scalar(P, s[m]);
    return out;
  };
  std::vector<OX> rows;
  int J = std::min(G.group_law.degree(), b);
  for (int j = 0; j <= J; ++j) rows.push_back(lift_ser(G.group_law[j]).compose(thetaX));
  OBiv thetaY(zx, b);
  for (int j = 0; j <= b; ++j) {
    OX cj(oz, b);
    cj.mut(0) = theta_b[j];
    thetaY.mut(j) = cj;
  }
  OBiv rhs(zx, b);
  {
    OBiv acc(zx, b);
    acc.mut(0) = rows[size_t(J)];
    for (int j = J - 1; j >= 0; --j) {
      acc = acc * thetaY;
      OX c0 = acc[0] + rows[size_t(j)];
      acc.mut(0) = c0;
    }
    rhs = acc;
  }
  return lhs - rhs;
}

TorsionContext build_torsion(const LTGroup& G, const ThetaData& th, const PeriodCtx& P,
                             int assert_prec) {
  const TowerCtx& T = *P.R1;
  const Zp& R = *G.zp;
  const int p = T.p();
  TorsionContext tc;
  tc.P = &P;
  tc.G = &G;
  tc.pi1 = TowerElem::pi1_pow(T, 1);

  auto require = [&](Cong c, const std::string& what) {
    if (c == Cong::kNo) throw IdentityError(what + ": certified failure");
    if (c == Cong::kUnknown) throw PrecisionError(what + ": insufficient precision");
  };

  // [pi]_f(pi1) = pi1 (pi + pi1^{p-1}) = 0
  {
    TowerElem val = G.f.evaluate_mapped(
        [&](const Scalar& c) { return lift_scalar_tower(T, c); }, tc.pi1);
    require(val.zero_mod(R.cap() - 1), "[pi]_f(pi1) = 0");
  }

  // forcing identity (series level): [pi] ∘ theta^{F^{-1}} = theta ∘ [p]_{G_m}
  {
    OSer tf = th.theta_finv;
    OSer tfp = tf;
    for (int i = 1; i < p; ++i) tfp = tfp * tf;
    OSer lhs = tfp + tf.mul_scalar(G.pi);
    OSer rhs = theta_at_log_multiple(th, P, p);
    require((lhs - rhs).zero_mod(assert_prec), "[pi] o theta^Finv = theta o [p]_Gm");
  }

  // forcing identity: [p]_{G_m} ∘ eta = eta^F ∘ [pi]
  {
    OSer one_plus = th.eta;
    one_plus.mut(0) = one_plus[0] + OmegaScalar::from_int(P, 1);
    OSer lhs = one_plus;
    for (int i = 1; i < p; ++i) lhs = lhs * one_plus;
    lhs.mut(0) = lhs[0] - OmegaScalar::from_int(P, 1);
    OSer f_o = map_coeffs<OmegaScalar>(
        G.f, [&](const Scalar& c) { return OmegaScalar::from_scalar(P, c); });
    OSer eta_f = th.eta.mapped([](const OmegaScalar& c) { return c.frobenius(1); });
    OSer rhs = eta_f.compose(f_o);
    require((lhs - rhs).zero_mod(assert_prec), "[p]_Gm o eta = eta^F o [pi]");
  }

  // inverse-coordinate contract: theta^{F^{-1}}(eta(X)) = X
  {
    OSer comp = th.theta_finv.compose(th.eta);
    OSer x(OmegaScalar::zero(P), comp.degree());
    if (comp.degree() >= 1) x.mut(1) = OmegaScalar::from_int(P, 1);
    require((comp - x).zero_mod(assert_prec), "theta^Finv o eta = X");
  }

  // the evaluation dictionary: tau[i] = [i]_f(pi1) = omega(i) pi1
  tc.tau.assign(size_t(p), TowerElem::zero(T));
  for (int i = 1; i < p; ++i) {
    tc.tau[size_t(i)] = tc.pi1.mul_scalar(T.teich[size_t(i)]);
    TowerElem val = G.f.evaluate_mapped(
        [&](const Scalar& c) { return lift_scalar_tower(T, c); }, tc.tau[size_t(i)]);
    require(val.zero_mod(R.cap() - 1), "[pi]_f(tau_i) = 0");
    // the dictionary's p evaluation points are pairwise distinct
    for (int j = 1; j < i; ++j) {
      VP v = (tc.tau[size_t(i)] - tc.tau[size_t(j)]).vP();
      if (!(v.exact && v.lb == 1))
        throw IdentityError("torsion points tau_i are not distinct");
    }
  }
  // sigma_a permutes the dictionary the same way it permutes zeta-powers
  for (int i = 1; i < p; ++i)
    for (int a = 1; a < p; ++a) {
      TowerElem lhs = tc.tau[size_t(i)].sigma(a);
      require((lhs - tc.tau[size_t(a * i % p)]).zero_mod(R.cap() - 1),
              "sigma_a(tau_i) = tau_{ai}");
    }

  // cyclotomic-layer mechanics: zeta^p = 1, zeta != 1, sum over roots is 0
  {
    CycElem zeta = tc.zeta(1);
    CycElem one = CycElem::from_int(P, 1);
    require((zeta.pow_u(uint64_t(p)) - one).zero_mod(assert_prec), "zeta1^p = 1");
    if ((zeta - one).zero_mod(1) != Cong::kNo)
      throw IdentityError("zeta1 = 1: the cyclotomic generator is trivial");
    CycElem s = CycElem::zero(P);
    for (int i = 0; i < p; ++i) s += tc.zeta(i);
    require(s.zero_mod(assert_prec), "sum over the p-th roots of unity");

    // sigma_a(zeta1) = zeta1^{m(a)}
    tc.m_of_a.assign(size_t(p), 0);
    tc.m_of_a[1] = 1;
    for (int a = 2; a < p; ++a) {
      CycElem za = zeta.sigma(a);
      int found = 0;
      for (int m = 1; m < p; ++m) {
        if ((za - tc.zeta(m)).zero_mod(assert_prec) == Cong::kYes) {
          found = m;
          break;
        }
      }
      if (!found)
        throw IdentityError("sigma_a(zeta1) is not a power of zeta1 at a=" +
                            std::to_string(a));
      tc.m_of_a[size_t(a)] = found;
    }
  }
  tc.realized_prec = assert_prec;
  return tc;
}

}  // namespace lt
