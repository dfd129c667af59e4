#include "lt/coleman.hpp"

#include <string>

namespace lt {

namespace {

TSer lift_user(const TowerCtx& T, const USer& g, int deg) {
  TSer out(TowerElem::zero(T), deg);
  for (int m = 0; m <= std::min(deg, g.degree()); ++m)
    out.mut(m) = TowerElem::from_unram(T, g[m]);
  return out;
}

USer frob_user(const USer& g, int i) {
  return g.mapped([&](const UnramElem& c) { return c.frobenius(i); });
}

// g composed with the degree-DN translate series (Horner over R_1).
TSer compose_translate(const TowerCtx& T, const USer& g, const TSer& s) {
  TSer acc = TSer::constant(TowerElem::from_unram(T, g[g.degree()]), s.degree());
  for (int m = g.degree() - 1; m >= 0; --m) {
    acc = acc * s;
    acc.mut(0) = acc[0] + TowerElem::from_unram(T, g[m]);
  }
  return acc;
}

}  // namespace

ColemanCtx build_coleman(const LTGroup& G, const ThetaData& th, const TorsionContext& tc,
                         const PeriodCtx& P, int DN) {
  const Zp& R = *G.zp;
  const TowerCtx& T = *P.R1;
  const int p = T.p();
  const int D = G.D;
  ColemanCtx cc;
  cc.G = &G;
  cc.th = &th;
  cc.tc = &tc;
  cc.P = &P;
  cc.DN = DN;

  cc.f_pow.assign(size_t(DN) + 1, Ser(Scalar::zero(R), DN));
  cc.f_pow[0] = Ser::constant(Scalar::from_int(R, 1), DN);
  Ser fdn = G.f.truncated(DN);
  for (int n = 1; n <= DN; ++n) cc.f_pow[size_t(n)] = cc.f_pow[size_t(n - 1)] * fdn;

  cc.pi1_pow.assign(size_t(D) + 1, TowerElem::from_int(T, 1));
  for (int j = 1; j <= D; ++j) cc.pi1_pow[size_t(j)] = cc.pi1_pow[size_t(j - 1)] * tc.pi1;

  // asymmetric bivariate group law, inner X to degree DN and outer Y deep
  // enough that the Y-truncation tail (v_P >= Dy+1 at the torsion point)
  // survives the triangular solve's division by pi^DN with headroom:
  // Dy = (p-1)(DN + headroom). lambda and exp_f are extended to match.
  const int headroom = 12;
  const int Dy = (p - 1) * (DN + headroom) + 2;
  const int Dext = Dy + DN;
  Ser lam_ext = formal_log(R, G.pi, Dext);
  Ser exp_ext = lam_ext.revert();
  Ser zx(Scalar::zero(R), DN);
  Biv lamX(zx, Dy), lamY(zx, Dy);
  lamX.mut(0) = lam_ext.truncated(DN);
  for (int j = 1; j <= Dy; ++j) {
    Ser cj(Scalar::zero(R), DN);
    cj.mut(0) = lam_ext[j];
    lamY.mut(j) = cj;
  }
  Biv arg = lamX + lamY;
  Biv acc(zx, Dy);
  {
    Ser top(Scalar::zero(R), DN);
    top.mut(0) = exp_ext[Dext];
    acc.mut(0) = top;
  }
  for (int m = Dext - 1; m >= 0; --m) {
    acc = acc * arg;
    Ser c0 = acc[0];
    c0.mut(0) = c0[0] + exp_ext[m];
    acc.mut(0) = c0;
  }
  // s1(X) = F(X, pi1) = sum_j acc[j](X) pi1^j; s_a = sigma_a(s1)
  std::vector<TowerElem> pi1p(size_t(Dy) + 1, TowerElem::from_int(T, 1));
  for (int j = 1; j <= Dy; ++j) pi1p[size_t(j)] = pi1p[size_t(j - 1)] * tc.pi1;
  TSer s1(TowerElem::zero(T), DN);
  for (int j = 0; j <= Dy; ++j) {
    const Ser& row = acc[j];
    for (int i = 0; i <= DN; ++i) {
      if (row[i].is_exact_zero()) continue;
      s1.mut(i) += pi1p[size_t(j)].mul_scalar(row[i]);
    }
  }
  if ((s1[0] - tc.pi1).zero_mod(1) == Cong::kNo)
    throw IdentityError("translate series has wrong constant term");
  cc.s.assign(size_t(p), s1);
  for (int a = 2; a < p; ++a)
    cc.s[size_t(a)] = s1.mapped([&](const TowerElem& c) { return c.sigma(a); });
  return cc;
}

USer norm_operator(const ColemanCtx& cc, const USer& g) {
  const TowerCtx& T = *cc.P->R1;
  const Zp& R = *cc.G->zp;
  const int p = T.p();
  const int DN = cc.DN;
  if (!g[0].is_unit()) throw ValuationError("norm operator needs a unit series");

  // H = g · prod_a sigma_a(g ∘ s1); g ∘ s_a = sigma_a(g ∘ s1) because the
  // coefficients of g are sigma-fixed.
  TSer G1 = compose_translate(T, g, cc.s[1]);
  TSer H = lift_user(T, g, DN);
  for (int a = 1; a < p; ++a) {
    TSer Ga = (a == 1) ? G1 : G1.mapped([&](const TowerElem& c) { return c.sigma(a); });
    H = H * Ga;
  }

  // triangular solve of sum_n b_n f^n = H (diagonal pi^n, certified loss n)
  std::vector<TowerElem> b(size_t(DN) + 1, TowerElem::zero(T));
  std::vector<Scalar> pi_pow(size_t(DN) + 1, Scalar::from_int(R, 1));
  for (int n = 1; n <= DN; ++n) pi_pow[size_t(n)] = pi_pow[size_t(n - 1)] * cc.G->pi;
  for (int n = 0; n <= DN; ++n) {
    TowerElem rhs = H[n];
    for (int m = 0; m < n; ++m) {
      const Scalar& c = cc.f_pow[size_t(m)][n];
      if (c.is_exact_zero()) continue;
      rhs -= b[size_t(m)].mul_scalar(c);
    }
    b[size_t(n)] = rhs.div_scalar(pi_pow[size_t(n)]);
  }

  // the norm lands in O_L[[X]]
  USer out(UnramElem::zero(*T.L), DN);
  for (int n = 0; n <= DN; ++n) {
    for (int t = 1; t < p - 1; ++t)
      if (b[size_t(n)].coord(t).zero_mod(1) == Cong::kNo)
        throw IdentityError("norm image not expressible in [pi](X) at degree " +
                            std::to_string(n));
    out.mut(n) = b[size_t(n)].coord(0);
  }
  return out;
}

namespace {

CertResult cert_from(const ColemanCtx& cc, const USer& ng, const USer& g) {
  USer gf = frob_user(g, 1).truncated(cc.DN);
  CertResult r;
  r.prec = 1 << 20;
  for (int n = 0; n <= cc.DN; ++n) {
    UnramElem d = ng[n] - gf[n];
    for (int j = 0; j < cc.P->R1->L->d; ++j) {
      const Scalar& s = d.coord(j);
      if (s.is_zero_state()) {
        if (s.aprec() < r.prec) {
          r.prec = s.aprec();
          r.sharp = false;
        }
      } else if (int(*s.valuation()) < r.prec) {
        r.prec = int(*s.valuation());
        r.sharp = true;  // congruence fails one level up
      }
    }
  }
  return r;
}

}  // namespace

CertResult check_coherence(const ColemanCtx& cc, const USer& g) {
  return cert_from(cc, norm_operator(cc, g), g);
}

NormCoherentUnit gen_norm_coherent(const ColemanCtx& cc, uint64_t seed, int target_prec,
                                   int max_iters) {
  const UnramCtx& L = *cc.P->R1->L;
  const Zp& R = *L.zp;
  const int D = cc.G->D;
  Rng rng(seed);
  const int M = target_prec + 2;
  USer g(UnramElem::zero(L), D);
  for (int m = 1; m <= D; ++m) {
    UnramElem c = UnramElem::zero(L);
    for (int j = 0; j < L.d; ++j)
      c.coord_mut(j) =
          Scalar::from_int(R, (long long)(rng() % R.pow(std::min(M + 2, R.cap()))));
    g.mut(m) = c;
  }
  g.mut(0) = UnramElem::from_int(
      L, 1 + (long long)R.p() * (long long)(rng() % R.pow(std::min(M, R.cap() - 1))));

  for (int it = 0; it < max_iters; ++it) {
    USer ng = norm_operator(cc, g);
    CertResult cr = cert_from(cc, ng, g);
    if (cr.prec >= target_prec) {
      NormCoherentUnit u;
      u.g = g;
      u.cert_degree = cc.DN;
      u.cert_prec = cr.prec;
      return u;
    }
    USer next = frob_user(ng, -1);
    for (int m = 0; m <= cc.DN; ++m) g.mut(m) = next[m].exactified();
  }
  throw ConvergenceError("norm-coherent iteration did not reach the target precision");
}

NormCoherentUnit unit_product(const ColemanCtx& cc, const NormCoherentUnit& a,
                              const NormCoherentUnit& b, int target_prec) {
  NormCoherentUnit u;
  u.g = a.g * b.g;
  CertResult cr = check_coherence(cc, u.g);
  if (cr.prec < target_prec)
    throw IdentityError("product of coherent units failed recertification");
  u.cert_degree = cc.DN;
  u.cert_prec = cr.prec;
  return u;
}

ULevels u_levels(const ColemanCtx& cc, const NormCoherentUnit& u, int assert_prec) {
  const TowerCtx& T = *cc.P->R1;
  const int p = T.p();
  ULevels out;
  USer gfinv = frob_user(u.g, -1);
  out.u1 = lift_user(T, gfinv, u.g.degree()).evaluate(cc.tc->pi1);
  {
    VP v = (out.u1 - TowerElem::from_int(T, 1)).vP();
    if (v.lb < 1) throw IdentityError("u1 is not a 1-unit of R_1");
  }
  UnramElem g0 = u.g[0];
  out.u0 = g0 * g0.frobenius(-1).inverse();

  TowerElem prod = out.u1;
  for (int a = 2; a < p; ++a) prod = prod * out.u1.sigma(a);
  Cong c = (prod - TowerElem::from_unram(T, out.u0)).zero_mod(assert_prec);
  if (c == Cong::kNo)
    throw IdentityError("norm compatibility prod sigma_a(u1) = u0 failed");
  out.norm_compat_prec = assert_prec;
  return out;
}

LogTilde log_tilde(const ColemanCtx& cc, const NormCoherentUnit& u, bool crosscheck,
                   int assert_prec) {
  const TowerCtx& T = *cc.P->R1;
  const Zp& R = *cc.G->zp;
  const int p = T.p();
  LogTilde out;
  USer lg = log_series(u.g);
  USer lgf = frob_user(lg, 1);
  USer comp = lgf.compose(map_coeffs<UnramElem>(
      cc.G->f, [&](const Scalar& c) { return UnramElem::from_scalar(*T.L, c); }));
  out.lt = lg - comp.div_small(R.p());
  out.crosscheck_prec = -1;

  if (crosscheck) {
    // first displayed form: log g - (1/p) sum_lambda log g(X [+] lambda)
    TSer sum = lift_user(T, lg, cc.DN);
    TSer G1log = log_series(compose_translate(T, u.g, cc.s[1]));
    for (int a = 1; a < p; ++a)
      sum += (a == 1) ? G1log
                      : G1log.mapped([&](const TowerElem& c) { return c.sigma(a); });
    TSer first = lift_user(T, lg, cc.DN) - sum.div_small(R.p());
    TSer second = lift_user(T, out.lt, cc.DN);
    if ((first - second).zero_mod(assert_prec) == Cong::kNo)
      throw IdentityError("log-tilde: the two displayed forms disagree");
    out.crosscheck_prec = assert_prec;
  }
  return out;
}

MeasureSeries measure_of(const ColemanCtx& cc, const LogTilde& lt) {
  MeasureSeries A;
  A.cc = &cc;
  A.lt = lt.lt;
  A.finv = false;
  return A;
}

MeasureSeries twist_finv(const MeasureSeries& A) {
  MeasureSeries B = A;
  B.lt = frob_user(A.lt, -1);
  B.finv = !A.finv;
  return B;
}

namespace {

// Ω^k h̃^k at the dictionary point tau_i (tau_0 = 0), with the (p/pi)^k
// semilinear factor for the F^{-1}-twisted measure.
PeriodElem measure_eval(const MeasureSeries& A, const USer& hk, int k, int i) {
  const ColemanCtx& cc = *A.cc;
  const TowerCtx& T = *cc.P->R1;
  TowerElem val = (i == 0)
                      ? TowerElem::from_unram(T, hk[0])
                      : lift_user(T, hk, hk.degree()).evaluate(cc.tc->tau[size_t(i)]);
  PeriodElem out = PeriodElem::monomial(*cc.P, val, k);
  if (A.finv) out = out.mul_scalar(cc.P->twist(k, -1));
  return out;
}

}  // namespace

PeriodElem moment(const MeasureSeries& A, int k) {
  USer hk = dop(A.lt, A.cc->G->lam_prime_inv, k);
  return measure_eval(A, hk, k, 0);
}

CycElem restricted_moment(const MeasureSeries& A, int a, int k) {
  const ColemanCtx& cc = *A.cc;
  const int p = cc.P->R1->p();
  USer hk = dop(A.lt, cc.G->lam_prime_inv, k);
  CycElem sum = CycElem::zero(*cc.P);
  for (int i = 0; i < p; ++i) {
    long long z = -(long long)i * a;
    sum += CycElem::zeta_monomial(*cc.P, measure_eval(A, hk, k, i), z);
  }
  return sum.div_small(p);
}

PeriodElem twisted_moment(const MeasureSeries& A, int k) {
  USer hk = dop(A.lt, A.cc->G->lam_prime_inv, k);
  return measure_eval(A, hk, k, 1);
}

PeriodElem moment_direct(const MeasureSeries& A, int k) {
  // assemble A(X) = lt(theta(X)) (resp. its twist) to degree k, then apply
  // (1+X) d/dX k times and read the constant term
  const ColemanCtx& cc = *A.cc;
  const PeriodCtx& P = *cc.P;
  const TowerCtx& T = *P.R1;
  const OSer& theta = A.finv ? cc.th->theta_finv : cc.th->theta;
  const int deg = k;
  using PSer = TruncSeries<PeriodElem>;
  PSer a_ser(PeriodElem::zero(P), deg);
  OSer th_tr = theta.truncated(deg);
  OSer pw(OmegaScalar::zero(P), deg);
  pw.mut(0) = OmegaScalar::from_int(P, 1);
  for (int j = 0; j <= std::min(deg, A.lt.degree()); ++j) {
    if (j > 0) pw = pw * th_tr;
    const UnramElem& c = A.lt[j];
    if (c.is_exact_zero()) continue;
    PeriodElem clift = PeriodElem::from_tower(P, TowerElem::from_unram(T, c));
    for (int m = 0; m <= deg; ++m) {
      if (pw[m].is_exact_zero()) continue;
      a_ser.mut(m) += lift_omega(pw[m]) * clift;
    }
  }
  for (int t = 0; t < k; ++t) {
    PSer der = a_ser.derivative();
    PSer xd = der;
    for (int m = xd.degree(); m >= 1; --m) xd.mut(m) = xd[m - 1];
    xd.mut(0) = PeriodElem::zero(P);
    a_ser = der + xd;
  }
  return a_ser[0];
}

}  // namespace lt
