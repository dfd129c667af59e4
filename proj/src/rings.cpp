#include "lt/rings.hpp"

namespace lt {

namespace {

int mult_order_mod_p(int64_t x, int64_t p) {
  int64_t y = x % p;
  if (y <= 0) y += p;
  if (y % p == 0) throw DomainError("order of a non-unit");
  int ord = 1;
  int64_t acc = y;
  while (acc != 1) {
    acc = acc * y % p;
    ++ord;
    if (ord > p) throw DomainError("order computation overran");
  }
  return ord;
}

}  // namespace

UnramCtx::UnramCtx(const Zp& R, int degree) : zp(&R), d(degree) {
  int64_t p = R.p();
  if (d < 1 || (p - 1) % d != 0) throw HypothesisError("d must divide p-1");
  // smallest positive unit whose class has order exactly d in F_p^x/(F_p^x)^d,
  // i.e. u0^{(p-1)/d} has multiplicative order d mod p.
  u0 = 0;
  for (int64_t cand = 1; cand < p; ++cand) {
    int64_t pw = 1;
    for (int64_t i = 0; i < (p - 1) / d; ++i) pw = pw * cand % p;
    if (mult_order_mod_p(pw, p) == d) {
      u0 = cand;
      break;
    }
  }
  if (u0 == 0) throw HypothesisError("no Kummer unit of order d found");
  u0s = Scalar::from_int(R, u0);
  Scalar base = Scalar::from_int(R, 1);
  for (int64_t i = 0; i < (p - 1) / d; ++i) base = base * u0s;
  frob_mult = teichmuller(base);
  frob_pow.assign(size_t(d), std::vector<Scalar>(size_t(d), Scalar::from_int(R, 1)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      frob_pow[size_t(i)][size_t(j)] = frob_mult.pow_u(uint64_t(i) * uint64_t(j));
}

UnramCtx build_L(const Zp& R, int d) { return UnramCtx(R, d); }

Scalar trace_to_Qp(const UnramElem& x) {
  const UnramCtx& C = x.ctx();
  UnramElem s = x;
  for (int i = 1; i < C.d; ++i) s += x.frobenius(i);
  // the conjugate sum is Galois-invariant, so the alpha^j coordinates vanish
  for (int j = 1; j < C.d; ++j)
    if (s.coord(j).zero_mod(std::max(1, C.zp->cap() - 2)) == Cong::kNo)
      throw IdentityError("trace has a nonzero alpha-coordinate");
  return s.coord(0);
}

Scalar UnramElem::norm_scalar() const {
  const UnramCtx& C = *C_;
  UnramElem n = *this;
  for (int i = 1; i < C.d; ++i) n *= frobenius(i);
  for (int j = 1; j < C.d; ++j)
    if (n.coord(j).zero_mod(std::max(1, C.zp->cap() - 2)) == Cong::kNo)
      throw IdentityError("norm has a nonzero alpha-coordinate");
  return n.coord(0);
}

UnramElem UnramElem::inverse() const {
  const UnramCtx& C = *C_;
  if (C.d == 1) return from_scalar(C, c_[0].inverse());
  UnramElem prod = frobenius(1);
  for (int i = 2; i < C.d; ++i) prod *= frobenius(i);
  UnramElem n = *this * prod;
  for (int j = 1; j < C.d; ++j)
    if (n.coord(j).zero_mod(std::max(1, C.zp->cap() - 2)) == Cong::kNo)
      throw IdentityError("norm has a nonzero alpha-coordinate");
  return prod.div_scalar(n.coord(0));
}

UnramElem teichmuller(const UnramElem& x) {
  const UnramCtx& C = x.ctx();
  const Zp& R = *C.zp;
  if (!x.is_unit()) throw ValuationError("teichmuller of a non-unit");
  // iterate y -> y^q to the Frobenius-stable (q-1)-st root of unity
  uint64_t q = 1;
  for (int i = 0; i < C.d; ++i) q *= uint64_t(R.p());
  UnramElem y = x.exactified();
  for (int it = 0; it <= R.cap() + 2; ++it) {
    UnramElem z = y.pow_u(q);
    if ((z - y).zero_mod(R.cap()) == Cong::kYes) return z;
    y = z.exactified();
  }
  throw ConvergenceError("teichmuller iteration failed to stabilize in O_L");
}

UnramElem iw_log(const UnramElem& x) {
  const UnramCtx& C = x.ctx();
  const Zp& R = *C.zp;
  UnramElem t = x * teichmuller(x).inverse();
  UnramElem z = t - UnramElem::from_int(C, 1);
  UnramElem sum = UnramElem::zero(C);
  if (z.is_exact_zero()) return sum;
  UnramElem pw = UnramElem::from_int(C, 1);
  for (int i = 1; i <= R.cap() + 4; ++i) {
    pw *= z;
    UnramElem term = pw.div_small(i);
    sum = (i % 2) ? sum + term : sum - term;
  }
  return sum;
}

TowerCtx::TowerCtx(const UnramCtx& Lc, const Scalar& uniformiser)
    : L(&Lc), pi(uniformiser) {
  const Zp& R = *Lc.zp;
  auto v = pi.valuation();
  if (!v || *v != 1) throw HypothesisError("uniformiser must have v_p = 1");
  int p = int(R.p());
  teich.assign(size_t(p), Scalar::from_int(R, 1));
  omega_pow.assign(size_t(p), std::vector<Scalar>(size_t(p - 1), Scalar::from_int(R, 1)));
  for (int a = 1; a < p; ++a) {
    teich[size_t(a)] = teichmuller(Scalar::from_int(R, a));
    for (int t = 0; t < p - 1; ++t)
      omega_pow[size_t(a)][size_t(t)] = teich[size_t(a)].pow_u(uint64_t(t));
  }
}

Scalar trace_to_Qp(const TowerElem& x) {
  const TowerCtx& C = x.ctx();
  int p = C.p();
  TowerElem s = TowerElem::zero(C);
  for (int i = 0; i < C.L->d; ++i) {
    TowerElem xf = x.frobenius(i);
    for (int a = 1; a < p; ++a) s += xf.sigma(a);
  }
  const int chk = std::max(1, C.L->zp->cap() - 2);
  for (int t = 1; t < p - 1; ++t)
    if (s.coord(t).zero_mod(chk) == Cong::kNo)
      throw IdentityError("tower trace has a nonzero T-coordinate");
  for (int j = 1; j < C.L->d; ++j)
    if (s.coord(0).coord(j).zero_mod(chk) == Cong::kNo)
      throw IdentityError("tower trace has a nonzero alpha-coordinate");
  return s.coord(0).coord(0);
}

TowerElem teichmuller(const TowerElem& x) {
  const TowerCtx& C = x.ctx();
  // L1/L is totally ramified: the residue of x is the residue of its
  // T-degree-0 coordinate, and the Teichmüller lift lives in O_L.
  VP v = x.vP();
  if (!(v.exact && v.lb == 0)) throw ValuationError("teichmuller of a non-unit");
  return TowerElem::from_unram(C, teichmuller(x.coord(0)));
}

TowerElem iw_log(const TowerElem& x) {
  const TowerCtx& C = x.ctx();
  const Zp& R = *C.L->zp;
  TowerElem t = x.div_unram(teichmuller(x).coord(0));
  TowerElem z = t - TowerElem::from_int(C, 1);
  TowerElem sum = TowerElem::zero(C);
  if (z.is_exact_zero()) return sum;
  // terms z^i/i have v_P >= i - (p-1) v_p(i); run past the working window
  int imax = (C.p() - 1) * (R.cap() + 4);
  TowerElem pw = TowerElem::from_int(C, 1);
  for (int i = 1; i <= imax; ++i) {
    pw *= z;
    TowerElem term = pw.div_small(i);
    sum = (i % 2) ? sum + term : sum - term;
  }
  return sum;
}

TowerElem TowerElem::inverse() const {
  const TowerCtx& C = *C_;
  int p = C.p();
  TowerElem prod = TowerElem::from_int(C, 1);
  for (int a = 2; a < p; ++a) prod *= sigma(a);
  TowerElem n = *this * prod;  // Delta-norm: lands in O_L
  const int chk = std::max(1, C.L->zp->cap() - 2);
  for (int t = 1; t < p - 1; ++t)
    if (n.coord(t).zero_mod(chk) == Cong::kNo)
      throw IdentityError("Delta-norm has a nonzero T-coordinate");
  return prod.div_unram(n.coord(0));
}

PeriodCtx::PeriodCtx(const TowerCtx& R, int lo_deg, int hi_deg)
    : R1(&R), lo(lo_deg), hi(hi_deg) {
  const Zp& Z = *R.L->zp;
  pi_over_p = R.pi / Scalar::from_int(Z, Z.p());
  p_over_pi = pi_over_p.inverse();
  tw.assign(size_t(hi - lo + 1), Scalar::from_int(Z, 1));
  for (int n = lo; n <= hi; ++n)
    tw[size_t(n - lo)] =
        (n >= 0 ? pi_over_p.pow_u(uint64_t(n)) : p_over_pi.pow_u(uint64_t(-n)));
}

}  // namespace lt
