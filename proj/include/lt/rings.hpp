#pragma once

#include <optional>
#include <vector>

#include "lt/scalar.hpp"
#include "lt/series.hpp"

namespace lt {

// Certified lower bound on a P-adic valuation. `exact` is set when the bound
// is attained by a certified-nonzero monomial and no unknown component could
// lie below it. Distinct basis monomials cannot cancel, so an attained
// minimum stays exact even when an unknown bound ties it.
struct VP {
  static constexpr long long kInf = 1LL << 40;
  long long lb = kInf;
  bool exact = false;
};

// Accumulates min-over-monomials valuations from attained values and
// zero-to-precision bounds.
struct VPAcc {
  long long att = VP::kInf;   // best certified-attained valuation
  long long bound = VP::kInf; // best mere lower bound
  void add(const VP& v, long long offset = 0) {
    if (v.lb >= VP::kInf) return;
    if (v.exact)
      att = std::min(att, v.lb + offset);
    else
      bound = std::min(bound, v.lb + offset);
  }
  void add_attained(long long v) { att = std::min(att, v); }
  void add_bound(long long v) { bound = std::min(bound, v); }
  VP get() const {
    VP out;
    out.lb = std::min(att, bound);
    out.exact = att < VP::kInf && att <= bound;
    return out;
  }
};

// --- unramified ring O_L = Z_p[alpha], alpha^d = u0 -------------------------

// The Kummer model of the unramified extension of degree d | p-1. Frobenius
// acts by alpha -> frob_mult * alpha with frob_mult = ω(u0^{(p-1)/d}).
struct UnramCtx {
  const Zp* zp;
  int d;
  int64_t u0;
  Scalar u0s;
  Scalar frob_mult;
  // frob_pow[i][j] = frob_mult^{i*j} = action of F^i on the alpha^j coordinate.
  std::vector<std::vector<Scalar>> frob_pow;

  UnramCtx(const Zp& R, int degree);
};

class UnramElem {
 public:
  UnramElem() = default;
  UnramElem(const UnramCtx& C, std::vector<Scalar> coords) : C_(&C), c_(std::move(coords)) {}

  static UnramElem zero(const UnramCtx& C) {
    return UnramElem(C, std::vector<Scalar>(size_t(C.d), Scalar::zero(*C.zp)));
  }
  static UnramElem from_scalar(const UnramCtx& C, const Scalar& s) {
    UnramElem e = zero(C);
    e.c_[0] = s;
    return e;
  }
  static UnramElem from_int(const UnramCtx& C, long long n) {
    return from_scalar(C, Scalar::from_int(*C.zp, n));
  }
  // coordinate vector in the basis 1, alpha, ..., alpha^{d-1}
  static UnramElem alpha_pow(const UnramCtx& C, int j) {
    UnramElem e = zero(C);
    e.c_[size_t(j % C.d)] = Scalar::from_int(*C.zp, 1);
    return e;
  }

  const UnramCtx& ctx() const { return *C_; }
  const Scalar& coord(int j) const { return c_[size_t(j)]; }
  Scalar& coord_mut(int j) { return c_[size_t(j)]; }

  bool is_exact_zero() const {
    for (const Scalar& s : c_)
      if (!s.is_exact_zero()) return false;
    return true;
  }

  Cong zero_mod(int e) const {
    Cong out = Cong::kYes;
    for (const Scalar& s : c_) {
      Cong z = s.zero_mod(e);
      if (z == Cong::kNo) return Cong::kNo;
      if (z == Cong::kUnknown) out = Cong::kUnknown;
    }
    return out;
  }

  // v_p on O_L: the basis is a Z_p-basis, so the valuation is the min over
  // coordinates.
  VP vp() const {
    VPAcc acc;
    for (const Scalar& s : c_) {
      if (s.is_exact_zero()) continue;
      if (s.is_zero_state())
        acc.add_bound(s.aprec());
      else
        acc.add_attained(*s.valuation());
    }
    return acc.get();
  }

  bool is_unit() const {
    VP v = vp();
    return v.exact && v.lb == 0;
  }

  UnramElem operator-() const {
    UnramElem e = *this;
    for (Scalar& s : e.c_) s = -s;
    return e;
  }
  friend UnramElem operator+(const UnramElem& a, const UnramElem& b) {
    UnramElem e = a;
    for (int j = 0; j < a.C_->d; ++j) e.c_[size_t(j)] += b.c_[size_t(j)];
    return e;
  }
  friend UnramElem operator-(const UnramElem& a, const UnramElem& b) { return a + (-b); }
  friend UnramElem operator*(const UnramElem& a, const UnramElem& b) {
    const UnramCtx& C = *a.C_;
    UnramElem e = zero(C);
    for (int i = 0; i < C.d; ++i) {
      if (a.c_[size_t(i)].is_exact_zero()) continue;
      for (int j = 0; j < C.d; ++j) {
        Scalar t = a.c_[size_t(i)] * b.c_[size_t(j)];
        int k = i + j;
        if (k >= C.d) {
          k -= C.d;
          t = t * C.u0s;
        }
        e.c_[size_t(k)] += t;
      }
    }
    return e;
  }
  UnramElem& operator+=(const UnramElem& b) { return *this = *this + b; }
  UnramElem& operator-=(const UnramElem& b) { return *this = *this - b; }
  UnramElem& operator*=(const UnramElem& b) { return *this = *this * b; }

  UnramElem mul_scalar(const Scalar& s) const {
    UnramElem e = *this;
    for (Scalar& x : e.c_) x = x * s;
    return e;
  }
  UnramElem div_scalar(const Scalar& s) const {
    UnramElem e = *this;
    for (Scalar& x : e.c_) x = x / s;
    return e;
  }
  UnramElem mul_small(long long n) const { return mul_scalar(Scalar::from_int(*C_->zp, n)); }
  UnramElem div_small(long long n) const { return div_scalar(Scalar::from_int(*C_->zp, n)); }
  UnramElem shifted(int e) const {
    UnramElem out = *this;
    for (Scalar& x : out.c_) x = x.shifted(e);
    return out;
  }

  UnramElem zero_like() const { return zero(*C_); }
  UnramElem one_like() const { return from_int(*C_, 1); }
  UnramElem from_int_like(long long n) const { return from_int(*C_, n); }

  // F^i, acting as alpha^j -> frob_mult^{ij} alpha^j.
  UnramElem frobenius(int i = 1) const {
    const UnramCtx& C = *C_;
    int ii = ((i % C.d) + C.d) % C.d;
    UnramElem e = *this;
    for (int j = 0; j < C.d; ++j) e.c_[size_t(j)] = e.c_[size_t(j)] * C.frob_pow[size_t(ii)][size_t(j)];
    return e;
  }

  UnramElem pow_u(uint64_t k) const {
    UnramElem acc = one_like(), base = *this;
    while (k) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }

  // Galois norm down to Q_p, returned with the certified off-coordinates check.
  Scalar norm_scalar() const;
  UnramElem inverse() const;
  UnramElem exactified() const {
    UnramElem e = *this;
    for (Scalar& x : e.c_) x = x.exactified();
    return e;
  }

 private:
  const UnramCtx* C_ = nullptr;
  std::vector<Scalar> c_;
};

// Trace to Q_p as the sum over the d Frobenius conjugates.
Scalar trace_to_Qp(const UnramElem& x);
UnramElem teichmuller(const UnramElem& x);
UnramElem iw_log(const UnramElem& x);

// --- level-1 tower ring R1 = O_L[T]/(T^{p-1} + pi) ---------------------------

// pi1 is the class of T: an abstract root of T^{p-1} = -pi, the level-1
// torsion point. sigma_a fixes O_L and maps T -> ω(a) T; Frobenius acts on
// coefficients and fixes T.
struct TowerCtx {
  const UnramCtx* L;
  Scalar pi;
  // teich[a] = ω(a), omega_pow[a][t] = ω(a)^t, a = 1..p-1, t = 0..p-2.
  std::vector<Scalar> teich;
  std::vector<std::vector<Scalar>> omega_pow;

  TowerCtx(const UnramCtx& Lc, const Scalar& uniformiser);
  int p() const { return int(L->zp->p()); }
};

class TowerElem {
 public:
  TowerElem() = default;
  TowerElem(const TowerCtx& C, std::vector<UnramElem> coords)
      : C_(&C), c_(std::move(coords)) {}

  static TowerElem zero(const TowerCtx& C) {
    return TowerElem(C, std::vector<UnramElem>(size_t(C.p() - 1), UnramElem::zero(*C.L)));
  }
  static TowerElem from_unram(const TowerCtx& C, const UnramElem& u) {
    TowerElem t = zero(C);
    t.c_[0] = u;
    return t;
  }
  static TowerElem from_int(const TowerCtx& C, long long n) {
    return from_unram(C, UnramElem::from_int(*C.L, n));
  }
  static TowerElem pi1_pow(const TowerCtx& C, int t) {
    TowerElem e = zero(C);
    e.c_[size_t(t % (C.p() - 1))] = UnramElem::from_int(*C.L, 1);
    return e;
  }

  const TowerCtx& ctx() const { return *C_; }
  const UnramElem& coord(int t) const { return c_[size_t(t)]; }
  UnramElem& coord_mut(int t) { return c_[size_t(t)]; }

  bool is_exact_zero() const {
    for (const UnramElem& u : c_)
      if (!u.is_exact_zero()) return false;
    return true;
  }

  // x ≡ 0 mod p^e in O_{L1} iff every basis coordinate is ≡ 0 mod p^e.
  Cong zero_mod(int e) const {
    Cong out = Cong::kYes;
    for (const UnramElem& u : c_) {
      Cong z = u.zero_mod(e);
      if (z == Cong::kNo) return Cong::kNo;
      if (z == Cong::kUnknown) out = Cong::kUnknown;
    }
    return out;
  }

  // v_P(sum c_t T^t) = min_t ((p-1) v_p(c_t) + t).
  VP vP() const {
    const int e = C_->p() - 1;
    VPAcc acc;
    for (int t = 0; t < e; ++t) {
      VP v = c_[size_t(t)].vp();
      if (v.lb >= VP::kInf) continue;
      VP scaled;
      scaled.lb = e * v.lb + t;
      scaled.exact = v.exact;
      acc.add(scaled);
    }
    return acc.get();
  }

  bool is_unit() const {
    VP v = vP();
    return v.exact && v.lb == 0;
  }

  TowerElem operator-() const {
    TowerElem e = *this;
    for (UnramElem& u : e.c_) u = -u;
    return e;
  }
  friend TowerElem operator+(const TowerElem& a, const TowerElem& b) {
    TowerElem e = a;
    for (size_t t = 0; t < a.c_.size(); ++t) e.c_[t] += b.c_[t];
    return e;
  }
  friend TowerElem operator-(const TowerElem& a, const TowerElem& b) { return a + (-b); }
  friend TowerElem operator*(const TowerElem& a, const TowerElem& b) {
    const TowerCtx& C = *a.C_;
    const int e = C.p() - 1;
    TowerElem out = zero(C);
    Scalar mpi = -C.pi;
    for (int i = 0; i < e; ++i) {
      if (a.c_[size_t(i)].is_exact_zero()) continue;
      for (int j = 0; j < e; ++j) {
        if (b.c_[size_t(j)].is_exact_zero()) continue;
        UnramElem t = a.c_[size_t(i)] * b.c_[size_t(j)];
        int k = i + j;
        if (k >= e) {
          k -= e;
          t = t.mul_scalar(mpi);  // T^{p-1} = -pi
        }
        out.c_[size_t(k)] += t;
      }
    }
    return out;
  }
  TowerElem& operator+=(const TowerElem& b) { return *this = *this + b; }
  TowerElem& operator-=(const TowerElem& b) { return *this = *this - b; }
  TowerElem& operator*=(const TowerElem& b) { return *this = *this * b; }

  TowerElem mul_scalar(const Scalar& s) const {
    TowerElem e = *this;
    for (UnramElem& u : e.c_) u = u.mul_scalar(s);
    return e;
  }
  TowerElem div_scalar(const Scalar& s) const {
    TowerElem e = *this;
    for (UnramElem& u : e.c_) u = u.div_scalar(s);
    return e;
  }
  TowerElem mul_unram(const UnramElem& x) const {
    TowerElem e = *this;
    for (UnramElem& u : e.c_) u = u * x;
    return e;
  }
  TowerElem div_unram(const UnramElem& x) const { return mul_unram(x.inverse()); }
  TowerElem mul_small(long long n) const { return mul_scalar(Scalar::from_int(*C_->L->zp, n)); }
  TowerElem div_small(long long n) const { return div_scalar(Scalar::from_int(*C_->L->zp, n)); }

  TowerElem zero_like() const { return zero(*C_); }
  TowerElem one_like() const { return from_int(*C_, 1); }
  TowerElem from_int_like(long long n) const { return from_int(*C_, n); }

  // Frobenius: coefficientwise, fixes T.
  TowerElem frobenius(int i = 1) const {
    TowerElem e = *this;
    for (UnramElem& u : e.c_) u = u.frobenius(i);
    return e;
  }

  // sigma_a: fixes coefficients, T -> ω(a) T.
  TowerElem sigma(int a) const {
    const TowerCtx& C = *C_;
    int p = C.p();
    int aa = ((a % p) + p) % p;
    if (aa == 0) throw DomainError("sigma_a requires a prime to p");
    TowerElem e = *this;
    for (int t = 1; t < p - 1; ++t)
      e.c_[size_t(t)] = e.c_[size_t(t)].mul_scalar(C.omega_pow[size_t(aa)][size_t(t)]);
    return e;
  }

  TowerElem pow_u(uint64_t k) const {
    TowerElem acc = one_like(), base = *this;
    while (k) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }

  TowerElem inverse() const;
  TowerElem exactified() const {
    TowerElem e = *this;
    for (UnramElem& u : e.c_) u = u.exactified();
    return e;
  }

 private:
  const TowerCtx* C_ = nullptr;
  std::vector<UnramElem> c_;
};

Scalar trace_to_Qp(const TowerElem& x);
TowerElem teichmuller(const TowerElem& x);
TowerElem iw_log(const TowerElem& x);

// --- formal period ring R1[Ω^±] ----------------------------------------------

// Ω is a formal invertible generator with the semilinear rule F(Ω) = (pi/p)Ω,
// v(Ω) = 0. Components live in the window [lo, hi]; products are clipped to
// the window, which only drops monomials of v_P at least ~|lo| (documented
// model floor, far above every assertion precision used here).
struct PeriodCtx {
  const TowerCtx* R1;
  int lo, hi;
  Scalar pi_over_p, p_over_pi;
  // tw[n - lo] = (pi/p)^n for n in [lo, hi].
  std::vector<Scalar> tw;

  PeriodCtx(const TowerCtx& R, int lo_deg, int hi_deg);

  // (pi/p)^{n*i}: the Frobenius twist of the Ω^n component under F^i.
  Scalar twist(int n, int i) const {
    long long e = (long long)n * i;
    if (e >= lo && e <= hi) return tw[size_t(e - lo)];
    const Scalar& b = e >= 0 ? pi_over_p : p_over_pi;
    return b.pow_u(uint64_t(e >= 0 ? e : -e));
  }
};

class PeriodElem {
 public:
  PeriodElem() = default;
  explicit PeriodElem(const PeriodCtx& C) : C_(&C), lo_(0) {}

  static PeriodElem zero(const PeriodCtx& C) { return PeriodElem(C); }
  static PeriodElem monomial(const PeriodCtx& C, const TowerElem& v, int n) {
    if (n < C.lo || n > C.hi) throw DomainError("Ω-degree outside the model window");
    PeriodElem e(C);
    e.lo_ = n;
    e.c_.push_back(v);
    return e;
  }
  static PeriodElem from_tower(const PeriodCtx& C, const TowerElem& v) {
    return monomial(C, v, 0);
  }
  static PeriodElem from_int(const PeriodCtx& C, long long n) {
    return from_tower(C, TowerElem::from_int(*C.R1, n));
  }

  const PeriodCtx& ctx() const { return *C_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + int(c_.size()) - 1; }
  bool empty() const { return c_.empty(); }

  // component at Ω-degree n (exact zero if outside the stored window)
  TowerElem component(int n) const {
    if (c_.empty() || n < lo_ || n > hi()) return TowerElem::zero(*C_->R1);
    return c_[size_t(n - lo_)];
  }

  bool is_exact_zero() const {
    for (const TowerElem& t : c_)
      if (!t.is_exact_zero()) return false;
    return true;
  }

  Cong zero_mod(int e) const {
    Cong out = Cong::kYes;
    for (const TowerElem& t : c_) {
      Cong z = t.zero_mod(e);
      if (z == Cong::kNo) return Cong::kNo;
      if (z == Cong::kUnknown) out = Cong::kUnknown;
    }
    return out;
  }

  // min-over-monomials valuation with v(Ω) = 0 (certified lower bound; exact
  // when the minimum is attained by a certified-nonzero monomial).
  VP vP() const {
    VPAcc acc;
    for (const TowerElem& t : c_) {
      if (t.is_exact_zero()) continue;
      acc.add(t.vP());
    }
    return acc.get();
  }

  PeriodElem operator-() const {
    PeriodElem e = *this;
    for (TowerElem& t : e.c_) t = -t;
    return e;
  }
  friend PeriodElem operator+(const PeriodElem& a, const PeriodElem& b) {
    if (a.c_.empty()) return b;
    if (b.c_.empty()) return a;
    const PeriodCtx& C = *a.C_;
    int lo = std::min(a.lo_, b.lo_), hi = std::max(a.hi(), b.hi());
    PeriodElem e(C);
    e.lo_ = lo;
    e.c_.assign(size_t(hi - lo + 1), TowerElem::zero(*C.R1));
    for (int n = a.lo_; n <= a.hi(); ++n) e.c_[size_t(n - lo)] += a.c_[size_t(n - a.lo_)];
    for (int n = b.lo_; n <= b.hi(); ++n) e.c_[size_t(n - lo)] += b.c_[size_t(n - b.lo_)];
    e.trim();
    return e;
  }
  friend PeriodElem operator-(const PeriodElem& a, const PeriodElem& b) { return a + (-b); }
  friend PeriodElem operator*(const PeriodElem& a, const PeriodElem& b) {
    if (a.c_.empty() || b.c_.empty()) return a.c_.empty() ? a : b;
    const PeriodCtx& C = *a.C_;
    int lo = std::max(a.lo_ + b.lo_, C.lo);
    int hi = std::min(a.hi() + b.hi(), C.hi);
    PeriodElem e(C);
    if (lo > hi) return zero(C);
    e.lo_ = lo;
    e.c_.assign(size_t(hi - lo + 1), TowerElem::zero(*C.R1));
    for (int i = a.lo_; i <= a.hi(); ++i) {
      const TowerElem& ai = a.c_[size_t(i - a.lo_)];
      if (ai.is_exact_zero()) continue;
      for (int j = b.lo_; j <= b.hi(); ++j) {
        int n = i + j;
        if (n < lo || n > hi) continue;
        const TowerElem& bj = b.c_[size_t(j - b.lo_)];
        if (bj.is_exact_zero()) continue;
        e.c_[size_t(n - lo)] += ai * bj;
      }
    }
    e.trim();
    return e;
  }
  PeriodElem& operator+=(const PeriodElem& b) { return *this = *this + b; }
  PeriodElem& operator-=(const PeriodElem& b) { return *this = *this - b; }
  PeriodElem& operator*=(const PeriodElem& b) { return *this = *this * b; }

  PeriodElem mul_scalar(const Scalar& s) const {
    PeriodElem e = *this;
    for (TowerElem& t : e.c_) t = t.mul_scalar(s);
    return e;
  }
  PeriodElem div_scalar(const Scalar& s) const {
    PeriodElem e = *this;
    for (TowerElem& t : e.c_) t = t.div_scalar(s);
    return e;
  }
  PeriodElem mul_small(long long n) const {
    return mul_scalar(Scalar::from_int(*C_->R1->L->zp, n));
  }
  PeriodElem div_small(long long n) const {
    return div_scalar(Scalar::from_int(*C_->R1->L->zp, n));
  }

  PeriodElem zero_like() const { return zero(*C_); }
  PeriodElem one_like() const { return from_int(*C_, 1); }
  PeriodElem from_int_like(long long n) const { return from_int(*C_, n); }

  // Shift the Ω-degree by k (multiplication by Ω^k).
  PeriodElem omega_shifted(int k) const {
    if (c_.empty()) return *this;
    if (lo_ + k < C_->lo || hi() + k > C_->hi)
      throw DomainError("Ω-shift leaves the model window");
    PeriodElem e = *this;
    e.lo_ += k;
    return e;
  }

  // Semilinear Frobenius: F(c Ω^n) = F(c) (pi/p)^n Ω^n.
  PeriodElem frobenius(int i = 1) const {
    PeriodElem e = *this;
    for (int n = lo_; n <= hi(); ++n) {
      TowerElem& t = e.c_[size_t(n - lo_)];
      t = t.frobenius(i);
      Scalar tw = C_->twist(n, i);
      t = t.mul_scalar(tw);
    }
    return e;
  }

  PeriodElem sigma(int a) const {
    PeriodElem e = *this;
    for (TowerElem& t : e.c_) t = t.sigma(a);
    return e;
  }

  PeriodElem pow_u(uint64_t k) const {
    PeriodElem acc = one_like(), base = *this;
    while (k) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }

  // Certified check that the element is supported on Ω-degree n alone; other
  // components must vanish mod p^e.
  Cong pure_at(int n, int e) const {
    Cong out = Cong::kYes;
    for (int m = lo_; m <= hi(); ++m) {
      if (m == n) continue;
      Cong z = c_[size_t(m - lo_)].zero_mod(e);
      if (z == Cong::kNo) return Cong::kNo;
      if (z == Cong::kUnknown) out = Cong::kUnknown;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
    size_t k = 0;
    while (k < c_.size() && c_[k].is_exact_zero()) ++k;
    if (k) {
      c_.erase(c_.begin(), c_.begin() + long(k));
      lo_ += int(k);
    }
  }

  const PeriodCtx* C_ = nullptr;
  int lo_ = 0;
  std::vector<TowerElem> c_;
};

// Laurent polynomial in the formal period Ω over Q_p scalars. This is the
// coefficient home of θ, η and everything else built from λ, log and exp
// alone; lifting into the full period ring happens only at torsion-point
// evaluations. Shares the window and twist tables of a PeriodCtx.
class OmegaScalar {
 public:
  OmegaScalar() = default;
  explicit OmegaScalar(const PeriodCtx& C) : C_(&C), lo_(0) {}

  static OmegaScalar zero(const PeriodCtx& C) { return OmegaScalar(C); }
  static OmegaScalar monomial(const PeriodCtx& C, const Scalar& v, int n) {
    if (n < C.lo || n > C.hi) throw DomainError("Ω-degree outside the model window");
    OmegaScalar e(C);
    e.lo_ = n;
    e.c_.push_back(v);
    return e;
  }
  static OmegaScalar from_scalar(const PeriodCtx& C, const Scalar& v) {
    return monomial(C, v, 0);
  }
  static OmegaScalar from_int(const PeriodCtx& C, long long n) {
    return from_scalar(C, Scalar::from_int(*C.R1->L->zp, n));
  }

  const PeriodCtx& ctx() const { return *C_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + int(c_.size()) - 1; }
  bool empty() const { return c_.empty(); }
  Scalar component(int n) const {
    if (c_.empty() || n < lo_ || n > hi()) return Scalar::zero(*C_->R1->L->zp);
    return c_[size_t(n - lo_)];
  }

  bool is_exact_zero() const {
    for (const Scalar& s : c_)
      if (!s.is_exact_zero()) return false;
    return true;
  }

  Cong zero_mod(int e) const {
    Cong out = Cong::kYes;
    for (const Scalar& s : c_) {
      Cong z = s.zero_mod(e);
      if (z == Cong::kNo) return Cong::kNo;
      if (z == Cong::kUnknown) out = Cong::kUnknown;
    }
    return out;
  }

  OmegaScalar operator-() const {
    OmegaScalar e = *this;
    for (Scalar& s : e.c_) s = -s;
    return e;
  }
  friend OmegaScalar operator+(const OmegaScalar& a, const OmegaScalar& b) {
    if (a.c_.empty()) return b;
    if (b.c_.empty()) return a;
    const PeriodCtx& C = *a.C_;
    int lo = std::min(a.lo_, b.lo_), hi = std::max(a.hi(), b.hi());
    OmegaScalar e(C);
    e.lo_ = lo;
    e.c_.assign(size_t(hi - lo + 1), Scalar::zero(*C.R1->L->zp));
    for (int n = a.lo_; n <= a.hi(); ++n) e.c_[size_t(n - lo)] += a.c_[size_t(n - a.lo_)];
    for (int n = b.lo_; n <= b.hi(); ++n) e.c_[size_t(n - lo)] += b.c_[size_t(n - b.lo_)];
    e.trim();
    return e;
  }
  friend OmegaScalar operator-(const OmegaScalar& a, const OmegaScalar& b) {
    return a + (-b);
  }
  friend OmegaScalar operator*(const OmegaScalar& a, const OmegaScalar& b) {
    if (a.c_.empty() || b.c_.empty()) return a.c_.empty() ? a : b;
    const PeriodCtx& C = *a.C_;
    int lo = std::max(a.lo_ + b.lo_, C.lo);
    int hi = std::min(a.hi() + b.hi(), C.hi);
    OmegaScalar e(C);
    if (lo > hi) return zero(C);
    e.lo_ = lo;
    e.c_.assign(size_t(hi - lo + 1), Scalar::zero(*C.R1->L->zp));
    for (int i = a.lo_; i <= a.hi(); ++i) {
      const Scalar& ai = a.c_[size_t(i - a.lo_)];
      if (ai.is_exact_zero()) continue;
      for (int j = b.lo_; j <= b.hi(); ++j) {
        int n = i + j;
        if (n < lo || n > hi) continue;
        const Scalar& bj = b.c_[size_t(j - b.lo_)];
        if (bj.is_exact_zero()) continue;
        e.c_[size_t(n - lo)] += ai * bj;
      }
    }
    e.trim();
    return e;
  }
  OmegaScalar& operator+=(const OmegaScalar& b) { return *this = *this + b; }
  OmegaScalar& operator-=(const OmegaScalar& b) { return *this = *this - b; }
  OmegaScalar& operator*=(const OmegaScalar& b) { return *this = *this * b; }

  OmegaScalar mul_scalar(const Scalar& s) const {
    OmegaScalar e = *this;
    for (Scalar& x : e.c_) x = x * s;
    return e;
  }
  OmegaScalar div_scalar(const Scalar& s) const {
    OmegaScalar e = *this;
    for (Scalar& x : e.c_) x = x / s;
    return e;
  }
  OmegaScalar mul_small(long long n) const {
    return mul_scalar(Scalar::from_int(*C_->R1->L->zp, n));
  }
  OmegaScalar div_small(long long n) const {
    return div_scalar(Scalar::from_int(*C_->R1->L->zp, n));
  }

  OmegaScalar zero_like() const { return zero(*C_); }
  OmegaScalar one_like() const { return from_int(*C_, 1); }
  OmegaScalar from_int_like(long long n) const { return from_int(*C_, n); }

  OmegaScalar omega_shifted(int k) const {
    if (c_.empty()) return *this;
    if (lo_ + k < C_->lo || hi() + k > C_->hi)
      throw DomainError("Ω-shift leaves the model window");
    OmegaScalar e = *this;
    e.lo_ += k;
    return e;
  }

  OmegaScalar frobenius(int i = 1) const {
    OmegaScalar e = *this;
    for (int n = lo_; n <= hi(); ++n)
      e.c_[size_t(n - lo_)] = e.c_[size_t(n - lo_)] * C_->twist(n, i);
    return e;
  }

  // monomial inverse only (all the unit divisions needed here are monomials)
  OmegaScalar inverse() const {
    int nz = -1;
    for (int n = lo_; n <= hi(); ++n)
      if (!c_[size_t(n - lo_)].is_exact_zero()) {
        if (nz >= 0) throw DomainError("inverse of a non-monomial Ω-polynomial");
        nz = n;
      }
    if (nz < 0) throw ValuationError("inverse of zero");
    return monomial(*C_, c_[size_t(nz - lo_)].inverse(), -nz);
  }
  bool is_unit() const {
    int nz = -1;
    for (int n = lo_; n <= hi(); ++n)
      if (!c_[size_t(n - lo_)].is_exact_zero()) {
        if (nz >= 0) return false;
        nz = n;
      }
    return nz >= 0 && c_[size_t(nz - lo_)].is_unit();
  }

  // v_P with v(Ω)=0: scalars sit at T-degree 0, so v_P = (p-1) v_p.
  VP vP() const {
    VPAcc acc;
    int e = C_->R1->p() - 1;
    for (const Scalar& s : c_) {
      if (s.is_exact_zero()) continue;
      if (s.is_zero_state())
        acc.add_bound((long long)e * s.aprec());
      else
        acc.add_attained((long long)e * *s.valuation());
    }
    return acc.get();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
    size_t k = 0;
    while (k < c_.size() && c_[k].is_exact_zero()) ++k;
    if (k) {
      c_.erase(c_.begin(), c_.begin() + long(k));
      lo_ += int(k);
    }
  }

  const PeriodCtx* C_ = nullptr;
  int lo_ = 0;
  std::vector<Scalar> c_;
};

// The formal cyclotomic layer R1[Ω^±][ζ]/(1 + ζ + ... + ζ^{p-1}). ζ is the
// level-1 root of unity of the comparison dictionary: it is fixed by F,
// sigma_a sends ζ to ζ^a, and v(ζ-1) = 1 on the P-adic scale. Coordinates are
// stored over the integral power basis ζ^0..ζ^{p-2}.
class CycElem {
 public:
  CycElem() = default;
  explicit CycElem(const PeriodCtx& C)
      : C_(&C), c_(size_t(C.R1->p() - 1), PeriodElem::zero(C)) {}

  static CycElem zero(const PeriodCtx& C) { return CycElem(C); }
  static CycElem from_period(const PeriodCtx& C, const PeriodElem& v) {
    CycElem e(C);
    e.c_[0] = v;
    return e;
  }
  static CycElem from_int(const PeriodCtx& C, long long n) {
    return from_period(C, PeriodElem::from_int(C, n));
  }
  // v · ζ^z with exponent handling ζ^p = 1, ζ^{p-1} = -(1 + ζ + ... + ζ^{p-2}).
  static CycElem zeta_monomial(const PeriodCtx& C, const PeriodElem& v, long long z) {
    const int p = C.R1->p();
    CycElem e(C);
    int zz = int(((z % p) + p) % p);
    if (zz < p - 1) {
      e.c_[size_t(zz)] = v;
    } else {
      for (int i = 0; i < p - 1; ++i) e.c_[size_t(i)] = -v;
    }
    return e;
  }

  const PeriodCtx& ctx() const { return *C_; }
  const PeriodElem& coord(int z) const { return c_[size_t(z)]; }
  PeriodElem& coord_mut(int z) { return c_[size_t(z)]; }

  bool is_exact_zero() const {
    for (const PeriodElem& v : c_)
      if (!v.is_exact_zero()) return false;
    return true;
  }

  Cong zero_mod(int e) const {
    Cong out = Cong::kYes;
    for (const PeriodElem& v : c_) {
      Cong z = v.zero_mod(e);
      if (z == Cong::kNo) return Cong::kNo;
      if (z == Cong::kUnknown) out = Cong::kUnknown;
    }
    return out;
  }

  // ζ-free up to p^e noise on the other coordinates?
  Cong pure_period(int e) const {
    Cong out = Cong::kYes;
    for (size_t z = 1; z < c_.size(); ++z) {
      Cong c = c_[z].zero_mod(e);
      if (c == Cong::kNo) return Cong::kNo;
      if (c == Cong::kUnknown) out = Cong::kUnknown;
    }
    return out;
  }

  CycElem operator-() const {
    CycElem e = *this;
    for (PeriodElem& v : e.c_) v = -v;
    return e;
  }
  friend CycElem operator+(const CycElem& a, const CycElem& b) {
    CycElem e = a;
    for (size_t z = 0; z < a.c_.size(); ++z) e.c_[z] += b.c_[z];
    return e;
  }
  friend CycElem operator-(const CycElem& a, const CycElem& b) { return a + (-b); }
  friend CycElem operator*(const CycElem& a, const CycElem& b) {
    const PeriodCtx& C = *a.C_;
    const int p = C.R1->p();
    CycElem e(C);
    for (int i = 0; i < p - 1; ++i) {
      if (a.c_[size_t(i)].is_exact_zero()) continue;
      for (int j = 0; j < p - 1; ++j) {
        if (b.c_[size_t(j)].is_exact_zero()) continue;
        PeriodElem prod = a.c_[size_t(i)] * b.c_[size_t(j)];
        int z = (i + j) % p;
        if (z < p - 1) {
          e.c_[size_t(z)] += prod;
        } else {
          for (int t = 0; t < p - 1; ++t) e.c_[size_t(t)] -= prod;
        }
      }
    }
    return e;
  }
  CycElem& operator+=(const CycElem& b) { return *this = *this + b; }
  CycElem& operator-=(const CycElem& b) { return *this = *this - b; }
  CycElem& operator*=(const CycElem& b) { return *this = *this * b; }

  CycElem mul_scalar(const Scalar& s) const {
    CycElem e = *this;
    for (PeriodElem& v : e.c_) v = v.mul_scalar(s);
    return e;
  }
  CycElem div_scalar(const Scalar& s) const {
    CycElem e = *this;
    for (PeriodElem& v : e.c_) v = v.div_scalar(s);
    return e;
  }
  CycElem mul_small(long long n) const {
    return mul_scalar(Scalar::from_int(*C_->R1->L->zp, n));
  }
  CycElem div_small(long long n) const {
    return div_scalar(Scalar::from_int(*C_->R1->L->zp, n));
  }
  CycElem zero_like() const { return zero(*C_); }
  CycElem one_like() const { return from_int(*C_, 1); }
  CycElem from_int_like(long long n) const { return from_int(*C_, n); }

  // F fixes ζ and acts semilinearly on the period coordinates.
  CycElem frobenius(int i = 1) const {
    CycElem e = *this;
    for (PeriodElem& v : e.c_) v = v.frobenius(i);
    return e;
  }

  // sigma_a: ζ -> ζ^a on top of the tower action.
  CycElem sigma(int a) const {
    const PeriodCtx& C = *C_;
    const int p = C.R1->p();
    int aa = ((a % p) + p) % p;
    if (aa == 0) throw DomainError("sigma_a requires a prime to p");
    CycElem e(C);
    for (int z = 0; z < p - 1; ++z) {
      if (c_[size_t(z)].is_exact_zero()) continue;
      PeriodElem v = c_[size_t(z)].sigma(a);
      int zz = (aa * z) % p;
      if (zz < p - 1) {
        e.c_[size_t(zz)] += v;
      } else {
        for (int t = 0; t < p - 1; ++t) e.c_[size_t(t)] -= v;
      }
    }
    return e;
  }

  CycElem pow_u(uint64_t k) const {
    CycElem acc = one_like(), base = *this;
    while (k) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }

  // min-over-monomials valuation in the (ζ-1)-adic basis: the coordinates are
  // rewritten over (ζ-1)^w via ζ^z = sum_w C(z,w) (ζ-1)^w, and each graded
  // piece contributes v_P(b_w) + w.
  VP vP() const {
    const int p = C_->R1->p();
    VPAcc acc;
    for (int w = 0; w <= p - 2; ++w) {
      PeriodElem bw = PeriodElem::zero(*C_);
      for (int z = w; z <= p - 2; ++z) {
        long long binom = 1;
        for (int t = 0; t < w; ++t) binom = binom * (z - t) / (t + 1);
        bw += c_[size_t(z)].mul_small(binom);
      }
      if (bw.is_exact_zero()) continue;
      acc.add(bw.vP(), w);
    }
    return acc.get();
  }

 private:
  const PeriodCtx* C_ = nullptr;
  std::vector<PeriodElem> c_;
};

// Lift a Q_p[Ω^±] element into the full period ring.
inline PeriodElem lift_omega(const OmegaScalar& x) {
  const PeriodCtx& C = x.ctx();
  PeriodElem out = PeriodElem::zero(C);
  for (int n = x.lo(); n <= x.hi(); ++n) {
    Scalar s = x.component(n);
    if (s.is_exact_zero()) continue;
    out += PeriodElem::monomial(
        C, TowerElem::from_unram(*C.R1, UnramElem::from_scalar(*C.R1->L, s)), n);
  }
  return out;
}

// --- constructors / free operations ------------------------------------------

// build_L: smallest Kummer unit of exact order d in F_p^x/(F_p^x)^d.
UnramCtx build_L(const Zp& R, int d);

}  // namespace lt
