#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lt/errors.hpp"

namespace lt {

// Tri-state answer for certified congruence queries. kUnknown means the
// tracked precision is too low to decide, which callers must report as a
// precision failure rather than a value failure.
enum class Cong { kYes, kNo, kUnknown };

// Arithmetic context for Z/p^cap. `cap` is the working precision: the
// user-facing precision M plus guard digits, validated so p^cap < 2^63 and
// all mantissa products fit in __uint128_t.
class Zp {
 public:
  Zp(int64_t p, int cap) : p_(p), cap_(cap) {
    if (p < 3 || p % 2 == 0) throw HypothesisError("p must be an odd prime");
    for (int64_t q = 3; q * q <= p; q += 2)
      if (p % q == 0) throw HypothesisError("p must be prime");
    if (cap < 1) throw HypothesisError("cap must be >= 1");
    pw_.resize(cap_ + 1);
    pw_[0] = 1;
    for (int i = 1; i <= cap_; ++i) {
      if (pw_[i - 1] > (uint64_t{1} << 62) / uint64_t(p_))
        throw HypothesisError("p^cap exceeds 2^63; lower the precision cap");
      pw_[i] = pw_[i - 1] * uint64_t(p_);
    }
  }

  int64_t p() const { return p_; }
  int cap() const { return cap_; }
  uint64_t pow(int e) const { return pw_[e]; }

  uint64_t mod(uint64_t x, int r) const { return x % pw_[r]; }

  uint64_t mulmod(uint64_t a, uint64_t b, int r) const {
    return uint64_t((unsigned __int128)a * b % pw_[r]);
  }

  uint64_t powmod(uint64_t a, uint64_t e, int r) const {
    uint64_t acc = 1 % pw_[r];
    a %= pw_[r];
    while (e) {
      if (e & 1) acc = mulmod(acc, a, r);
      a = mulmod(a, a, r);
      e >>= 1;
    }
    return acc;
  }

  // Inverse of a unit mod p^r via extended gcd.
  uint64_t invmod(uint64_t a, int r) const {
    int64_t m = int64_t(pw_[r]);
    int64_t x0 = 0, x1 = 1, a0 = m, a1 = int64_t(a % pw_[r]);
    if (a1 % p_ == 0) throw ValuationError("invmod of a non-unit");
    while (a1 != 0) {
      int64_t q = a0 / a1;
      int64_t t = a0 - q * a1;
      a0 = a1;
      a1 = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    x0 %= m;
    if (x0 < 0) x0 += m;
    return uint64_t(x0);
  }

  int vp(uint64_t x) const {
    if (x == 0) throw DomainError("vp(0)");
    int v = 0;
    while (x % uint64_t(p_) == 0) {
      x /= uint64_t(p_);
      ++v;
    }
    return v;
  }

 private:
  int64_t p_;
  int cap_;
  std::vector<uint64_t> pw_;
};

// One p-adic number with tracked precision. A nonzero value is
// mant * p^val with mant a unit known mod p^rel (1 <= rel <= cap); a "zero to
// precision" value is O(p^aprec). Mantissas live in the flat window Z/p^cap;
// relative precision never exceeds cap.
class Scalar {
 public:
  static constexpr int kInf = 1 << 28;

  Scalar() = default;

  static Scalar zero(const Zp& R) { return zero_oh(R, kInf); }

  static Scalar zero_oh(const Zp& R, int aprec) {
    Scalar s;
    s.R_ = &R;
    s.m_ = 0;
    s.v_ = aprec;
    s.r_ = 0;
    return s;
  }

  static Scalar from_int(const Zp& R, long long n) {
    if (n == 0) return zero(R);
    Scalar s;
    s.R_ = &R;
    bool neg = n < 0;
    uint64_t a = neg ? uint64_t(-(n + 1)) + 1 : uint64_t(n);
    a %= R.pow(R.cap());
    if (a == 0) return zero_oh(R, R.cap());
    int v = R.vp(a);
    if (v > 0) a /= R.pow(v);
    if (neg) a = R.pow(R.cap()) - a;  // unit stays a unit
    s.m_ = R.mod(a, R.cap());
    s.v_ = v;
    s.r_ = R.cap();
    return s;
  }

  // mant * p^val certified to relative precision rel.
  static Scalar from_parts(const Zp& R, uint64_t mant, int val, int rel) {
    if (rel < 1 || rel > R.cap()) throw DomainError("bad relative precision");
    mant = R.mod(mant, rel);
    if (mant == 0 || mant % uint64_t(R.p()) == 0)
      throw DomainError("mantissa must be a unit");
    Scalar s;
    s.R_ = &R;
    s.m_ = mant;
    s.v_ = val;
    s.r_ = rel;
    return s;
  }

  const Zp& ring() const { return *R_; }
  bool is_zero_state() const { return r_ == 0; }
  bool is_exact_zero() const { return r_ == 0 && v_ >= kInf; }

  // Certified valuation; nullopt is the "zero to precision" bottom.
  std::optional<int> valuation() const {
    if (is_zero_state()) return std::nullopt;
    return v_;
  }

  // Absolute precision: the value is known mod p^aprec().
  int aprec() const { return is_zero_state() ? v_ : v_ + r_; }
  int rel() const { return r_; }

  bool is_unit() const { return !is_zero_state() && v_ == 0; }

  Scalar operator-() const {
    Scalar s = *this;
    if (!s.is_zero_state()) s.m_ = s.R_->pow(s.r_) - s.m_;
    return s;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    const Zp& R = *a.R_;
    if (a.is_zero_state() && b.is_zero_state())
      return zero_oh(R, std::min(a.v_, b.v_));
    if (a.is_zero_state()) return b.clamped_abs(a.v_);
    if (b.is_zero_state()) return a.clamped_abs(b.v_);
    int v = std::min(a.v_, b.v_);
    int r = std::min({a.r_ + (a.v_ - v), b.r_ + (b.v_ - v), R.cap()});
    uint64_t s = R.mod(a.shifted_mant(a.v_ - v, r) + b.shifted_mant(b.v_ - v, r), r);
    if (s == 0) return zero_oh(R, v + r);
    int c = R.vp(s);
    if (c >= r) return zero_oh(R, v + r);
    Scalar out;
    out.R_ = a.R_;
    out.v_ = v + c;
    out.r_ = r - c;
    out.m_ = R.mod(s / R.pow(c), out.r_);
    return out;
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    const Zp& R = *a.R_;
    if (a.is_zero_state() || b.is_zero_state()) {
      // O(p^x)*(unit p^w + ..) = O(p^{x+w}); O(p^x)*O(p^y) = O(p^{x+y}).
      long long e = (long long)a.v_ + (long long)b.v_;
      return zero_oh(R, int(std::min<long long>(e, kInf)));
    }
    Scalar out;
    out.R_ = a.R_;
    out.v_ = a.v_ + b.v_;
    out.r_ = std::min(a.r_, b.r_);
    out.m_ = R.mulmod(R.mod(a.m_, out.r_), R.mod(b.m_, out.r_), out.r_);
    return out;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    const Zp& R = *a.R_;
    if (b.is_zero_state()) throw ValuationError("division by zero-to-precision");
    if (a.is_zero_state())
      return zero_oh(R, int(std::min<long long>((long long)a.v_ - b.v_, kInf)));
    Scalar out;
    out.R_ = a.R_;
    out.v_ = a.v_ - b.v_;
    out.r_ = std::min(a.r_, b.r_);
    out.m_ = R.mulmod(R.mod(a.m_, out.r_), R.invmod(b.m_, out.r_), out.r_);
    return out;
  }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  // Multiply by the exact power p^e (e may be negative).
  Scalar shifted(int e) const {
    Scalar s = *this;
    s.v_ = int(std::min<long long>((long long)s.v_ + e, kInf));
    return s;
  }

  Scalar pow_u(uint64_t k) const {
    Scalar acc = from_int(*R_, 1), base = *this;
    while (k) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }

  Scalar inverse() const { return from_int(*R_, 1) / *this; }

  // Ring-concept hooks shared with the series/ring templates.
  Scalar zero_like() const { return zero(*R_); }
  Scalar one_like() const { return from_int(*R_, 1); }
  Scalar from_int_like(long long n) const { return from_int(*R_, n); }
  Scalar mul_small(long long n) const { return *this * from_int(*R_, n); }
  Scalar div_small(long long n) const { return *this / from_int(*R_, n); }
  Scalar mul_scalar(const Scalar& s) const { return *this * s; }

  // Treat the stored digits as exact (the canonical lift). Used by the
  // coherent-unit iteration and by test fixtures.
  Scalar exactified() const {
    if (is_zero_state()) return zero(*R_);
    Scalar s = *this;
    s.r_ = R_->cap();
    s.m_ = R_->mod(s.m_, s.r_);
    return s;
  }

  // Clamp absolute precision down to `a`.
  Scalar clamped_abs(int a) const {
    if (is_zero_state()) return zero_oh(*R_, std::min(v_, a));
    if (a <= v_) return zero_oh(*R_, a);
    Scalar s = *this;
    s.r_ = std::min(r_, a - v_);
    s.m_ = R_->mod(s.m_, s.r_);
    return s;
  }

  // Is the value certified ≡ 0 mod p^e?
  Cong zero_mod(int e) const {
    if (is_zero_state()) return v_ >= e ? Cong::kYes : Cong::kUnknown;
    return v_ >= e ? Cong::kYes : Cong::kNo;
  }

  Cong congruent(const Scalar& b, int e) const { return (*this - b).zero_mod(e); }

  // Canonical nonnegative-integer lift mod p^min(aprec,cap); requires v >= 0.
  uint64_t lift() const {
    if (is_zero_state()) return 0;
    if (v_ < 0) throw ValuationError("lift of negative-valuation scalar");
    int a = std::min(aprec(), R_->cap());
    if (v_ >= a) return 0;
    return R_->mod(R_->mod(m_, a - v_) * R_->pow(std::min(v_, R_->cap())), a);
  }

  std::string str() const {
    if (is_exact_zero()) return "0";
    if (is_zero_state()) return "O(p^" + std::to_string(v_) + ")";
    return std::to_string(m_) + "*p^" + std::to_string(v_) + "+O(p^" +
           std::to_string(aprec()) + ")";
  }

 private:
  uint64_t shifted_mant(int e, int r) const {
    if (e >= r) return 0;
    return R_->mulmod(R_->mod(m_, r), R_->pow(e), r);
  }

  const Zp* R_ = nullptr;
  uint64_t m_ = 0;
  int32_t v_ = kInf;
  int32_t r_ = 0;
};

// --- one-unit transcendental kernel -----------------------------------------

// Teichmüller lift: the unique (p-1)-st root of unity congruent to a mod p.
// Determined exactly by the residue, computed by iterated p-th powering.
inline Scalar teichmuller(const Scalar& a) {
  if (!a.is_unit()) throw ValuationError("teichmuller of a non-unit");
  const Zp& R = a.ring();
  Scalar y = Scalar::from_int(R, (long long)(a.lift() % uint64_t(R.p())));
  for (int i = 0; i <= R.cap() + 2; ++i) {
    Scalar z = y.pow_u(uint64_t(R.p()));
    if ((z - y).zero_mod(R.cap()) == Cong::kYes) return z;
    y = z;
  }
  throw ConvergenceError("teichmuller iteration failed to stabilize");
}

// Projection onto the 1 + pZ_p factor: u = ω(u)·⟨u⟩.
inline Scalar angle_proj(const Scalar& u) { return u / teichmuller(u); }

// Iwasawa logarithm: kills Teichmüller torsion, log u = log⟨u⟩.
inline Scalar iw_log(const Scalar& u) {
  if (!u.is_unit()) throw ValuationError("iw_log of a non-unit");
  const Zp& R = u.ring();
  Scalar x = angle_proj(u) - Scalar::from_int(R, 1);
  Scalar sum = Scalar::zero(R);
  if (x.is_exact_zero()) return sum;
  Scalar pw = Scalar::from_int(R, 1);
  for (int i = 1; i <= R.cap() + 4; ++i) {
    pw *= x;
    Scalar term = pw / Scalar::from_int(R, i);
    sum = (i % 2) ? sum + term : sum - term;
  }
  return sum;
}

// Iwasawa exponential on p^1 Z_p (p odd).
inline Scalar iw_exp(const Scalar& x) {
  const Zp& R = x.ring();
  if (x.zero_mod(1) != Cong::kYes)
    throw ConvergenceError("iw_exp requires v_p(x) >= 1");
  Scalar sum = Scalar::from_int(R, 1);
  Scalar term = Scalar::from_int(R, 1);
  int imax = (4 * (R.cap() + 2)) / 3 + 2;
  for (int i = 1; i <= imax; ++i) {
    term = term * x / Scalar::from_int(R, i);
    sum += term;
  }
  return sum;
}

// k-th root of a one-unit for p ∤ k, v ↦ exp(log(v)/k).
inline Scalar kth_root_one_unit(const Scalar& v, int64_t k) {
  const Zp& R = v.ring();
  if (k <= 0) throw DomainError("kth_root_one_unit requires k >= 1");
  if (k % R.p() == 0) throw HypothesisError("kth root requires p does not divide k");
  if ((v - Scalar::from_int(R, 1)).zero_mod(1) != Cong::kYes)
    throw ValuationError("kth_root_one_unit requires v in 1 + pZ_p");
  return iw_exp(iw_log(v) / Scalar::from_int(R, (long long)k));
}

}  // namespace lt
