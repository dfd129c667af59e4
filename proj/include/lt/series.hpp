#pragma once

#include <functional>
#include <vector>

#include "lt/errors.hpp"
#include "lt/scalar.hpp"

namespace lt {

// Dense truncated power series over a coefficient ring R. R is duck-typed:
// it must provide +, -, *, unary -, is_exact_zero(), zero_mod(int),
// zero_like(), one_like(), from_int_like(long long), mul_small, div_small,
// mul_scalar. Scalar itself and every ring in lt/rings.hpp qualify, as does
// TruncSeries<R> (so bivariate series are TruncSeries<TruncSeries<R>>).
template <class R>
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(const R& zero, int deg) : c_(size_t(deg) + 1, zero) {
    if (deg < 0) throw DomainError("series degree must be >= 0");
  }

  static TruncSeries constant(const R& v, int deg) {
    TruncSeries s(v.zero_like(), deg);
    s.c_[0] = v;
    return s;
  }

  // c1 * X, truncated at deg.
  static TruncSeries linear(const R& c1, int deg) {
    TruncSeries s(c1.zero_like(), deg);
    if (deg >= 1) s.c_[1] = c1;
    return s;
  }

  int degree() const { return int(c_.size()) - 1; }
  const R& operator[](int i) const { return c_[size_t(i)]; }
  R& mut(int i) { return c_[size_t(i)]; }
  const R& back() const { return c_.back(); }

  TruncSeries truncated(int d) const {
    TruncSeries s(c_[0].zero_like(), d);
    for (int i = 0; i <= std::min(d, degree()); ++i) s.c_[size_t(i)] = c_[size_t(i)];
    return s;
  }

  bool is_exact_zero() const {
    for (const R& x : c_)
      if (!x.is_exact_zero()) return false;
    return true;
  }

  Cong zero_mod(int e) const {
    Cong out = Cong::kYes;
    for (const R& x : c_) {
      Cong c = x.zero_mod(e);
      if (c == Cong::kNo) return Cong::kNo;
      if (c == Cong::kUnknown) out = Cong::kUnknown;
    }
    return out;
  }

  // Ring-concept hooks so TruncSeries can itself be a coefficient ring.
  TruncSeries zero_like() const {
    return TruncSeries(c_[0].zero_like(), degree());
  }
  TruncSeries one_like() const {
    return constant(c_[0].one_like(), degree());
  }
  TruncSeries from_int_like(long long n) const {
    return constant(c_[0].from_int_like(n), degree());
  }
  TruncSeries mul_small(long long n) const {
    return mapped([&](const R& x) { return x.mul_small(n); });
  }
  TruncSeries div_small(long long n) const {
    return mapped([&](const R& x) { return x.div_small(n); });
  }
  TruncSeries mul_scalar(const Scalar& s) const {
    return mapped([&](const R& x) { return x.mul_scalar(s); });
  }

  TruncSeries operator-() const {
    return mapped([](const R& x) { return -x; });
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries s = a;
    for (int i = 0; i <= std::min(a.degree(), b.degree()); ++i)
      s.c_[size_t(i)] = s.c_[size_t(i)] + b.c_[size_t(i)];
    return s;
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    return a + (-b);
  }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    int d = std::min(a.degree(), b.degree());
    TruncSeries s(a.c_[0].zero_like(), d);
    for (int i = 0; i <= std::min(a.degree(), d); ++i) {
      if (a.c_[size_t(i)].is_exact_zero()) continue;
      for (int j = 0; i + j <= d && j <= b.degree(); ++j) {
        if (b.c_[size_t(j)].is_exact_zero()) continue;
        s.c_[size_t(i + j)] = s.c_[size_t(i + j)] + a.c_[size_t(i)] * b.c_[size_t(j)];
      }
    }
    return s;
  }

  TruncSeries& operator+=(const TruncSeries& b) { return *this = *this + b; }
  TruncSeries& operator-=(const TruncSeries& b) { return *this = *this - b; }
  TruncSeries& operator*=(const TruncSeries& b) { return *this = *this * b; }

  TruncSeries scale(const R& r) const {
    return mapped([&](const R& x) { return x * r; });
  }

  // The derivative of a degree-D truncation is only known to degree D-1.
  TruncSeries derivative() const {
    TruncSeries s(c_[0].zero_like(), std::max(degree() - 1, 0));
    for (int i = 1; i <= degree(); ++i) s.c_[size_t(i) - 1] = c_[size_t(i)].mul_small(i);
    return s;
  }

  // g∘h by Horner. h must satisfy h(0) = 0 or h(0) topologically nilpotent;
  // with a nilpotent constant term the result carries the documented
  // truncation loss of the double series.
  TruncSeries compose(const TruncSeries& h) const {
    TruncSeries acc = constant(c_[size_t(degree())], h.degree());
    for (int m = degree() - 1; m >= 0; --m) {
      acc = acc * h;
      acc.c_[0] = acc.c_[0] + c_[size_t(m)];
    }
    return acc;
  }

  // Evaluation at a point of positive valuation (Horner).
  R evaluate(const R& x) const {
    R acc = c_[size_t(degree())];
    for (int m = degree() - 1; m >= 0; --m) acc = acc * x + c_[size_t(m)];
    return acc;
  }

  // Evaluation into a bigger ring E via an embedding functor.
  template <class E, class Fn>
  E evaluate_mapped(Fn lift, const E& x) const {
    E acc = lift(c_[size_t(degree())]);
    for (int m = degree() - 1; m >= 0; --m) acc = acc * x + lift(c_[size_t(m)]);
    return acc;
  }

  template <class Fn>
  TruncSeries mapped(Fn f) const {
    TruncSeries s = *this;
    for (R& x : s.c_) x = f(x);
    return s;
  }

  // Compositional inverse: g(revert(g)) = X. Needs g(0) = 0 and g'(0) a unit.
  TruncSeries revert() const {
    if (!c_[0].is_exact_zero() && c_[0].zero_mod(1 << 20) == Cong::kNo)
      throw SingularError("revert requires zero constant term");
    R c1 = c_[1];
    if (!c1.is_unit()) throw SingularError("revert requires a unit linear coefficient");
    R c1inv = c1.inverse();
    int d = degree();
    TruncSeries e(c_[0].zero_like(), d);
    if (d >= 1) e.c_[1] = c1inv;
    // e_m from [X^m] g(e(X)) = delta_{m,1}. For j >= 2 the coefficient
    // [X^m] e^j only involves e_1..e_{m-1}, so the solve is triangular.
    for (int m = 2; m <= d; ++m) {
      TruncSeries ej = e.truncated(m);
      R acc = c_[0].zero_like();
      for (int j = 2; j <= m; ++j) {
        ej = ej * e.truncated(m);
        if (j <= degree()) acc = acc + c_[size_t(j)] * ej[m];
      }
      e.c_[size_t(m)] = -(acc * c1inv);
    }
    return e;
  }

  // Multiplicative inverse of a unit series.
  TruncSeries inverse() const {
    R a0inv = c_[0].inverse();
    int d = degree();
    TruncSeries b(c_[0].zero_like(), d);
    b.c_[0] = a0inv;
    for (int m = 1; m <= d; ++m) {
      R acc = c_[0].zero_like();
      for (int j = 1; j <= m; ++j) acc = acc + c_[size_t(j)] * b.c_[size_t(m - j)];
      b.c_[size_t(m)] = -(acc * a0inv);
    }
    return b;
  }

  TruncSeries pow_u(uint64_t k) const {
    TruncSeries acc = one_like(), base = *this;
    while (k) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }

 private:
  std::vector<R> c_;
};

// Coefficientwise map into a different coefficient ring.
template <class S, class R, class Fn>
TruncSeries<S> map_coeffs(const TruncSeries<R>& a, Fn f) {
  TruncSeries<S> out(f(a[0]).zero_like(), a.degree());
  for (int i = 0; i <= a.degree(); ++i) out.mut(i) = f(a[i]);
  return out;
}

// Convolution of an R-series with a Scalar-series (coefficient action).
template <class R>
TruncSeries<R> mul_scalar_series(const TruncSeries<R>& a, const TruncSeries<Scalar>& b) {
  int d = std::min(a.degree(), b.degree());
  TruncSeries<R> s(a[0].zero_like(), d);
  for (int i = 0; i <= d; ++i) {
    if (a[i].is_exact_zero()) continue;
    for (int j = 0; i + j <= d; ++j) {
      if (b[j].is_exact_zero()) continue;
      s.mut(i + j) = s.mut(i + j) + a[i].mul_scalar(b[j]);
    }
  }
  return s;
}

// log of a unit series: iw_log(g(0)) + log(1 + h), h = g/g(0) - 1.
// The constant-term log resolves by ADL per coefficient ring.
template <class R>
TruncSeries<R> log_series(const TruncSeries<R>& g) {
  R c0 = g[0];
  TruncSeries<R> h = g.scale(c0.inverse());
  h.mut(0) = h[0] - c0.one_like();
  int d = g.degree();
  TruncSeries<R> sum = TruncSeries<R>::constant(iw_log(c0), d);
  TruncSeries<R> pw = TruncSeries<R>::constant(c0.one_like(), d);
  for (int i = 1; i <= d; ++i) {
    pw *= h;
    TruncSeries<R> term = pw.div_small(i);
    sum = (i % 2) ? sum + term : sum - term;
  }
  return sum;
}

// The twisted derivation D = (1/λ') d/dX, applied k times. `lam_prime_inv`
// is the precomputed series 1/λ' over the scalars.
template <class R>
TruncSeries<R> dop(const TruncSeries<R>& g, const TruncSeries<Scalar>& lam_prime_inv,
                   int k) {
  if (k < 0) throw DomainError("dop requires k >= 0");
  TruncSeries<R> out = g;
  for (int i = 0; i < k; ++i) out = mul_scalar_series(out.derivative(), lam_prime_inv);
  return out;
}

}  // namespace lt
