#pragma once

#include <map>
#include <vector>

#include "lt/rings.hpp"
#include "lt/series.hpp"

namespace lt {

using Ser = TruncSeries<Scalar>;
using Biv = TruncSeries<Ser>;              // outer Y, inner X
using OSer = TruncSeries<OmegaScalar>;     // series with Q_p[Ω^±] coefficients

// The height-one Lubin-Tate module for f(T) = pi T + T^p. The group law and
// the multiplication endomorphisms are built through the formal logarithm
// (the unique-commuting-series characterization is certified by the tests).
struct LTGroup {
  const Zp* zp = nullptr;
  Scalar pi;
  int D = 0;

  Ser f;              // pi T + T^p
  Ser lambda;         // formal logarithm, limit of f∘...∘f / pi^n
  Ser exp_f;          // compositional inverse of lambda
  Ser lam_prime_inv;  // 1/lambda'
  Biv group_law;      // F(X,Y) to bidegree (D/2, D/2)

  mutable std::map<std::pair<uint64_t, int>, Ser> mult_cache;

  // [a]_f = exp_f(a lambda); cached by the canonical digits of a.
  const Ser& mult_by(const Scalar& a) const;
  const Ser& mult_by_int(long long a) const;
};

LTGroup build_group(const Zp& zp, const Scalar& pi, int D);

// The formal logarithm of f = pi T + T^p to the requested degree (limit of
// f∘...∘f / pi^n with a stabilization certificate).
Ser formal_log(const Zp& R, const Scalar& pi, int deg);

// theta and its companions, assembled from powers of log(1+T) and lambda:
//   theta      = exp_f(Ω log(1+T))
//   theta_finv = exp_f((p/pi) Ω log(1+T))   (coefficientwise F^{-1} of theta)
//   eta        = exp_m((pi/p) Ω^{-1} lambda(T)), exp_m(Z) = e^Z - 1,
// so that theta_finv(eta(X)) = X; eta is the multiplicative-side coordinate.
struct ThetaData {
  OSer theta, theta_finv, eta;
  std::vector<Ser> log_pow;  // log(1+T)^j, j = 0..D
  std::vector<Ser> lam_pow;  // lambda^j,   j = 0..D
};

ThetaData build_theta(const LTGroup& G, const PeriodCtx& P);

// theta evaluated at a formal-multiplicative argument c with log(1+c) known:
// used for theta((1+T)^p - 1) via p·log(1+T).
OSer theta_at_log_multiple(const ThetaData& th, const PeriodCtx& P, long long mult);

// Level-1 torsion. pi1 is the class of T. The root of unity zeta1 is the
// formal cyclotomic generator of CycElem, linked to the tower through the
// evaluation dictionary
//     theta^{F^{-n}}(zeta1^i - 1) = [i]_f(pi1) = omega(i) pi1 =: tau[i],
// which is forced by the series identities
//     [pi] ∘ theta^{F^{-1}} = theta ∘ [p]_{G_m},
//     [p]_{G_m} ∘ eta = eta ∘ [pi],
//     theta^{F^{-1}} ∘ eta = X.
// (The series 1 + eta(pi1) itself does not converge in the transcendental-Ω
// model: its tail carries v_P ≈ 1 content at every degree p^s, the classical
// exp/log boundary at torsion depth. The dictionary is the convergent avatar.)
// build_torsion verifies the forcing identities, the dictionary consistency
// and the cyclotomic-layer mechanics, and throws on failure.
struct TorsionContext {
  const PeriodCtx* P = nullptr;
  const LTGroup* G = nullptr;
  TowerElem pi1;
  std::vector<TowerElem> tau;  // tau[i] = omega(i) pi1, i = 0..p-1 (tau[0] = 0)
  std::vector<int> m_of_a;     // sigma_a(zeta1) = zeta1^{m(a)}
  int realized_prec = 0;

  PeriodElem tau_period(int i) const { return PeriodElem::from_tower(*P, tau[size_t(i)]); }
  CycElem zeta(int pow = 1) const {
    return CycElem::zeta_monomial(*P, PeriodElem::from_int(*P, 1), pow);
  }
};

TorsionContext build_torsion(const LTGroup& G, const ThetaData& th, const PeriodCtx& P,
                             int assert_prec);

// F(u(X), v(X)) for univariate substitutions into the bivariate group law.
Ser biv_subst(const Biv& F, const Ser& u, const Ser& v);

// Difference of the two sides of theta((1+X)(1+Y)-1) = F(theta(X), theta(Y))
// at bidegree (b, b), computed over Q_p[Ω^±].
using OBiv = TruncSeries<TruncSeries<OmegaScalar>>;
OBiv theta_hom_defect(const LTGroup& G, const ThetaData& th, const PeriodCtx& P, int b);

}  // namespace lt
