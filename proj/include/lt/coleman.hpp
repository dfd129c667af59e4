#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lt/lubin_tate.hpp"
#include "lt/rng.hpp"

namespace lt {

using USer = TruncSeries<UnramElem>;   // series with O_L coefficients
using TSer = TruncSeries<TowerElem>;   // series with R_1 coefficients

// Per-configuration context for the Coleman layer: torsion translates
// s_a(X) = X [+]_F omega(a) pi1 to X-degree DN (built from the asymmetric
// bivariate group law exp_f(lambda(X)_{<=DN} + lambda(Y)_{<=D}), so the
// lambda-side truncation tail sits above v_P = D), and the f-power table for
// the triangular norm solve.
struct ColemanCtx {
  const LTGroup* G = nullptr;
  const ThetaData* th = nullptr;
  const TorsionContext* tc = nullptr;
  const PeriodCtx* P = nullptr;
  int DN = 0;
  std::vector<Ser> f_pow;            // f^n truncated to DN, n = 0..DN
  std::vector<TSer> s;               // s[a], a = 1..p-1 (s[0] unused)
  std::vector<TowerElem> pi1_pow;    // pi1^j, j = 0..D
};

ColemanCtx build_coleman(const LTGroup& G, const ThetaData& th, const TorsionContext& tc,
                         const PeriodCtx& P, int DN);

// A unit series with (Ng)=g^F certified to degree cert_degree at precision
// cert_prec (the realized congruence level, reported honestly).
struct NormCoherentUnit {
  USer g;
  int cert_degree = 0;
  int cert_prec = 0;
};

struct CertResult {
  int prec = 0;      // N g = g^F holds mod p^prec (certified)
  bool sharp = false;  // true when some coefficient is certified nonzero at
                       // exactly p^prec, so the level cannot be improved
};

// The Coleman norm operator: solves (Ng)([pi](X)) = prod_lambda g(X [+] lambda)
// triangularly (diagonal pi^n). Output degree DN; the R_1-coefficient
// computation is asserted to land in O_L.
USer norm_operator(const ColemanCtx& cc, const USer& g);

// Per-degree certificate for N g = g^F.
CertResult check_coherence(const ColemanCtx& cc, const USer& g);

// Fixed-point iteration g <- exactify((Ng)^{F^{-1}}) from a seeded random
// unit series with g(0) in 1 + pZ_p.
NormCoherentUnit gen_norm_coherent(const ColemanCtx& cc, uint64_t seed, int target_prec,
                                   int max_iters);

// Multiply two certified units (recertifies the product).
NormCoherentUnit unit_product(const ColemanCtx& cc, const NormCoherentUnit& a,
                              const NormCoherentUnit& b, int target_prec);

// u1 = g^{F^{-1}}(pi1) (a 1-unit of R_1) and u0 = g(0)^{1-F^{-1}}; verifies
// the level-1 norm compatibility prod_a sigma_a(u1) = u0.
struct ULevels {
  UnramElem u0;
  TowerElem u1;
  int norm_compat_prec = 0;
};
ULevels u_levels(const ColemanCtx& cc, const NormCoherentUnit& u, int assert_prec);

// log-tilde by the second displayed form log g - (1/p) log g^F([pi] X);
// cross-checked against the translate-sum form to degree DN when requested.
struct LogTilde {
  USer lt;              // degree D
  int crosscheck_prec;  // realized agreement of the two forms (-1 if skipped)
};
LogTilde log_tilde(const ColemanCtx& cc, const NormCoherentUnit& u, bool crosscheck,
                   int assert_prec);

// The measure attached to a unit, represented by log-tilde together with the
// torsion evaluation dictionary; finv marks the F^{-1}-twisted measure of
// Eq (4).
struct MeasureSeries {
  const ColemanCtx* cc = nullptr;
  USer lt;
  bool finv = false;
};

MeasureSeries measure_of(const ColemanCtx& cc, const LogTilde& lt);
MeasureSeries twist_finv(const MeasureSeries& A);

// moment(k) = (d_m)^k A |_{X=0} = Ω^k h̃^k(0) (times (p/pi)^k for the twisted
// measure); pure Ω^k by the transfer identity.
PeriodElem moment(const MeasureSeries& A, int k);
// restricted moment over the residue class a mod p
CycElem restricted_moment(const MeasureSeries& A, int a, int k);
// twisted moment [(d_m)^k A]|_{X = zeta1 - 1}
PeriodElem twisted_moment(const MeasureSeries& A, int k);

// (d_m)^k A at X = 0 computed directly from the low-degree series
// A = log-tilde g (theta(X)) — the independent route for the transfer
// cross-check.
PeriodElem moment_direct(const MeasureSeries& A, int k);

}  // namespace lt
