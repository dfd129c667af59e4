#pragma once

namespace lt {

// Documented precision-loss budgets B: every suite assertion is made
// mod p^{M-B} with the B named here. Realized losses (tracked by the scalar
// kernel plus guard digits) are reported next to each check.
struct Budgets {
  // iw_exp ∘ iw_log round trip: B = ceil(log_p M) + 1.
  static int scalar_exp_log(long long p, int M) {
    int b = 1;
    long long q = p;
    while (q < M) {
      q *= p;
      ++b;
    }
    return b + 1;
  }
  static constexpr int kCore = 4;      // group law, formal logarithm, theta
  static constexpr int kTorsion = 6;   // zeta_1 chain
  static constexpr int kColeman = 6;   // norm operator certificates
  static constexpr int kExp = 6;       // reciprocity / exponential layer
  static constexpr int kLattice = 6;   // eigenspace and lattice layer
  // equations (2),(3),(4),(6) at weight k
  static constexpr int equations(int k) { return 2 * k + 4; }
  // norm-operator degree budget D_N
  static constexpr int kNormDegree = 12;
};

}  // namespace lt
