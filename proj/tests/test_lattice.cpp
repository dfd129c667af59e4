#include "doctest.h"
#include "lt/lattice.hpp"
#include "lt/rings.hpp"
#include "lt/rng.hpp"

using namespace lt;

namespace {

// Gram matrix of the trace pairing on the frame alpha^s pi1^t of L1.
Mat l1_gram(const TowerCtx& T) {
  const UnramCtx& L = *T.L;
  int d = L.d, e = T.p() - 1;
  int n = d * e;
  auto frame = [&](int idx) {
    int s = idx / e, t = idx % e;
    return TowerElem::pi1_pow(T, t).mul_unram(UnramElem::alpha_pow(L, s));
  };
  Mat g;
  g.assign(size_t(n), std::vector<Scalar>(size_t(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[size_t(i)][size_t(j)] = trace_to_Qp(frame(i) * frame(j));
  return g;
}

Mat identity_rows(const Zp& R, int n) {
  Mat m(size_t(n), std::vector<Scalar>(size_t(n), Scalar::zero(R)));
  for (int i = 0; i < n; ++i) m[size_t(i)][size_t(i)] = Scalar::from_int(R, 1);
  return m;
}

}  // namespace

TEST_CASE("matrix inverse and SNF over Z_p") {
  Zp R(5, 14);
  Rng rng(derive_seed(4, "matinv"));
  int n = 6;
  for (int trial = 0; trial < 5; ++trial) {
    Mat a;
    a.assign(size_t(n), std::vector<Scalar>(size_t(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int sh = int(rng() % 3);
        a[size_t(i)][size_t(j)] =
            Scalar::from_int(R, (long long)(rng() % R.pow(10))).shifted(sh - 1);
      }
    Mat ai;
    try {
      ai = mat_inv(a);
    } catch (const RankError&) {
      continue;  // randomly singular to precision; skip
    }
    Mat prod = mat_mul(a, ai);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Scalar want = (i == j) ? Scalar::from_int(R, 1) : Scalar::zero(R);
        CHECK((prod[size_t(i)][size_t(j)] - want).zero_mod(6) != Cong::kNo);
      }
  }

  // frozen SNF: diag valuations 0, 1, 3 with off-diagonal noise
  Mat m(3, std::vector<Scalar>(3, Scalar::zero(R)));
  m[0][0] = Scalar::from_int(R, 2);
  m[1][1] = Scalar::from_int(R, 5 * 3);
  m[2][2] = Scalar::from_int(R, 125 * 7);
  m[0][2] = Scalar::from_int(R, 125 * 2);
  m[1][0] = Scalar::from_int(R, 5);
  auto sv = snf_valuations(LatticeDesc::from_rows(m));
  REQUIRE(sv.size() == 3);
  CHECK(sv[0] == 0);
  CHECK(sv[1] == 1);
  CHECK(sv[2] == 3);
}

TEST_CASE("dual lattice facts for the L1 trace pairing") {
  Zp R(5, 14);
  UnramCtx L = build_L(R, 2);
  TowerCtx T(L, Scalar::from_int(R, 35));
  int n = 2 * 4;
  Mat g = l1_gram(T);

  LatticeDesc std_lat = LatticeDesc::from_rows(identity_rows(R, n));
  LatticeDesc dual = dual_lattice(std_lat, g);

  // dual of O_{L1} is the inverse different: d slots at 0 and d(p-2) at -1
  auto sv = snf_valuations(dual);
  int zeros = 0, negs = 0;
  for (int v : sv) {
    if (v == 0) ++zeros;
    if (v == -1) ++negs;
  }
  CHECK(zeros == 2);
  CHECK(negs == 2 * 3);

  // dual(p L) = p^{-1} dual(L)
  LatticeDesc dual_p = dual_lattice(std_lat.shifted(1), g);
  CHECK(lattice_equal(dual_p, dual.shifted(-1)) == Cong::kYes);

  // double dual returns the (saturated full-rank) original
  LatticeDesc dd = dual_lattice(dual, g);
  CHECK(lattice_equal(dd, std_lat) == Cong::kYes);

  // containment: p O_{L1} inside O_{L1}, not conversely
  CHECK(lattice_contains(std_lat, std_lat.shifted(1)) == Cong::kYes);
  CHECK(lattice_contains(std_lat.shifted(1), std_lat) == Cong::kNo);

  // rank-deficient input
  Mat bad(size_t(n), std::vector<Scalar>(size_t(n), Scalar::zero(R)));
  for (int j = 0; j < n; ++j) bad[0][size_t(j)] = Scalar::from_int(R, 1);
  CHECK_THROWS_AS(dual_lattice(LatticeDesc::from_rows(bad), g), RankError);
}
