#include "doctest.h"
#include "lt/rng.hpp"
#include "lt/scalar.hpp"

using namespace lt;

namespace {

Scalar rand_unit(const Zp& R, Rng& rng) {
  uint64_t m = rng() % R.pow(R.cap());
  while (m % uint64_t(R.p()) == 0) m = rng() % R.pow(R.cap());
  return Scalar::from_int(R, (long long)m);
}

Scalar rand_one_unit(const Zp& R, Rng& rng) {
  uint64_t m = 1 + uint64_t(R.p()) * (rng() % R.pow(R.cap() - 1));
  return Scalar::from_int(R, (long long)m);
}

}  // namespace

TEST_CASE("scalar arithmetic tracks precision") {
  Zp R(5, 12);
  Scalar a = Scalar::from_int(R, 7);
  Scalar b = Scalar::from_int(R, -7);
  Scalar z = a + b;
  CHECK(z.is_zero_state());
  CHECK(z.aprec() >= 12);

  // cancellation: (1 + 5^3) - 1 has valuation 3
  Scalar c = Scalar::from_int(R, 1 + 125) - Scalar::from_int(R, 1);
  REQUIRE(c.valuation().has_value());
  CHECK(*c.valuation() == 3);

  // division by p^v reduces absolute precision by v
  Scalar d = Scalar::from_int(R, 25);
  Scalar e = d / Scalar::from_int(R, 5);
  CHECK(*e.valuation() == 1);
  Scalar f = Scalar::from_parts(R, 3, 2, 6);  // 3*p^2 known mod p^8
  CHECK(f.aprec() == 8);
  CHECK((f / Scalar::from_int(R, 25)).aprec() == 6);
}

TEST_CASE("valuation is multiplicative") {
  Zp R(7, 10);
  Rng rng(derive_seed(1, "valmul"));
  for (int i = 0; i < 200; ++i) {
    Scalar x = rand_unit(R, rng).shifted(int(rng() % 4));
    Scalar y = rand_unit(R, rng).shifted(int(rng() % 4));
    CHECK(*(x * y).valuation() == *x.valuation() + *y.valuation());
  }
}

TEST_CASE("teichmuller: fixed points and frozen values") {
  Zp R5(5, 8);
  // ω(1) = 1
  CHECK(teichmuller(Scalar::from_int(R5, 1)).lift() == 1);
  // p=5: ω(2) = 7 mod 25 (2^5 = 32 ≡ 7)
  Scalar w2 = teichmuller(Scalar::from_int(R5, 2));
  CHECK(w2.lift() % 25 == 7);
  // ω(p-1) = -1
  Scalar wm = teichmuller(Scalar::from_int(R5, 4));
  CHECK((wm + Scalar::from_int(R5, 1)).zero_mod(8) == Cong::kYes);
  // ω(a)^{p-1} = 1 exactly mod p^cap
  Rng rng(derive_seed(1, "teich"));
  for (int i = 0; i < 50; ++i) {
    Scalar w = teichmuller(rand_unit(R5, rng));
    CHECK((w.pow_u(4) - Scalar::from_int(R5, 1)).zero_mod(8) == Cong::kYes);
  }
  CHECK_THROWS_AS(teichmuller(Scalar::from_int(R5, 10)), ValuationError);
}

TEST_CASE("angle projection") {
  Zp R(5, 9);
  // ⟨1+p⟩ = 1+p
  Scalar u = Scalar::from_int(R, 6);
  CHECK((angle_proj(u) - u).zero_mod(9) == Cong::kYes);
  // ⟨7⟩ ≡ 1 mod 25 but not mod 125  (ω(7) ≡ 7 mod 25, ≡ 57 mod 125)
  Scalar a7 = angle_proj(Scalar::from_int(R, 7));
  CHECK((a7 - Scalar::from_int(R, 1)).zero_mod(2) == Cong::kYes);
  CHECK((a7 - Scalar::from_int(R, 1)).zero_mod(3) == Cong::kNo);
  // u = ω(u)·⟨u⟩ exactly
  Rng rng(derive_seed(1, "angle"));
  for (int i = 0; i < 50; ++i) {
    Scalar v = rand_unit(R, rng);
    CHECK((teichmuller(v) * angle_proj(v) - v).zero_mod(9) == Cong::kYes);
    CHECK((angle_proj(teichmuller(v)) - Scalar::from_int(R, 1)).zero_mod(9) ==
          Cong::kYes);
  }
}

TEST_CASE("iwasawa log/exp") {
  Zp R(5, 10);
  const int M = 10;
  const int B = 2 + 1;  // ceil(log_5 10) + 1
  CHECK(iw_log(Scalar::from_int(R, 1)).is_zero_state());
  // log kills torsion
  CHECK(iw_log(teichmuller(Scalar::from_int(R, 3))).zero_mod(M - B) == Cong::kYes);
  // exp(log(1+p)) = 1+p
  Scalar w = Scalar::from_int(R, 6);
  CHECK((iw_exp(iw_log(w)) - w).zero_mod(M - B) == Cong::kYes);
  // round trip on random one-units
  Rng rng(derive_seed(1, "iwlogexp"));
  for (int i = 0; i < 60; ++i) {
    Scalar v = rand_one_unit(R, rng);
    CHECK((iw_exp(iw_log(v)) - v).zero_mod(M - B) == Cong::kYes);
  }
  // log is a homomorphism on one-units
  for (int i = 0; i < 40; ++i) {
    Scalar x = rand_one_unit(R, rng), y = rand_one_unit(R, rng);
    CHECK((iw_log(x * y) - iw_log(x) - iw_log(y)).zero_mod(M - B) == Cong::kYes);
  }
  CHECK_THROWS_AS(iw_exp(Scalar::from_int(R, 2)), ConvergenceError);
}

TEST_CASE("kth root of one-units") {
  Zp R(5, 10);
  const int MB = 7;
  Scalar one = Scalar::from_int(R, 1);
  CHECK((kth_root_one_unit(one, 3) - one).zero_mod(MB) == Cong::kYes);
  Scalar w = Scalar::from_int(R, 6);
  CHECK((kth_root_one_unit(w.pow_u(4), 4) - w).zero_mod(MB) == Cong::kYes);
  Rng rng(derive_seed(1, "kthroot"));
  for (int i = 0; i < 60; ++i) {
    Scalar v = rand_one_unit(R, rng);
    int64_t k = 1 + int64_t(rng() % 9);
    if (k % 5 == 0) k += 1;
    Scalar r = kth_root_one_unit(v, k);
    CHECK((r.pow_u(uint64_t(k)) - v).zero_mod(MB) == Cong::kYes);
  }
  CHECK_THROWS_AS(kth_root_one_unit(Scalar::from_int(R, 6), 5), HypothesisError);
}
