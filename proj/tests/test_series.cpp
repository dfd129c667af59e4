#include "doctest.h"
#include "lt/rng.hpp"
#include "lt/series.hpp"

using namespace lt;

namespace {

TruncSeries<Scalar> rand_series(const Zp& R, Rng& rng, int deg, bool unit_const) {
  TruncSeries<Scalar> s(Scalar::zero(R), deg);
  for (int i = 0; i <= deg; ++i)
    s.mut(i) = Scalar::from_int(R, (long long)(rng() % R.pow(R.cap())));
  if (unit_const) {
    while (!s[0].is_unit()) s.mut(0) = Scalar::from_int(R, (long long)(rng() % 97));
  } else {
    s.mut(0) = Scalar::zero(R);
  }
  return s;
}

}  // namespace

TEST_CASE("revert: identity, frozen low coefficients, two-sided inverse") {
  Zp R(5, 14);
  const int D = 16;
  Scalar z = Scalar::zero(R), one = Scalar::from_int(R, 1);
  TruncSeries<Scalar> x = TruncSeries<Scalar>::linear(one, D);

  CHECK((x.revert() - x).zero_mod(14) == Cong::kYes);

  // revert(X + X^2) = X - X^2 + 2X^3 - 5X^4 + ... (signed Catalan numbers)
  TruncSeries<Scalar> g(z, D);
  g.mut(1) = one;
  g.mut(2) = one;
  TruncSeries<Scalar> r = g.revert();
  CHECK((r[1] - Scalar::from_int(R, 1)).zero_mod(12) == Cong::kYes);
  CHECK((r[2] + Scalar::from_int(R, 1)).zero_mod(12) == Cong::kYes);
  CHECK((r[3] - Scalar::from_int(R, 2)).zero_mod(12) == Cong::kYes);
  CHECK((r[4] + Scalar::from_int(R, 5)).zero_mod(12) == Cong::kYes);
  CHECK((r[5] - Scalar::from_int(R, 14)).zero_mod(12) == Cong::kYes);
  CHECK((g.compose(r) - x).zero_mod(12) == Cong::kYes);
  CHECK((r.compose(g) - x).zero_mod(12) == Cong::kYes);

  Rng rng(derive_seed(2, "revert"));
  for (int t = 0; t < 10; ++t) {
    TruncSeries<Scalar> h = rand_series(R, rng, D, false);
    while (!h[1].is_unit()) h.mut(1) = Scalar::from_int(R, (long long)(rng() % 97));
    CHECK((h.compose(h.revert()) - x).zero_mod(10) == Cong::kYes);
  }

  TruncSeries<Scalar> bad(z, D);
  bad.mut(1) = Scalar::from_int(R, 5);
  CHECK_THROWS_AS(bad.revert(), SingularError);
}

TEST_CASE("compose at zero returns the constant term") {
  Zp R(5, 10);
  Rng rng(derive_seed(2, "compose0"));
  TruncSeries<Scalar> g = rand_series(R, rng, 12, true);
  TruncSeries<Scalar> zero(Scalar::zero(R), 12);
  TruncSeries<Scalar> c = g.compose(zero);
  CHECK((c[0] - g[0]).zero_mod(10) == Cong::kYes);
  for (int i = 1; i <= 12; ++i) CHECK(c[i].zero_mod(10) != Cong::kNo);
}

TEST_CASE("log_series reproduces the displayed series and is additive") {
  Zp R(5, 12);
  const int D = 14;
  Scalar z = Scalar::zero(R), one = Scalar::from_int(R, 1);

  // log(1) = 0
  TruncSeries<Scalar> ones = TruncSeries<Scalar>::constant(one, D);
  CHECK(log_series(ones).zero_mod(10) == Cong::kYes);

  // log(1+X) = X - X^2/2 + X^3/3 - ...
  TruncSeries<Scalar> g(z, D);
  g.mut(0) = one;
  g.mut(1) = one;
  TruncSeries<Scalar> lg = log_series(g);
  for (int i = 1; i <= D; ++i) {
    Scalar expect = one.div_small(i).mul_small(i % 2 ? 1 : -1);
    CHECK((lg[i] - expect).zero_mod(9) == Cong::kYes);
  }

  Rng rng(derive_seed(2, "logadd"));
  for (int t = 0; t < 8; ++t) {
    TruncSeries<Scalar> a = rand_series(R, rng, D, true);
    TruncSeries<Scalar> b = rand_series(R, rng, D, true);
    CHECK((log_series(a * b) - log_series(a) - log_series(b)).zero_mod(9) ==
          Cong::kYes);
  }
}

TEST_CASE("series inverse") {
  Zp R(7, 10);
  Rng rng(derive_seed(2, "seriesinv"));
  TruncSeries<Scalar> one = TruncSeries<Scalar>::constant(Scalar::from_int(R, 1), 12);
  for (int t = 0; t < 8; ++t) {
    TruncSeries<Scalar> a = rand_series(R, rng, 12, true);
    CHECK((a * a.inverse() - one).zero_mod(9) == Cong::kYes);
  }
}

TEST_CASE("dop: chain rule on monomials in lambda, Leibniz law") {
  Zp R(5, 12);
  const int D = 14;
  Rng rng(derive_seed(2, "dop"));
  // synthetic formal logarithm: lambda = X + higher terms, lambda'(0) = 1
  TruncSeries<Scalar> lam = rand_series(R, rng, D, false);
  lam.mut(1) = Scalar::from_int(R, 1);
  TruncSeries<Scalar> lpi = lam.derivative().inverse();

  // D(lambda) = 1
  TruncSeries<Scalar> one = TruncSeries<Scalar>::constant(Scalar::from_int(R, 1), D - 1);
  CHECK((dop(lam, lpi, 1) - one).zero_mod(9) == Cong::kYes);

  // D(c) = 0
  TruncSeries<Scalar> c = TruncSeries<Scalar>::constant(Scalar::from_int(R, 9), D);
  CHECK(dop(c, lpi, 1).zero_mod(9) == Cong::kYes);

  // D(lambda^m) = m lambda^{m-1}
  for (int m = 2; m <= 4; ++m) {
    TruncSeries<Scalar> lhs = dop(lam.pow_u(uint64_t(m)), lpi, 1);
    TruncSeries<Scalar> rhs = lam.pow_u(uint64_t(m - 1)).mul_small(m).truncated(D - 1);
    CHECK((lhs - rhs).zero_mod(9) == Cong::kYes);
  }

  // Leibniz: D(gh) = D(g)h + gD(h)
  for (int t = 0; t < 8; ++t) {
    TruncSeries<Scalar> g = rand_series(R, rng, D, true);
    TruncSeries<Scalar> h = rand_series(R, rng, D, true);
    TruncSeries<Scalar> lhs = dop(g * h, lpi, 1);
    TruncSeries<Scalar> rhs = dop(g, lpi, 1) * h.truncated(D - 1) +
                              g.truncated(D - 1) * dop(h, lpi, 1);
    CHECK((lhs - rhs).zero_mod(9) == Cong::kYes);
  }

  CHECK_THROWS_AS(dop(lam, lpi, -1), DomainError);
}

TEST_CASE("bivariate series multiply as series-over-series") {
  Zp R(5, 10);
  const int D = 8;
  Scalar z = Scalar::zero(R), one = Scalar::from_int(R, 1);
  using Ser = TruncSeries<Scalar>;
  using Biv = TruncSeries<Ser>;  // outer Y, inner X
  Ser zx(z, D);
  // W(X,Y) = X + Y + XY against (1+X)(1+Y) - 1
  Biv w(zx, D);
  w.mut(0) = Ser::linear(one, D);
  w.mut(1) = Ser::constant(one, D) + Ser::linear(one, D);
  Biv lhs = w + Biv::constant(Ser::constant(one, D), D);
  Biv a(zx, D), b(zx, D);
  a.mut(0) = Ser::constant(one, D) + Ser::linear(one, D);  // (1+X)
  b.mut(0) = Ser::constant(one, D);
  b.mut(1) = Ser::constant(one, D);  // (1+Y)
  CHECK((lhs - a * b).zero_mod(8) == Cong::kYes);
}
