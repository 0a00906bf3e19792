// Inequality checkers. The independent oracle route: for a finite table the
// lambda-norm is a polynomial P(lam) with coefficients sum_{k+l=j} sup/(k! l!),
// the n-th seminorm is its n-th derivative, and every left-hand side below is
// a weighted sum of derivatives of a product polynomial. The tests rebuild
// those products with plain coefficient convolutions and compare against the
// jet-based implementation, then add hand cases including an exact-equality
// configuration that shows the bounds are not checked vacuously.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "vbl/norms.hpp"
#include "vbl/table.hpp"

using namespace vbl;

namespace {

using Poly = std::vector<long double>;

Poly poly_of_table(const DerivativeTable& t) {
  Poly c(t.kmax + t.lmax + 1, 0.0L);
  for (int k = 0; k <= t.kmax; ++k) {
    long double kf = 1.0L;
    for (int i = 2; i <= k; ++i) kf *= i;
    long double lf = 1.0L;
    for (int l = 0; l <= t.lmax; ++l) {
      if (l > 0) lf *= l;
      c[k + l] += t.at(k, l) / (kf * lf);
    }
  }
  return c;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return Poly{0.0L};
  Poly d(p.size() - 1);
  for (std::size_t j = 1; j < p.size(); ++j) d[j - 1] = p[j] * static_cast<long double>(j);
  return d;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0.0L);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

long double eval(const Poly& p, long double x) {
  long double s = 0.0L;
  for (std::size_t j = p.size(); j-- > 0;) s = s * x + p[j];
  return s;
}

// sum_{n=0}^{order} F^{(n)}(lam) / (n!)^2 by repeated coefficient-wise
// differentiation
long double weighted_derivative_sum(Poly f, long double lam, int order) {
  long double s = 0.0L, inv = 1.0L;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) {
      inv /= static_cast<long double>(n) * n;
      f = derivative(f);
    }
    s += eval(f, lam) * inv;
  }
  return s;
}

long double norm_H_poly(const Poly& p, long double lam) {
  return weighted_derivative_sum(p, lam, static_cast<int>(p.size()));
}

long double seminorm_H_poly(Poly p, long double lam) {
  long double s = 0.0L, inv = 1.0L;
  const int top = static_cast<int>(p.size());
  for (int n = 1; n <= top; ++n) {
    inv /= static_cast<long double>(n) * n;
    p = derivative(p);
    s += static_cast<long double>(n) * n * eval(p, lam) * inv;
  }
  return s;
}

}  // namespace

TEST_CASE("combinatorial coefficients: hand values and exhaustive bounds", "[lemma]") {
  REQUIRE(static_cast<double>(combinatorial_A(2, 2)) == Catch::Approx(13.5).epsilon(1e-12));
  REQUIRE(static_cast<double>(combinatorial_A(2, 3)) == Catch::Approx(14.4).epsilon(1e-12));
  REQUIRE(static_cast<double>(combinatorial_A(3, 2)) == Catch::Approx(14.4).epsilon(1e-12));
  REQUIRE(static_cast<double>(combinatorial_B(3, 5)) ==
          Catch::Approx(1.0 / 56.0).epsilon(1e-12));
  REQUIRE(static_cast<double>(combinatorial_B(0, 0)) == Catch::Approx(1.0).epsilon(1e-14));

  double maxA = 0.0;
  for (int n = 2; n <= 50; ++n)
    for (int m = 2; m <= 50; ++m) maxA = std::max(maxA, static_cast<double>(combinatorial_A(n, m)));
  REQUIRE(maxA <= 24.0);
  REQUIRE(maxA >= 13.5);  // attained at the corner

  double maxB = 0.0;
  for (int n = 0; n <= 50; ++n)
    for (int m = 0; m <= 50; ++m) maxB = std::max(maxB, static_cast<double>(combinatorial_B(n, m)));
  REQUIRE(maxB <= 1.0 + 1e-15);
}

TEST_CASE("derivative-shift seminorm bound: hand case and exactness case", "[lemma]") {
  DerivativeTable t = DerivativeTable::zeros(1, 1, Provenance::closed_form);
  t.at(0, 0) = 2.0L;
  t.at(1, 0) = 3.0L;
  t.at(0, 1) = 5.0L;
  t.at(1, 1) = 7.0L;
  // shifted table {3, 7}: |shift|_{0.25,0} = 3 + 0.25*7 = 4.75 vs |t|_{0.25,1} = 11.5
  const CheckResult r0 = check_lemma_shift(t, 0.25, 0);
  REQUIRE(static_cast<double>(r0.lhs) == Catch::Approx(4.75).epsilon(1e-15));
  REQUIRE(static_cast<double>(r0.rhs) == Catch::Approx(11.5).epsilon(1e-15));
  REQUIRE(r0.pass);
  // n = 1: lhs = 7 (entry (0,1) only), rhs = 2 * 7 = 14
  const CheckResult r1 = check_lemma_shift(t, 0.25, 1);
  REQUIRE(static_cast<double>(r1.lhs) == Catch::Approx(7.0).epsilon(1e-15));
  REQUIRE(static_cast<double>(r1.rhs) == Catch::Approx(14.0).epsilon(1e-15));

  // x-only tables make the bound an identity (entry ratio k/(k+l) = 1)
  const DerivativeTable s = table_sin_x(2.0 * pi, 8);
  for (int n = 0; n <= 2; ++n) {
    const CheckResult r = check_lemma_shift(s, 0.45, n);
    REQUIRE(static_cast<double>(r.lhs) ==
            Catch::Approx(static_cast<double>(r.rhs)).epsilon(1e-15));
    REQUIRE(r.pass);
  }
}

TEST_CASE("derivative-shift bound holds on random tables", "[lemma][prop]") {
  TableRng rng(909);
  for (int i = 0; i < 100; ++i) {
    const DerivativeTable t = random_table_2d(rng);
    const double lam = 0.2 + 0.6 * rng.uniform01();
    const CheckResult r = check_lemma_shift(t, lam, i % 3);
    INFO("case " << i);
    REQUIRE(r.pass);
  }
}

TEST_CASE("moment power identity: hand convolution and random property", "[lemma]") {
  DerivativeTable t = DerivativeTable::zeros(2, 0, Provenance::closed_form);
  t.at(0, 0) = 2.0L;
  t.at(1, 0) = 3.0L;
  t.at(2, 0) = 8.0L;
  // a = {2, 1.5, 1} at lam = 0.5; (sum a)^2 = 20.25 must equal the convolution sum
  const CheckResult r = check_power_identity(t, 0.5, 2);
  REQUIRE(static_cast<double>(r.lhs) == Catch::Approx(20.25).epsilon(1e-15));
  REQUIRE(static_cast<double>(r.rhs) == Catch::Approx(20.25).epsilon(1e-15));
  REQUIRE(r.pass);

  TableRng rng(911);
  for (int i = 0; i < 100; ++i) {
    const DerivativeTable u = random_table_x_only(rng);
    const double lam = 0.1 + 0.7 * rng.uniform01();
    const CheckResult c = check_power_identity(u, lam, 1 + i % 4);
    INFO("case " << i << " relerr " << static_cast<double>(c.slack));
    REQUIRE(c.pass);
  }
  REQUIRE_THROWS(check_power_identity(t, 0.5, 0));
}

TEST_CASE("first product bound: jets agree with the polynomial route", "[lemma][oracle]") {
  TableRng rng(1234);
  for (int i = 0; i < 25; ++i) {
    const DerivativeTable sig = random_table_x_only(rng);
    const DerivativeTable g = random_table_2d(rng);
    const double lam = 0.1 + 0.7 * rng.uniform01();
    const int q = i % 4;

    const CheckResult r = check_product_inequality_I(sig, g, lam, q);

    const Poly ps = poly_of_table(sig);
    const Poly pg = poly_of_table(g);
    Poly f = derivative(ps);
    for (int rep = 0; rep < q; ++rep) f = multiply(f, ps);
    f = multiply(f, derivative(pg));
    const long double lhs_oracle = weighted_derivative_sum(f, lam, product_jet_order);

    long double sHq = 1.0L;
    for (int rep = 0; rep < q; ++rep) sHq *= norm_H_poly(ps, lam);
    const long double rhs_oracle =
        16.0L * sHq * norm_H_poly(ps, lam) * seminorm_H_poly(pg, lam) +
        16.0L * seminorm_H_poly(ps, lam) * sHq * norm_H_poly(pg, lam);

    INFO("case " << i << " lhs " << static_cast<double>(r.lhs) << " oracle "
                 << static_cast<double>(lhs_oracle));
    REQUIRE(static_cast<double>(r.lhs) ==
            Catch::Approx(static_cast<double>(lhs_oracle)).epsilon(1e-10));
    REQUIRE(static_cast<double>(r.rhs) ==
            Catch::Approx(static_cast<double>(rhs_oracle)).epsilon(1e-10));
    REQUIRE(r.pass);
  }
}

TEST_CASE("second product bound: polynomial oracle, property, and tightness", "[lemma][oracle]") {
  TableRng rng(4321);
  long double worst_ratio = 0.0L;
  for (int i = 0; i < 25; ++i) {
    const DerivativeTable sig = random_table_x_only(rng);
    const DerivativeTable alpha = random_table(rng, 0, rng.uniform_int(6, 12));
    const DerivativeTable g = random_table_2d(rng);
    const double lam = 0.1 + 0.7 * rng.uniform01();
    const int q = i % 4;

    const CheckResult r = check_product_inequality_II(sig, alpha, g, lam, q);

    const Poly ps = poly_of_table(sig);
    Poly f = derivative(ps);
    for (int rep = 0; rep < q; ++rep) f = multiply(f, ps);
    f = multiply(f, poly_of_table(alpha));
    f = multiply(f, poly_of_table(g));
    const long double lhs_oracle = weighted_derivative_sum(f, lam, product_jet_order);

    REQUIRE(static_cast<double>(r.lhs) ==
            Catch::Approx(static_cast<double>(lhs_oracle)).epsilon(1e-10));
    REQUIRE(r.pass);
    if (r.rhs > 0.0L) worst_ratio = std::max(worst_ratio, r.lhs / r.rhs);
  }
  // the bound carries no spare constant: random tables already approach it
  REQUIRE(static_cast<double>(worst_ratio) > 0.05);
  REQUIRE(static_cast<double>(worst_ratio) <= 1.0 + 1e-12);

  // exact equality: sigma linear in lambda, alpha and g constants
  DerivativeTable sig = DerivativeTable::zeros(1, 0, Provenance::closed_form);
  sig.at(0, 0) = 0.7L;
  sig.at(1, 0) = 1.3L;
  const DerivativeTable ca = table_constant(2.0);
  const DerivativeTable cg = table_constant(5.0);
  const CheckResult eq = check_product_inequality_II(sig, ca, cg, 0.35, 0);
  REQUIRE(static_cast<double>(eq.lhs) ==
          Catch::Approx(static_cast<double>(eq.rhs)).epsilon(1e-15));
  REQUIRE(static_cast<double>(eq.lhs) == Catch::Approx(1.3 * 2.0 * 5.0).epsilon(1e-15));
  REQUIRE(eq.pass);
}
