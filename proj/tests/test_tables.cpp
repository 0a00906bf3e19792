// Derivative-sup tables. Closed-form factories are checked against values
// frozen from a 30-digit independent evaluation (cot-substitution peaks for
// the Cauchy weight and its log-derivative, direct high-order derivatives
// for the Gaussian family); several entries hit exact constants
// (2/pi, 24/pi, 3*sqrt(3)/(8 pi), 3/2 + sqrt(2), 2 pi e^{-1/2}).

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "vbl/field.hpp"
#include "vbl/table.hpp"

using namespace vbl;

namespace {
double entry(const DerivativeTable& t, int k, int l) {
  return static_cast<double>(t.at(k, l));
}
}  // namespace

TEST_CASE("alpha derivative sups match frozen closed-form values", "[table]") {
  const DerivativeTable t = table_alpha(4);
  const double expected[5] = {1.0, 2.0, 1.5 + std::sqrt(2.0), 12.0,
                              38.985569866890976};
  for (int l = 0; l <= 4; ++l)
    REQUIRE(entry(t, 0, l) == Catch::Approx(expected[l]).epsilon(1e-5));
  REQUIRE(t.provenance == Provenance::closed_form);
}

TEST_CASE("weight derivative sups match frozen closed-form values", "[table]") {
  const DerivativeTable t = table_weight_omega(4);
  const double expected[5] = {1.0 / pi, 3.0 * std::sqrt(3.0) / (8.0 * pi),
                              2.0 / pi, 1.4860485743817251, 24.0 / pi};
  for (int l = 0; l <= 4; ++l)
    REQUIRE(entry(t, 0, l) == Catch::Approx(expected[l]).epsilon(1e-5));
}

TEST_CASE("gaussian-in-v, trig-in-x table is separable and frozen-correct", "[table]") {
  const double A = 0.7, eps = 0.3, L = 2.0 * pi;
  const DerivativeTable t = table_gauss_v_trig_x(A, eps, 1, L, 3, 4);
  const double vsup[5] = {1.0, 0.60653065971263342, 1.0, 1.3801190425405175, 3.0};
  // k = 0 carries the full profile amplitude, k >= 1 only the modulation
  for (int l = 0; l <= 4; ++l) {
    REQUIRE(entry(t, 0, l) == Catch::Approx(A * (1 + eps) * vsup[l]).epsilon(1e-6));
    for (int k = 1; k <= 3; ++k)
      REQUIRE(entry(t, k, l) == Catch::Approx(A * eps * vsup[l]).epsilon(1e-6));
  }
  // wavenumber scaling on a stretched torus with a higher mode
  const double L2 = 3.0;
  const int m = 2;
  const DerivativeTable s = table_gauss_v_trig_x(A, eps, m, L2, 3, 0);
  const double w = 2.0 * pi * m / L2;
  for (int k = 1; k <= 3; ++k)
    REQUIRE(entry(s, k, 0) == Catch::Approx(A * eps * std::pow(w, k)).epsilon(1e-12));
}

TEST_CASE("weighted initial profile table matches frozen derivatives", "[table]") {
  // pi (1 + v^2) exp(-v^2/2) derivative sups, frozen from the independent run
  const DerivativeTable t = table_weighted_gauss_v_trig_x(1.0, 0.1, 1, 2.0 * pi, 2, 4);
  const double vsup[5] = {3.8109445294603599, 2.5657117906836793, 4.1229088639047673,
                          9.9109971465488606, 28.274333882308139};
  REQUIRE(vsup[0] == Catch::Approx(2.0 * pi * std::exp(-0.5)).epsilon(1e-13));
  for (int l = 0; l <= 4; ++l) {
    REQUIRE(entry(t, 0, l) == Catch::Approx(1.1 * vsup[l]).epsilon(1e-6));
    REQUIRE(entry(t, 1, l) == Catch::Approx(0.1 * vsup[l]).epsilon(1e-6));
  }
}

TEST_CASE("grid-sampled table agrees with the closed form", "[table]") {
  const GridSpec g = GridSpec::make(128, 256, 2.0 * pi, 16.0, 1e-3, 1e-2);
  const double A = 3e-4, eps = 0.1;
  const PhaseField f = initial_field(g, InitialProfile{A, eps, 1});
  const DerivativeTable sampled = table_from_field(f, 4, 4, 16);
  const DerivativeTable exact = table_gauss_v_trig_x(A, eps, 1, g.x_period, 4, 4);
  // spectral differentiation amplifies white roundoff by the top wavenumber
  // per order; this is the reason the spectral provenance caps k + l at 8
  const double kx = pi * g.nx / g.x_period;
  const double kv = pi * g.nv / (2.0 * g.v_halfwidth);
  for (int k = 0; k <= 4; ++k)
    for (int l = 0; l <= 4; ++l) {
      const double noise =
          8e-16 * f.max_abs() * std::pow(kx, k) * std::pow(kv, l);
      REQUIRE(entry(sampled, k, l) <= entry(exact, k, l) + noise);
      REQUIRE(entry(sampled, k, l) >= entry(exact, k, l) * 0.97);
    }
  REQUIRE(sampled.provenance == Provenance::spectral);
}

TEST_CASE("spectral provenance caps total derivative order", "[table]") {
  const GridSpec g = GridSpec::make(64, 128, 2.0 * pi, 16.0, 1e-3, 1e-2);
  const PhaseField f = initial_field(g, InitialProfile{1e-4, 0.1, 1});
  REQUIRE_THROWS(table_from_field(f, 5, 4, 16));
  REQUIRE_THROWS(DerivativeTable::zeros(6, 3, Provenance::spectral));
  REQUIRE_NOTHROW(DerivativeTable::zeros(6, 3, Provenance::closed_form));
}

TEST_CASE("diagonal cap masks high mixed orders", "[table]") {
  const GridSpec g = GridSpec::make(64, 128, 2.0 * pi, 16.0, 1e-3, 1e-2);
  const PhaseField f = initial_field(g, InitialProfile{1e-4, 0.1, 1});
  const DerivativeTable t = table_from_field(f, 4, 4, 6);
  REQUIRE(entry(t, 3, 3) > 0.0);   // k + l = 6 is inside the cap
  REQUIRE(entry(t, 4, 3) == 0.0);  // k + l = 7 masked
  REQUIRE(entry(t, 4, 4) == 0.0);
  REQUIRE(entry(t, 2, 2) > 0.0);
}

TEST_CASE("random tables are deterministic and well-formed", "[table][rng]") {
  TableRng r1(42), r2(42);
  const DerivativeTable a = random_table_2d(r1);
  const DerivativeTable b = random_table_2d(r2);
  REQUIRE(a.kmax == b.kmax);
  REQUIRE(a.sup == b.sup);
  REQUIRE_NOTHROW(a.check_entries());

  TableRng r3(42);
  const double u = r3.uniform01();
  REQUIRE(u >= 0.0);
  REQUIRE(u < 1.0);
  for (int i = 0; i < 200; ++i) {
    const int k = r3.uniform_int(3, 7);
    REQUIRE(k >= 3);
    REQUIRE(k <= 7);
    const double lg = r3.log_uniform(0.1, 10.0);
    REQUIRE(lg >= 0.1);
    REQUIRE(lg <= 10.0);
  }
}

TEST_CASE("mollifier bump is a smooth compact window", "[profiles]") {
  const Bump b{0.0, 1.0};
  REQUIRE(b.value(0.0) == Catch::Approx(1.0));
  REQUIRE(b.value(1.0) == 0.0);
  REQUIRE(b.value(-1.2) == 0.0);
  for (double s : {-0.8, -0.3, 0.2, 0.6, 0.95}) {
    const double h = 1e-5;
    const double fd = (b.value(s + h) - b.value(s - h)) / (2 * h);
    REQUIRE(b.derivative(s) == Catch::Approx(fd).margin(1e-5));
  }
  const Bump wide{0.5, 2.0};
  REQUIRE(wide.value(0.5) == Catch::Approx(1.0));
  REQUIRE(wide.value(2.5) == 0.0);
}
