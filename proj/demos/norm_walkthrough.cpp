// Walks through the norm hierarchy on a concrete profile:
// derivative tables, lambda-norm, H-norm and seminorm, and the
// closed-form weight/alpha tables that feed the smallness gate.

#include <cstdio>

#include "vbl/fixed_point.hpp"
#include "vbl/norms.hpp"
#include "vbl/table.hpp"

using namespace vbl;

int main() {
  const double lambda = 0.5;
  std::printf("profile: 0.02 (1 + 0.1 cos x) exp(-v^2/2) on [0, 2pi) x R\n\n");

  const DerivativeTable f =
      table_gauss_v_trig_x(0.02, 0.1, 1, 2.0 * pi, 12, 20);
  std::printf("derivative sup table, corner (k <= 3, l <= 3):\n");
  for (int k = 0; k <= 3; ++k) {
    for (int l = 0; l <= 3; ++l)
      std::printf("  %12.5e", static_cast<double>(f.at(k, l)));
    std::printf("\n");
  }

  const NormValue n0 = norm_lambda(f, lambda);
  std::printf("\nlambda-norm at lambda = %.2f:   %.12e (tail bound %.1e)\n",
              lambda, static_cast<double>(n0.value),
              static_cast<double>(n0.tail_bound));
  for (int n = 1; n <= 3; ++n)
    std::printf("seminorm |f|_{lambda,%d}:      %.12e\n", n,
                static_cast<double>(seminorm_lambda_n(f, lambda, n).value));
  std::printf("H-norm ||f||_{H,lambda}:      %.12e\n",
              static_cast<double>(norm_H(f, lambda).value));
  std::printf("H-seminorm |f|_{H,lambda}:    %.12e\n",
              static_cast<double>(seminorm_H(f, lambda).value));

  std::printf("\nclosed-form sup|d^l alpha/dv^l| (alpha = -2v/(1+v^2)):\n");
  const DerivativeTable ta = table_alpha(8);
  for (int l = 0; l <= 4; ++l)
    std::printf("  l = %d: %.12e\n", l, static_cast<double>(ta.at(0, l)));
  std::printf("alpha0 = ||alpha||_{0.5} = %.12f\n", compute_alpha0(lambda));

  SolverParams p;
  p.M = auto_select_M(p.lambda0, p.K, p.T, p.q);
  std::printf("\ngate at lambda0 = %.2f, K = %g, T = %g, q = %d, auto M = %g:\n",
              p.lambda0, p.K, p.T, p.q, p.M);
  const DerivativeTable g0 =
      table_weighted_gauss_v_trig_x(8e-5, 0.1, 1, 2.0 * pi, 24, 40);
  const GateReport g = gate(p, g0);
  for (const auto& c : g.conditions)
    std::printf("  %-20s value % .6e margin % .6e %s\n", c.name.c_str(),
                c.value, c.margin, c.pass ? "pass" : "FAIL");
  std::printf("overall: %s\n", g.pass ? "pass" : "FAIL");
  return 0;
}
