#ifndef VBL_NORMS_HPP
#define VBL_NORMS_HPP

// The analytic norm stack over derivative tables:
//
//   ||f||_lam      = sum_{k,l} lam^{k+l}/(k! l!) sup(k,l)
//   |f|_{lam,n}    = d^n/dlam^n ||f||_lam
//                  = sum_{k+l>=n} (k+l)!/(k+l-n)! lam^{k+l-n}/(k! l!) sup(k,l)
//   ||f||_{H,lam}  = sum_n |f|_{lam,n} / (n!)^2
//   |f|_{H,lam}    = sum_{n>=1} n^2 |f|_{lam,n} / (n!)^2
//   Z over slices  = max_t ||f(t)||_{lam0} + int_0^T |f(t)|_{lam(t),1} dt,
//                    lam(t) = lam0 - (K+1) t
//
// Truncation is reported as a geometric tail bound read off the trailing
// diagonal sums: r = max ratio of the last diagonal sums, tail =
// last * r/(1-r), flagged divergent when r >= 1. All accumulation happens
// in long double (x87 80-bit) so factorial-weighted cancellation stays far
// below the 1e-12 identities the checks assert.
//
// For a finite table ||f||_lam is a polynomial in lam with nonnegative
// coefficients and |f|_{lam,n} are its exact derivatives, so the shift
// inequality, the power identity, and both product inequalities hold
// exactly; the checks only add float-level slack.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbl/table.hpp"

namespace vbl {

enum class TailPolicy { report, reject };

struct NormValue {
  long double value = 0.0L;
  long double tail_bound = 0.0L;
  long double tail_ratio = 0.0L;
  bool divergent = false;
};

struct NormParams {
  double lambda0 = 0.5;
  double K = 0.0;
  double T = 0.0;

  double lambda_at(double t) const { return lambda0 - (K + 1.0) * t; }
};

namespace detail {

inline NormValue from_diagonals(const std::vector<long double>& diag) {
  NormValue out;
  for (long double d : diag) out.value += d;
  // trailing ratio over the last three consecutive diagonal pairs
  long double r = 0.0L;
  const int n = static_cast<int>(diag.size());
  for (int d = std::max(1, n - 3); d < n; ++d)
    if (diag[d - 1] > 0.0L) r = std::max(r, diag[d] / diag[d - 1]);
  out.tail_ratio = r;
  if (n == 0 || diag.back() == 0.0L) return out;
  if (r >= 1.0L) {
    out.divergent = true;
    return out;
  }
  out.tail_bound = diag.back() * r / (1.0L - r);
  return out;
}

inline long double falling(int d, int n) {
  long double r = 1.0L;
  for (int i = 0; i < n; ++i) r *= static_cast<long double>(d - i);
  return r;
}

}  // namespace detail

inline NormValue seminorm_lambda_n(const DerivativeTable& t, double lambda, int n) {
  if (lambda < 0.0) throw std::invalid_argument("seminorm_lambda_n: lambda must be >= 0");
  if (n < 0) throw std::invalid_argument("seminorm_lambda_n: n must be >= 0");
  const int dmax = t.kmax + t.lmax;
  std::vector<long double> inv_fact(std::max(t.kmax, t.lmax) + 1, 1.0L);
  for (int i = 1; i < static_cast<int>(inv_fact.size()); ++i)
    inv_fact[i] = inv_fact[i - 1] / i;
  std::vector<long double> diag;
  const long double lam = static_cast<long double>(lambda);
  long double lam_pow = 1.0L;  // lam^{d-n}
  for (int d = n; d <= dmax; ++d) {
    long double s = 0.0L;
    const int klo = std::max(0, d - t.lmax);
    const int khi = std::min(t.kmax, d);
    for (int k = klo; k <= khi; ++k) {
      const int l = d - k;
      const long double sup = t.at(k, l);
      if (sup != 0.0L) s += sup * inv_fact[k] * inv_fact[l];
    }
    diag.push_back(s * detail::falling(d, n) * lam_pow);
    lam_pow *= lam;
  }
  return detail::from_diagonals(diag);
}

inline NormValue norm_lambda(const DerivativeTable& t, double lambda,
                             TailPolicy policy = TailPolicy::report) {
  NormValue v = seminorm_lambda_n(t, lambda, 0);
  if (policy == TailPolicy::reject && v.divergent)
    throw std::domain_error("norm_lambda: series flagged divergent at lambda = " +
                            std::to_string(lambda));
  return v;
}

inline NormValue norm_H(const DerivativeTable& t, double lambda) {
  NormValue out;
  const int nmax = t.kmax + t.lmax;
  long double inv_nfact2 = 1.0L;  // 1/(n!)^2
  for (int n = 0; n <= nmax; ++n) {
    if (n > 0) inv_nfact2 /= static_cast<long double>(n) * n;
    const NormValue s = seminorm_lambda_n(t, lambda, n);
    out.value += s.value * inv_nfact2;
    out.tail_bound += s.tail_bound * inv_nfact2;
    out.tail_ratio = std::max(out.tail_ratio, s.tail_ratio);
    out.divergent = out.divergent || s.divergent;
  }
  return out;
}

inline NormValue seminorm_H(const DerivativeTable& t, double lambda) {
  NormValue out;
  const int nmax = t.kmax + t.lmax;
  long double inv_nfact2 = 1.0L;
  for (int n = 1; n <= nmax; ++n) {
    inv_nfact2 /= static_cast<long double>(n) * n;
    const NormValue s = seminorm_lambda_n(t, lambda, n);
    const long double w = inv_nfact2 * static_cast<long double>(n) * n;
    out.value += s.value * w;
    out.tail_bound += s.tail_bound * w;
    out.tail_ratio = std::max(out.tail_ratio, s.tail_ratio);
    out.divergent = out.divergent || s.divergent;
  }
  return out;
}

// Z-norm over uniformly spaced slices: max of ||.||_{lam0} plus the
// trapezoid-in-time integral of |.|_{lam(t),1}.
inline NormValue z_norm(const std::vector<DerivativeTable>& slices, double dt,
                        const NormParams& p) {
  if (slices.size() < 2) throw std::invalid_argument("z_norm: need at least two slices");
  if (!(p.lambda0 > (p.K + 1.0) * p.T))
    throw std::invalid_argument("z_norm: requires lambda0 > (K+1) T so lambda stays positive");
  NormValue out;
  long double sup_part = 0.0L, int_part = 0.0L;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const double t = dt * static_cast<double>(i);
    const NormValue n0 = norm_lambda(slices[i], p.lambda0);
    const NormValue s1 = seminorm_lambda_n(slices[i], p.lambda_at(t), 1);
    sup_part = std::max(sup_part, n0.value);
    const double w = (i == 0 || i + 1 == slices.size()) ? 0.5 : 1.0;
    int_part += static_cast<long double>(w * dt) * s1.value;
    out.tail_bound += n0.tail_bound + static_cast<long double>(w * dt) * s1.tail_bound;
    out.tail_ratio = std::max({out.tail_ratio, n0.tail_ratio, s1.tail_ratio});
    out.divergent = out.divergent || n0.divergent || s1.divergent;
  }
  out.value = sup_part + int_part;
  return out;
}

struct CheckResult {
  long double lhs = 0.0L;
  long double rhs = 0.0L;
  long double slack = 0.0L;  // tail allowance folded into the comparison
  bool pass = false;
};

// |d_x f|_{lam,n} <= |f|_{lam,n+1}: shift the table one column in k and
// compare seminorms.
inline DerivativeTable shifted_in_x(const DerivativeTable& t) {
  if (t.kmax < 1)
    throw std::invalid_argument("shifted_in_x: table has no x-derivative entries");
  auto s = DerivativeTable::zeros(t.kmax - 1, t.lmax, t.provenance);
  for (int k = 0; k < t.kmax; ++k)
    for (int l = 0; l <= t.lmax; ++l) s.at(k, l) = t.at(k + 1, l);
  return s;
}

inline CheckResult check_lemma_shift(const DerivativeTable& t, double lambda, int n) {
  const NormValue lhs = seminorm_lambda_n(shifted_in_x(t), lambda, n);
  const NormValue rhs = seminorm_lambda_n(t, lambda, n + 1);
  CheckResult r;
  r.lhs = lhs.value;
  r.rhs = rhs.value;
  r.slack = lhs.tail_bound + rhs.tail_bound +
            1e-15L * std::max(std::fabs(lhs.value), std::fabs(rhs.value));
  r.pass = lhs.value <= rhs.value + r.slack;
  return r;
}

// ||rho||_lam^q as a q-fold convolution of a_k = lam^k sup(k,0)/k!; for an
// x-only table both routes evaluate the same polynomial power, so they must
// agree to rounding.
inline CheckResult check_power_identity(const DerivativeTable& t, double lambda, int q) {
  if (t.lmax != 0)
    throw std::invalid_argument("check_power_identity: expects an x-only table");
  if (q < 1) throw std::invalid_argument("check_power_identity: q must be >= 1");
  std::vector<long double> a(t.kmax + 1);
  long double lam_pow = 1.0L, fact = 1.0L;
  for (int k = 0; k <= t.kmax; ++k) {
    if (k > 0) {
      lam_pow *= static_cast<long double>(lambda);
      fact *= k;
    }
    a[k] = lam_pow / fact * t.at(k, 0);
  }
  std::vector<long double> conv{1.0L};
  for (int rep = 0; rep < q; ++rep) {
    std::vector<long double> next(conv.size() + a.size() - 1, 0.0L);
    for (std::size_t i = 0; i < conv.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) next[i + j] += conv[i] * a[j];
    conv = std::move(next);
  }
  long double rhs = 0.0L;
  for (long double c : conv) rhs += c;
  long double base = 0.0L;
  for (long double c : a) base += c;
  long double lhs = 1.0L;
  for (int rep = 0; rep < q; ++rep) lhs *= base;
  CheckResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  const long double scale = std::max(std::fabs(lhs), 1e-300L);
  r.slack = std::fabs(lhs - rhs) / scale;  // relative error stored as slack
  r.pass = r.slack <= 1e-12L;
  return r;
}

// A(n,m) = C(n+m,m) ((n+1)!)^2 ((m+1)!)^2 / ((n+m)!)^2, evaluated in
// log space; bounded by 24 for n,m >= 2.
inline long double combinatorial_A(int n, int m) {
  const long double lg = 2.0L * std::lgamma(static_cast<long double>(n + 2)) +
                         2.0L * std::lgamma(static_cast<long double>(m + 2)) -
                         std::lgamma(static_cast<long double>(n + 1)) -
                         std::lgamma(static_cast<long double>(m + 1)) -
                         std::lgamma(static_cast<long double>(n + m + 1));
  return std::exp(lg);
}

// B(n,m) = n! m! / (n+m)! <= 1
inline long double combinatorial_B(int n, int m) {
  const long double lg = std::lgamma(static_cast<long double>(n + 1)) +
                         std::lgamma(static_cast<long double>(m + 1)) -
                         std::lgamma(static_cast<long double>(n + m + 1));
  return std::exp(lg);
}

// Truncated derivative sequences in lambda ("jets"): component n holds the
// n-th lambda-derivative of the underlying quantity. Products follow the
// Leibniz rule, i.e. binomial convolution.
struct Jet {
  std::vector<long double> d;

  static Jet mul(const Jet& a, const Jet& b) {
    const std::size_t n = std::min(a.d.size(), b.d.size());
    Jet out;
    out.d.assign(n, 0.0L);
    std::vector<std::vector<long double>> binom(n, std::vector<long double>(n, 0.0L));
    for (std::size_t i = 0; i < n; ++i) {
      binom[i][0] = 1.0L;
      for (std::size_t j = 1; j <= i; ++j)
        binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0.0L);
    }
    for (std::size_t k = 0; k < n; ++k) {
      long double s = 0.0L;
      for (std::size_t m = 0; m <= k; ++m) s += binom[k][m] * a.d[m] * b.d[k - m];
      out.d[k] = s;
    }
    return out;
  }

  static Jet pow(const Jet& a, int q) {
    Jet out;
    out.d.assign(a.d.size(), 0.0L);
    out.d[0] = 1.0L;
    for (int i = 0; i < q; ++i) out = mul(out, a);
    return out;
  }
};

inline Jet jet_of_norm(const DerivativeTable& t, double lambda, int order) {
  Jet j;
  j.d.resize(order + 1);
  for (int n = 0; n <= order; ++n) j.d[n] = seminorm_lambda_n(t, lambda, n).value;
  return j;
}

inline Jet jet_of_seminorm1(const DerivativeTable& t, double lambda, int order) {
  Jet j;
  j.d.resize(order + 1);
  for (int n = 0; n <= order; ++n) j.d[n] = seminorm_lambda_n(t, lambda, n + 1).value;
  return j;
}

inline long double h_weighted_sum(const Jet& j) {
  long double s = 0.0L, inv_nfact2 = 1.0L;
  for (std::size_t n = 0; n < j.d.size(); ++n) {
    if (n > 0) inv_nfact2 /= static_cast<long double>(n) * n;
    s += j.d[n] * inv_nfact2;
  }
  return s;
}

inline constexpr int product_jet_order = 16;

// sum_n (1/(n!)^2) d^n/dlam^n ( |sigma|_{lam,1} ||sigma||_lam^q |g|_{lam,1} )
//   <= 16 ||sigma||_H^{q+1} |g|_H + 16 |sigma|_H ||sigma||_H^q ||g||_H
inline CheckResult check_product_inequality_I(const DerivativeTable& sigma,
                                              const DerivativeTable& g,
                                              double lambda, int q) {
  const Jet lhs_jet = Jet::mul(
      Jet::mul(jet_of_seminorm1(sigma, lambda, product_jet_order),
               Jet::pow(jet_of_norm(sigma, lambda, product_jet_order), q)),
      jet_of_seminorm1(g, lambda, product_jet_order));
  const long double lhs = h_weighted_sum(lhs_jet);
  const NormValue sH = norm_H(sigma, lambda);
  const NormValue sHs = seminorm_H(sigma, lambda);
  const NormValue gH = norm_H(g, lambda);
  const NormValue gHs = seminorm_H(g, lambda);
  long double sHq = 1.0L;
  for (int i = 0; i < q; ++i) sHq *= sH.value;
  const long double rhs = 16.0L * sHq * sH.value * gHs.value + 16.0L * sHs.value * sHq * gH.value;
  CheckResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = 1e-12L * rhs;
  r.pass = lhs <= rhs + r.slack;
  return r;
}

// Same left-hand shape with ||alpha||_lam ||g||_lam in place of |g|_{lam,1}:
//   <= |sigma|_H ||sigma||_H^q ||alpha||_H ||g||_H
inline CheckResult check_product_inequality_II(const DerivativeTable& sigma,
                                               const DerivativeTable& alpha,
                                               const DerivativeTable& g,
                                               double lambda, int q) {
  const Jet lhs_jet = Jet::mul(
      Jet::mul(Jet::mul(jet_of_seminorm1(sigma, lambda, product_jet_order),
                        Jet::pow(jet_of_norm(sigma, lambda, product_jet_order), q)),
               jet_of_norm(alpha, lambda, product_jet_order)),
      jet_of_norm(g, lambda, product_jet_order));
  const long double lhs = h_weighted_sum(lhs_jet);
  const NormValue sH = norm_H(sigma, lambda);
  const NormValue sHs = seminorm_H(sigma, lambda);
  const NormValue aH = norm_H(alpha, lambda);
  const NormValue gH = norm_H(g, lambda);
  long double sHq = 1.0L;
  for (int i = 0; i < q; ++i) sHq *= sH.value;
  const long double rhs = sHs.value * sHq * aH.value * gH.value;
  CheckResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = 1e-12L * rhs;
  r.pass = lhs <= rhs + r.slack;
  return r;
}

}  // namespace vbl

#endif
