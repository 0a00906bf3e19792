#ifndef VBL_TABLE_HPP
#define VBL_TABLE_HPP

// Tables of mixed-derivative sup norms sup_{x,v} |d^k_x d^l_v f|, the raw
// material of every analytic-norm computation. Closed-form factories cover
// the profile library; table_from_field estimates entries spectrally on a
// grid (total order capped at 8, where spectral differentiation is still
// trustworthy at these resolutions).
//
// Closed forms used by the factories:
//   with v = cot(theta):  d^l_v [1/(pi(1+v^2))] = ((-1)^l l!/pi) sin^{l+1}(th) sin((l+1)th)
//                         d^l_v [-2v/(1+v^2)]   = -(-1)^l l! 2 sin^{l+1}(th) cos((l+1)th)
//   so the sups reduce to 1-D trig maximizations on (0, pi).
//   Gaussian-family v-factors use the recurrence P_{l+1} = P_l' - v P_l,
//   d^l_v [P_0 e^{-v^2/2}] = P_l e^{-v^2/2}, maximized by scan + refinement.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbl/field.hpp"

namespace vbl {

enum class Provenance { closed_form, spectral };

struct DerivativeTable {
  int kmax = 0;
  int lmax = 0;
  Provenance provenance = Provenance::closed_form;
  std::vector<long double> sup;  // (kmax+1) x (lmax+1), row index k

  long double at(int k, int l) const {
    return sup[static_cast<std::size_t>(k) * (lmax + 1) + l];
  }
  long double& at(int k, int l) {
    return sup[static_cast<std::size_t>(k) * (lmax + 1) + l];
  }

  static DerivativeTable zeros(int kmax, int lmax, Provenance prov) {
    if (kmax < 0 || lmax < 0)
      throw std::invalid_argument("DerivativeTable: negative caps");
    if (prov == Provenance::spectral && kmax + lmax > 8)
      throw std::invalid_argument(
          "DerivativeTable: spectral estimation capped at total order 8");
    DerivativeTable t;
    t.kmax = kmax;
    t.lmax = lmax;
    t.provenance = prov;
    t.sup.assign(static_cast<std::size_t>(kmax + 1) * (lmax + 1), 0.0L);
    return t;
  }

  void check_entries() const {
    for (long double s : sup)
      if (!(s >= 0.0L) || !std::isfinite(static_cast<double>(s)))
        throw std::domain_error("DerivativeTable: entries must be finite and nonnegative");
  }
};

namespace detail {

// Maximize a smooth nonnegative function on [a, b]: coarse scan then golden
// section refinement in the best bracket.
template <typename Fn>
long double max_on_interval(Fn&& f, long double a, long double b, int samples) {
  long double best = 0.0L, best_t = a;
  for (int i = 0; i <= samples; ++i) {
    const long double t = a + (b - a) * i / samples;
    const long double val = f(t);
    if (val > best) {
      best = val;
      best_t = t;
    }
  }
  const long double h = (b - a) / samples;
  long double lo = std::max(a, best_t - h), hi = std::min(b, best_t + h);
  const long double gr = 0.6180339887498948482L;
  long double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  long double fc = f(c), fd = f(d);
  for (int it = 0; it < 120; ++it) {
    if (fc < fd) {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = f(d);
    } else {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    }
  }
  return std::max(best, std::max(fc, fd));
}

inline long double trig_peak(int m, bool use_cos) {
  auto f = [&](long double th) {
    const long double s = std::pow(std::sin(th), static_cast<long double>(m));
    const long double osc = use_cos ? std::cos(m * th) : std::sin(m * th);
    return std::fabs(s * osc);
  };
  const int samples = std::max(4096, 64 * m);
  return max_on_interval(f, 0.0L, static_cast<long double>(pi), samples);
}

inline long double factorial_ld(int n) {
  long double r = 1.0L;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// sup_v |P(v) e^{-v^2/2}| for an even-parity-based polynomial family;
// the cofactor is symmetric for our profiles, so scanning v >= 0 suffices.
inline long double poly_gauss_peak(const std::vector<long double>& coeff) {
  auto f = [&](long double v) {
    long double p = 0.0L;
    for (std::size_t i = coeff.size(); i-- > 0;) p = p * v + coeff[i];
    return std::fabs(p) * std::exp(-0.5L * v * v);
  };
  const long double vmax = std::sqrt(2.0L * coeff.size() + 1.0L) + 10.0L;
  return max_on_interval(f, 0.0L, vmax, 8192);
}

// P_{l+1} = P_l' - v P_l applied to the coefficient vector (index = power).
inline std::vector<long double> hermite_step(const std::vector<long double>& p) {
  std::vector<long double> q(p.size() + 1, 0.0L);
  for (std::size_t i = 1; i < p.size(); ++i) q[i - 1] += p[i] * i;
  for (std::size_t i = 0; i < p.size(); ++i) q[i + 1] -= p[i];
  return q;
}

inline std::vector<long double> gauss_family_sups(std::vector<long double> p0, int lmax) {
  std::vector<long double> sups;
  sups.reserve(lmax + 1);
  std::vector<long double> p = std::move(p0);
  for (int l = 0; l <= lmax; ++l) {
    sups.push_back(poly_gauss_peak(p));
    if (l < lmax) p = hermite_step(p);
  }
  return sups;
}

inline std::vector<long double> trig_x_sups(double amplitude, double epsilon,
                                            int mode, double x_period, int kmax) {
  // A (1 + eps cos(2 pi m x / L)): k = 0 gives A(1+eps), k >= 1 gives
  // A eps (2 pi m / L)^k
  std::vector<long double> sx(kmax + 1);
  const long double kappa = 2.0L * static_cast<long double>(pi) * mode / x_period;
  sx[0] = static_cast<long double>(amplitude) * (1.0L + static_cast<long double>(epsilon));
  long double pw = 1.0L;
  for (int k = 1; k <= kmax; ++k) {
    pw *= kappa;
    sx[k] = static_cast<long double>(amplitude) * static_cast<long double>(epsilon) * pw;
  }
  return sx;
}

inline DerivativeTable separable_table(const std::vector<long double>& sx,
                                       const std::vector<long double>& sv) {
  auto t = DerivativeTable::zeros(static_cast<int>(sx.size()) - 1,
                                  static_cast<int>(sv.size()) - 1,
                                  Provenance::closed_form);
  for (int k = 0; k <= t.kmax; ++k)
    for (int l = 0; l <= t.lmax; ++l) t.at(k, l) = sx[k] * sv[l];
  return t;
}

}  // namespace detail

inline DerivativeTable table_constant(double c) {
  auto t = DerivativeTable::zeros(0, 0, Provenance::closed_form);
  t.at(0, 0) = std::fabs(static_cast<long double>(c));
  return t;
}

inline DerivativeTable table_sin_x(double x_period, int kmax) {
  auto t = DerivativeTable::zeros(kmax, 0, Provenance::closed_form);
  const long double kappa = 2.0L * static_cast<long double>(pi) / x_period;
  long double pw = 1.0L;
  for (int k = 0; k <= kmax; ++k) {
    t.at(k, 0) = pw;
    pw *= kappa;
  }
  return t;
}

inline DerivativeTable table_cos_x(double x_period, int kmax) {
  return table_sin_x(x_period, kmax);  // identical sup pattern
}

inline DerivativeTable table_gauss_v_trig_x(double amplitude, double epsilon,
                                            int mode, double x_period, int kmax,
                                            int lmax) {
  return detail::separable_table(
      detail::trig_x_sups(amplitude, epsilon, mode, x_period, kmax),
      detail::gauss_family_sups({1.0L}, lmax));
}

// Weighted profile table for f0/omega = pi (1 + v^2) f0 with f0 from the
// gauss_v_trig_x family.
inline DerivativeTable table_weighted_gauss_v_trig_x(double amplitude, double epsilon,
                                                     int mode, double x_period,
                                                     int kmax, int lmax) {
  const long double p = static_cast<long double>(pi);
  return detail::separable_table(
      detail::trig_x_sups(amplitude, epsilon, mode, x_period, kmax),
      detail::gauss_family_sups({p, 0.0L, p}, lmax));
}

inline DerivativeTable table_weight_omega(int lmax) {
  auto t = DerivativeTable::zeros(0, lmax, Provenance::closed_form);
  for (int l = 0; l <= lmax; ++l)
    t.at(0, l) = detail::factorial_ld(l) / static_cast<long double>(pi) *
                 detail::trig_peak(l + 1, /*use_cos=*/false);
  return t;
}

inline DerivativeTable table_alpha(int lmax) {
  auto t = DerivativeTable::zeros(0, lmax, Provenance::closed_form);
  for (int l = 0; l <= lmax; ++l)
    t.at(0, l) = 2.0L * detail::factorial_ld(l) * detail::trig_peak(l + 1, /*use_cos=*/true);
  return t;
}

// Spectral estimation on the grid. Entries with k + l > diag_cap are left at
// zero and their transforms skipped; kcap + lcap <= 8 keeps every computed
// entry within the trustworthy spectral range.
inline DerivativeTable table_from_field(const PhaseField& f, int kcap, int lcap,
                                        int diag_cap = 16) {
  if (kcap < 0 || lcap < 0 || kcap + lcap > 8)
    throw std::invalid_argument("table_from_field: need kcap, lcap >= 0 and kcap + lcap <= 8");
  auto t = DerivativeTable::zeros(kcap, lcap, Provenance::spectral);
  if (f.max_abs() == 0.0) return t;
  if (lcap > 0) require_padding(f, "table_from_field");
  for (int l = 0; l <= lcap; ++l) {
    if (l > diag_cap) break;
    const PhaseField fl = ddv(f, l);
    for (int k = 0; k <= kcap; ++k) {
      if (k + l > diag_cap) break;
      t.at(k, l) = static_cast<long double>(ddx(fl, k).max_abs());
    }
  }
  return t;
}

// Random tables for the property suites: sup(k,l) = c r^{k+l} k! l!/(k+l)!
// with c in [0.1, 10] and r in [0.05, 0.5], both log-uniform. The entries
// are the derivative sups of an entire function, so every norm in play is
// finite and the lemma inequalities must hold exactly.
struct TableRng {
  std::mt19937_64 engine;
  explicit TableRng(std::uint64_t seed) : engine(seed) {}
  double uniform01() {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
  }
  double log_uniform(double lo, double hi) {
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * uniform01());
  }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(engine() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline DerivativeTable random_table(TableRng& rng, int kmax, int lmax) {
  auto t = DerivativeTable::zeros(kmax, lmax, Provenance::closed_form);
  const long double c = rng.log_uniform(0.1, 10.0);
  const long double r = rng.log_uniform(0.05, 0.5);
  for (int k = 0; k <= kmax; ++k)
    for (int l = 0; l <= lmax; ++l)
      t.at(k, l) = c * std::pow(r, static_cast<long double>(k + l)) *
                   detail::factorial_ld(k) * detail::factorial_ld(l) /
                   detail::factorial_ld(k + l);
  return t;
}

inline DerivativeTable random_table_2d(TableRng& rng) {
  const int kmax = rng.uniform_int(6, 10);
  const int lmax = rng.uniform_int(6, 10);
  return random_table(rng, kmax, lmax);
}

inline DerivativeTable random_table_x_only(TableRng& rng) {
  const int kmax = rng.uniform_int(8, 16);
  return random_table(rng, kmax, 0);
}

}  // namespace vbl

#endif
