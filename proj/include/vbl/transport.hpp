#ifndef VBL_TRANSPORT_HPP
#define VBL_TRANSPORT_HPP

// Semi-Lagrangian transport for
//
//   d_t g + v d_x g - a(t,x) (d_v g + alpha(v) g) = S(t,x,v)
//
// with a = sigma^q d_x sigma. Each step traces characteristic feet backward
// with RK4 (drift held at the three stage time levels), interpolates the
// previous slice bicubically (periodic in both axes), and, when the alpha
// term or a source is active, re-integrates the scalar ODE along the
// characteristic forward with RK4 from the foot. The nonlinear problem
// (a from the solution's own density, no alpha term) uses a half-step
// predictor for the mid-stage density.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbl/field.hpp"

namespace vbl {

struct TransportAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DriftForm { direct, conservative };
enum class TrajectoryKind { nonlinear_f, linear_g };

using SourceFn = std::function<double(double, double, double)>;  // (t, x, v)

struct DriftField {
  GridSpec grid;
  std::vector<double> values;  // size nx
  double time = 0.0;
  bool resolved = true;  // top third of the spectrum below 1e-6 of energy

  double max_abs() const {
    double m = 0.0;
    for (double a : values) m = std::max(m, std::abs(a));
    return m;
  }
};

// a = sigma^q d_x sigma, either directly or as d_x(sigma^{q+1})/(q+1).
// The conservative form is the default wherever a DriftForm is taken.
inline DriftField drift_from_density(const DensityField& sigma, int q,
                                     DriftForm form = DriftForm::conservative,
                                     double time = 0.0) {
  if (q < 0) throw std::invalid_argument("drift_from_density: q must be >= 0");
  const int nx = sigma.grid.nx;
  DriftField a{sigma.grid, std::vector<double>(nx, 0.0), time, true};
  if (form == DriftForm::conservative) {
    std::vector<double> p(nx);
    for (int i = 0; i < nx; ++i) p[i] = std::pow(sigma.values[i], q + 1);
    p = spectral_derivative(p, sigma.grid.x_period, 1);
    for (int i = 0; i < nx; ++i) a.values[i] = p[i] / (q + 1);
  } else {
    std::vector<double> d = spectral_derivative(sigma.values, sigma.grid.x_period, 1);
    for (int i = 0; i < nx; ++i) a.values[i] = std::pow(sigma.values[i], q) * d[i];
  }
  a.resolved = spectrum_tail_fraction(a.values) < 1e-6;
  return a;
}

namespace detail {

// Lagrange cubic on nodes at offsets {-1, 0, 1, 2}, evaluated at theta in
// [0, 1]. Weights sum to 1 identically, so constants interpolate exactly.
inline void cubic_weights(double theta, double w[4]) {
  const double t = theta;
  w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
  w[1] = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  w[2] = -(t + 1.0) * t * (t - 2.0) / 2.0;
  w[3] = (t + 1.0) * t * (t - 1.0) / 6.0;
}

inline int wrap(int i, int n) {
  i %= n;
  return i < 0 ? i + n : i;
}

inline double interp_periodic(const std::vector<double>& f, double period, double x) {
  const int n = static_cast<int>(f.size());
  const double h = period / n;
  double p = x / h;
  p -= std::floor(p / n) * n;
  int base = static_cast<int>(std::floor(p));
  double theta = p - base;
  double w[4];
  cubic_weights(theta, w);
  double s = 0.0;
  for (int m = -1; m <= 2; ++m) s += w[m + 1] * f[wrap(base + m, n)];
  return s;
}

}  // namespace detail

struct AdvanceOptions {
  int q = 0;
  bool alpha_term = true;
  DriftForm form = DriftForm::conservative;
  std::optional<SourceFn> source;
  double escape_margin_cells = 4.0;
};

namespace detail {

struct StageDrifts {
  // drift arrays at the step's start, midpoint and end times
  const std::vector<double>* a0;
  const std::vector<double>* amid;
  const std::vector<double>* a1;
  double period;

  double eval(int stage_time, double x) const {
    // stage_time: 0 -> t_n, 1 -> t_n + dt/2, 2 -> t_n + dt
    const std::vector<double>& a = stage_time == 0 ? *a0 : (stage_time == 1 ? *amid : *a1);
    return interp_periodic(a, period, x);
  }
};

// Bicubic sample of a slice at an off-grid foot. Both axes use periodic
// stencils; feet past the v range are clamped to zero inside the escape
// margin and abort beyond it.
inline double sample_slice(const PhaseField& f, double x, double v,
                           double margin_cells, double time_for_message) {
  const GridSpec& g = f.grid;
  const double V = g.v_halfwidth;
  const double dv = g.dv();
  if (v < -V || v >= V) {
    const double over = v < -V ? (-V - v) : (v - V);
    if (over > margin_cells * dv)
      throw TransportAbort("characteristic foot escaped v range by " +
                           std::to_string(over) + " at t = " +
                           std::to_string(time_for_message));
    return 0.0;
  }
  const double px = x / g.dx();
  double pxw = px - std::floor(px / g.nx) * g.nx;
  int bx = static_cast<int>(std::floor(pxw));
  const double tx = pxw - bx;
  const double pv = (v + V) / dv;
  int bv = static_cast<int>(std::floor(pv));
  const double tv = pv - bv;
  double wx[4], wv[4];
  cubic_weights(tx, wx);
  cubic_weights(tv, wv);
  double s = 0.0;
  for (int m = -1; m <= 2; ++m) {
    const int i = wrap(bx + m, g.nx);
    double row = 0.0;
    for (int r = -1; r <= 2; ++r) row += wv[r + 1] * f.at(i, wrap(bv + r, g.nv));
    s += wx[m + 1] * row;
  }
  return s;
}

}  // namespace detail

// One semi-Lagrangian step from time t0 to t0 + dt given drift fields at
// the step's start, midpoint and end.
inline PhaseField advance_linear(const PhaseField& g, const DriftField& a_start,
                                 const DriftField& a_mid, const DriftField& a_end,
                                 double t0, double dt, const AdvanceOptions& opt) {
  const GridSpec& grid = g.grid;
  const double amax =
      std::max({a_start.max_abs(), a_mid.max_abs(), a_end.max_abs()});
  if (grid.v_halfwidth * dt > grid.x_period / 4.0)
    throw TransportAbort("CFL sanity: max|v| dt exceeds L/4");
  if (amax * dt > grid.v_halfwidth / 4.0)
    throw TransportAbort("CFL sanity: max|a| dt exceeds V/4");

  detail::StageDrifts drift{&a_start.values, &a_mid.values, &a_end.values,
                            grid.x_period};
  PhaseField out = PhaseField::zeros(grid);
  const double t1 = t0 + dt;
  const bool ode_along_char = opt.alpha_term || opt.source.has_value();

  parallel_for(static_cast<std::size_t>(grid.nx), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    const double xi = grid.x(i);
    for (int j = 0; j < grid.nv; ++j) {
      const double vj = grid.v(j);
      // backward RK4: stage times t1, t1-dt/2 (twice), t0
      const double k1x = vj, k1v = -drift.eval(2, xi);
      const double x2 = xi - 0.5 * dt * k1x, v2 = vj - 0.5 * dt * k1v;
      const double k2x = v2, k2v = -drift.eval(1, x2);
      const double x3 = xi - 0.5 * dt * k2x, v3 = vj - 0.5 * dt * k2v;
      const double k3x = v3, k3v = -drift.eval(1, x3);
      const double x4 = xi - dt * k3x, v4 = vj - dt * k3v;
      const double k4x = v4, k4v = -drift.eval(0, x4);
      const double fx = xi - dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
      const double fv = vj - dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

      double val = detail::sample_slice(g, fx, fv, opt.escape_margin_cells, t1);
      if (ode_along_char) {
        // forward RK4 for (x, v, g) along the same characteristic
        auto rate = [&](int stage, double t, double x, double v, double gg,
                        double* dx, double* dvv, double* dg) {
          const double a = drift.eval(stage, x);
          *dx = v;
          *dvv = -a;
          double r = opt.alpha_term ? a * alpha_of_v(v) * gg : 0.0;
          if (opt.source) r += (*opt.source)(t, x, v);
          *dg = r;
        };
        double d1x, d1v, d1g, d2x, d2v, d2g, d3x, d3v, d3g, d4x, d4v, d4g;
        rate(0, t0, fx, fv, val, &d1x, &d1v, &d1g);
        rate(1, t0 + 0.5 * dt, fx + 0.5 * dt * d1x, fv + 0.5 * dt * d1v,
             val + 0.5 * dt * d1g, &d2x, &d2v, &d2g);
        rate(1, t0 + 0.5 * dt, fx + 0.5 * dt * d2x, fv + 0.5 * dt * d2v,
             val + 0.5 * dt * d2g, &d3x, &d3v, &d3g);
        rate(2, t1, fx + dt * d3x, fv + dt * d3v, val + dt * d3g, &d4x, &d4v,
             &d4g);
        val += dt / 6.0 * (d1g + 2.0 * d2g + 2.0 * d3g + d4g);
      }
      out.at(i, j) = val;
    }
  });
  return out;
}

struct Trajectory {
  GridSpec grid;
  TrajectoryKind kind = TrajectoryKind::nonlinear_f;
  std::vector<PhaseField> slices;  // steps + 1 snapshots at t_n = n dt
  std::vector<double> drift_sup;   // per step, max |a| over the stage drifts
  bool resolved = true;            // sticky under-resolution flag

  double dt() const { return grid.dt; }
  int steps() const { return static_cast<int>(slices.size()) - 1; }
  double time(int n) const { return grid.dt * n; }
};

// Linear solve: sigma is given as time slices (steps + 1 of them); within a
// step sigma is interpolated linearly in time before the drift is formed.
inline Trajectory solve_linear(const PhaseField& g0,
                               const std::vector<DensityField>& sigma_series,
                               const AdvanceOptions& opt) {
  const GridSpec& grid = g0.grid;
  const int steps = grid.steps();
  if (static_cast<int>(sigma_series.size()) != steps + 1)
    throw std::invalid_argument("solve_linear: sigma series must hold steps + 1 slices");
  Trajectory traj{grid, TrajectoryKind::linear_g, {}, {}, true};
  traj.slices.reserve(steps + 1);
  traj.slices.push_back(g0);
  for (int n = 0; n < steps; ++n) {
    const double t0 = grid.dt * n;
    const DensityField& s0 = sigma_series[n];
    const DensityField& s1 = sigma_series[n + 1];
    DensityField smid{grid, std::vector<double>(grid.nx)};
    for (int i = 0; i < grid.nx; ++i)
      smid.values[i] = 0.5 * (s0.values[i] + s1.values[i]);
    const DriftField a0 = drift_from_density(s0, opt.q, opt.form, t0);
    const DriftField am = drift_from_density(smid, opt.q, opt.form, t0 + 0.5 * grid.dt);
    const DriftField a1 = drift_from_density(s1, opt.q, opt.form, t0 + grid.dt);
    traj.resolved = traj.resolved && a0.resolved && am.resolved && a1.resolved;
    traj.drift_sup.push_back(std::max({a0.max_abs(), am.max_abs(), a1.max_abs()}));
    traj.slices.push_back(advance_linear(traj.slices.back(), a0, am, a1, t0, grid.dt, opt));
  }
  return traj;
}

// Nonlinear solve: the drift comes from the solution's own density, with a
// predictor half step supplying the midpoint density; no alpha term.
inline Trajectory solve_nonlinear(const PhaseField& f0, int q,
                                  DriftForm form = DriftForm::conservative) {
  const GridSpec& grid = f0.grid;
  const int steps = grid.steps();
  Trajectory traj{grid, TrajectoryKind::nonlinear_f, {}, {}, true};
  traj.slices.reserve(steps + 1);
  traj.slices.push_back(f0);
  AdvanceOptions opt;
  opt.q = q;
  opt.alpha_term = false;
  opt.form = form;
  for (int n = 0; n < steps; ++n) {
    const double t0 = grid.dt * n;
    const PhaseField& f = traj.slices.back();
    const DriftField a_n = drift_from_density(moment_zero(f), q, form, t0);
    // predictor half step with frozen drift
    const PhaseField fstar =
        advance_linear(f, a_n, a_n, a_n, t0, 0.5 * grid.dt, opt);
    const DriftField a_mid =
        drift_from_density(moment_zero(fstar), q, form, t0 + 0.5 * grid.dt);
    // linear-in-time extrapolation to the step end
    DriftField a_end = a_mid;
    a_end.time = t0 + grid.dt;
    for (int i = 0; i < grid.nx; ++i)
      a_end.values[i] = 2.0 * a_mid.values[i] - a_n.values[i];
    traj.resolved = traj.resolved && a_n.resolved && a_mid.resolved;
    traj.drift_sup.push_back(std::max({a_n.max_abs(), a_mid.max_abs(), a_end.max_abs()}));
    traj.slices.push_back(advance_linear(f, a_n, a_mid, a_end, t0, grid.dt, opt));
  }
  return traj;
}

inline std::vector<double> sup_history(const Trajectory& traj) {
  std::vector<double> s;
  s.reserve(traj.slices.size());
  for (const auto& f : traj.slices) s.push_back(f.max_abs());
  return s;
}

// Discrete maximum-principle residual. For pure transport the sup norm may
// not grow; with the alpha term active the Gronwall envelope
// sup_{n+1} <= sup_n exp(dt max|a|) applies since |alpha| <= 1. Positive
// residuals beyond the interpolation allowance indicate a scheme bug.
inline double max_principle_residual(const Trajectory& traj) {
  const auto sup = sup_history(traj);
  double worst = -std::numeric_limits<double>::infinity();
  for (int n = 0; n < traj.steps(); ++n) {
    double envelope = sup[n];
    if (traj.kind == TrajectoryKind::linear_g && !traj.drift_sup.empty())
      envelope *= std::exp(traj.grid.dt * traj.drift_sup[n]);
    worst = std::max(worst, sup[n + 1] - envelope);
  }
  return worst;
}

inline double kinetic_energy_total(const PhaseField& f, int q) {
  const GridSpec& g = f.grid;
  double kin = 0.0;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.nv; ++j) {
      const double v = g.v(j);
      kin += 0.5 * v * v * f.at(i, j);
    }
  kin *= g.dx() * g.dv();
  const DensityField rho = moment_zero(f);
  double pot = 0.0;
  for (double r : rho.values) pot += std::pow(r, q + 2);
  pot *= g.dx() / (static_cast<double>(q + 1) * (q + 2));
  return kin + pot;
}

struct ConservationReport {
  double mass_initial = 0.0;
  double mass_drift_rel = 0.0;
  double energy_initial = 0.0;
  double energy_drift_rel = 0.0;
};

inline ConservationReport conservation_report(const Trajectory& traj, int q) {
  ConservationReport r;
  r.mass_initial = field_mass(traj.slices.front());
  r.energy_initial = kinetic_energy_total(traj.slices.front(), q);
  for (const auto& f : traj.slices) {
    const double m = field_mass(f);
    const double e = kinetic_energy_total(f, q);
    r.mass_drift_rel = std::max(
        r.mass_drift_rel, std::abs(m - r.mass_initial) /
                              std::max(std::abs(r.mass_initial), 1e-300));
    r.energy_drift_rel = std::max(
        r.energy_drift_rel, std::abs(e - r.energy_initial) /
                                std::max(std::abs(r.energy_initial), 1e-300));
  }
  return r;
}

}  // namespace vbl

#endif
