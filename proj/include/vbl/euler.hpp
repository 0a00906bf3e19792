#ifndef VBL_EULER_HPP
#define VBL_EULER_HPP

// Isentropic Euler system with pressure rho^gamma / gamma, gamma = q + 2,
// the monokinetic image of the kinetic problem. Conservation form
//
//   d_t rho + d_x (rho u) = 0
//   d_t (rho u) + d_x (rho u^2 + rho^gamma / gamma) = 0
//
// advanced with RK4 and spectral x-derivatives on the smooth window; a
// gradient sentinel halts the run before classical breakdown. The weak-form
// residual substitutes v = u(t,x) analytically into phase-space test
// functions (the monokinetic delta is never discretized):
//
//   R(t) = d/dt int rho phi(x,u) dx - int rho u phi_x(x,u) dx
//          + int rho^q (d_x rho) rho phi_v(x,u) dx
//
// with the time derivative taken by 4th-order central differences on the
// stored slices.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbl/fft.hpp"
#include "vbl/profiles.hpp"

namespace vbl {

struct EulerAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EulerState {
  int nx = 0;
  double x_period = 2.0 * pi;
  double gamma = 2.0;
  double time = 0.0;
  std::vector<double> rho;
  std::vector<double> u;

  static EulerState make(int nx, double x_period, double gamma,
                         std::vector<double> rho, std::vector<double> u,
                         double time = 0.0) {
    EulerState s{nx, x_period, gamma, time, std::move(rho), std::move(u)};
    s.validate();
    return s;
  }

  void validate() const {
    if (nx < 16 || !is_power_of_two(static_cast<std::size_t>(nx)))
      throw std::invalid_argument("EulerState: nx must be a power of two, at least 16");
    if (static_cast<int>(rho.size()) != nx || static_cast<int>(u.size()) != nx)
      throw std::invalid_argument("EulerState: field sizes must match nx");
    if (!(gamma >= 2.0))
      throw std::invalid_argument("EulerState: gamma = q + 2 must be >= 2");
    for (double r : rho)
      if (!(r > 0.0)) throw std::domain_error("EulerState: density must stay positive");
  }

  double dx() const { return x_period / nx; }
  double x(int i) const { return dx() * i; }
};

inline double euler_mass(const EulerState& s) {
  double m = 0.0;
  for (double r : s.rho) m += r;
  return m * s.dx();
}

inline double euler_momentum(const EulerState& s) {
  double m = 0.0;
  for (int i = 0; i < s.nx; ++i) m += s.rho[i] * s.u[i];
  return m * s.dx();
}

// int ( rho u^2 / 2 + rho^{q+2} / ((q+1)(q+2)) ) dx
inline double energy_total(const EulerState& s, int q) {
  if (std::abs(s.gamma - (q + 2)) > 1e-12)
    throw std::invalid_argument("energy_total: q + 2 must match the state's gamma");
  double e = 0.0;
  for (int i = 0; i < s.nx; ++i)
    e += 0.5 * s.rho[i] * s.u[i] * s.u[i] +
         std::pow(s.rho[i], q + 2) / (static_cast<double>(q + 1) * (q + 2));
  return e * s.dx();
}

inline EulerState euler_step(const EulerState& s, double dt) {
  const int nx = s.nx;
  const double dx = s.dx();
  double umax = 0.0, cmax = 0.0, uxmax = 0.0;
  {
    const std::vector<double> ux = spectral_derivative(s.u, s.x_period, 1);
    for (int i = 0; i < nx; ++i) {
      umax = std::max(umax, std::abs(s.u[i]));
      cmax = std::max(cmax, std::pow(s.rho[i], 0.5 * (s.gamma - 1.0)));
      uxmax = std::max(uxmax, std::abs(ux[i]));
    }
  }
  if ((umax + cmax) * dt > dx)
    throw EulerAbort("euler_step: CFL violated, (max|u| + max c) dt > dx");
  if (uxmax * dt >= 0.1)
    throw EulerAbort("euler_step: gradient sentinel tripped, classical breakdown approaching");

  std::vector<double> m(nx);
  for (int i = 0; i < nx; ++i) m[i] = s.rho[i] * s.u[i];

  auto rate = [&](const std::vector<double>& rho, const std::vector<double>& mom,
                  std::vector<double>& drho, std::vector<double>& dmom) {
    std::vector<double> flux(nx);
    for (int i = 0; i < nx; ++i) {
      if (!(rho[i] > 0.0))
        throw EulerAbort("euler_step: density lost positivity inside a stage");
      flux[i] = mom[i] * mom[i] / rho[i] + std::pow(rho[i], s.gamma) / s.gamma;
    }
    drho = spectral_derivative(mom, s.x_period, 1);
    dmom = spectral_derivative(flux, s.x_period, 1);
    for (int i = 0; i < nx; ++i) {
      drho[i] = -drho[i];
      dmom[i] = -dmom[i];
    }
  };

  std::vector<double> k1r, k1m, k2r, k2m, k3r, k3m, k4r, k4m;
  std::vector<double> tr(nx), tm(nx);
  rate(s.rho, m, k1r, k1m);
  for (int i = 0; i < nx; ++i) {
    tr[i] = s.rho[i] + 0.5 * dt * k1r[i];
    tm[i] = m[i] + 0.5 * dt * k1m[i];
  }
  rate(tr, tm, k2r, k2m);
  for (int i = 0; i < nx; ++i) {
    tr[i] = s.rho[i] + 0.5 * dt * k2r[i];
    tm[i] = m[i] + 0.5 * dt * k2m[i];
  }
  rate(tr, tm, k3r, k3m);
  for (int i = 0; i < nx; ++i) {
    tr[i] = s.rho[i] + dt * k3r[i];
    tm[i] = m[i] + dt * k3m[i];
  }
  rate(tr, tm, k4r, k4m);

  EulerState out = s;
  out.time = s.time + dt;
  for (int i = 0; i < nx; ++i) {
    out.rho[i] = s.rho[i] + dt / 6.0 * (k1r[i] + 2.0 * k2r[i] + 2.0 * k3r[i] + k4r[i]);
    const double mom = m[i] + dt / 6.0 * (k1m[i] + 2.0 * k2m[i] + 2.0 * k3m[i] + k4m[i]);
    out.u[i] = mom / out.rho[i];
  }
  out.validate();
  return out;
}

struct EulerTrajectory {
  double dt = 0.0;
  std::vector<EulerState> states;
};

inline EulerTrajectory euler_solve(const EulerState& s0, double dt, int steps) {
  EulerTrajectory traj{dt, {s0}};
  traj.states.reserve(steps + 1);
  for (int n = 0; n < steps; ++n) traj.states.push_back(euler_step(traj.states.back(), dt));
  return traj;
}

// Phase-space test function with closures for both partials. Library
// entries pair low x-Fourier modes with compactly supported v bumps; one
// v-independent entry exercises the reduced weak form.
struct TestFunction {
  std::string name;
  std::function<double(double, double)> phi;
  std::function<double(double, double)> dphi_dx;
  std::function<double(double, double)> dphi_dv;
  bool depends_on_v = true;
};

inline std::vector<TestFunction> test_function_library(double L) {
  const double k1 = 2.0 * pi / L;
  std::vector<TestFunction> lib;
  auto trig = [k1](int mode, bool use_sin) {
    return std::pair(
        std::function<double(double)>([=](double x) {
          return use_sin ? std::sin(mode * k1 * x) : std::cos(mode * k1 * x);
        }),
        std::function<double(double)>([=](double x) {
          return use_sin ? mode * k1 * std::cos(mode * k1 * x)
                         : -mode * k1 * std::sin(mode * k1 * x);
        }));
  };
  auto add_product = [&](const std::string& name, int mode, bool use_sin, Bump b) {
    auto [f, df] = trig(mode, use_sin);
    lib.push_back(TestFunction{
        name,
        [=](double x, double v) { return f(x) * b.value(v); },
        [=](double x, double v) { return df(x) * b.value(v); },
        [=](double x, double v) { return f(x) * b.derivative(v); },
        true});
  };
  add_product("cos_x_bump", 1, false, Bump{0.0, 1.0});
  add_product("sin_x_bump", 1, true, Bump{0.0, 1.0});
  add_product("cos_2x_bump_wide", 2, false, Bump{0.0, 1.5});
  add_product("sin_x_bump_shifted", 1, true, Bump{0.3, 1.2});
  {
    auto [f, df] = trig(1, false);
    lib.push_back(TestFunction{"cos_x_flat_v",
                               [=](double x, double) { return f(x); },
                               [=](double x, double) { return df(x); },
                               [](double, double) { return 0.0; },
                               false});
  }
  return lib;
}

// Closure consistency: verify both partials against Richardson-refined
// central differences at spot points. Returns the worst absolute mismatch.
inline double test_function_fd_mismatch(const TestFunction& tf, double L) {
  auto richardson = [](const std::function<double(double)>& f, double t, double h) {
    auto central = [&](double hh) { return (f(t + hh) - f(t - hh)) / (2.0 * hh); };
    return (4.0 * central(h / 2.0) - central(h)) / 3.0;
  };
  double worst = 0.0;
  for (int p = 0; p < 12; ++p) {
    const double x = L * (0.08 + 0.083 * p);
    const double v = -0.66 + 0.12 * p;
    const double h = 1e-3;
    const double fx = richardson([&](double t) { return tf.phi(t, v); }, x, h);
    const double fv = richardson([&](double t) { return tf.phi(x, t); }, v, h);
    worst = std::max(worst, std::abs(fx - tf.dphi_dx(x, v)));
    worst = std::max(worst, std::abs(fv - tf.dphi_dv(x, v)));
  }
  return worst;
}

struct WeakResidualSeries {
  std::vector<double> times;
  std::vector<double> values;
  double max_abs = 0.0;
};

inline WeakResidualSeries weak_residual(const EulerTrajectory& traj, int q,
                                        const TestFunction& tf) {
  const int n_states = static_cast<int>(traj.states.size());
  if (n_states < 5)
    throw std::invalid_argument("weak_residual: need at least five stored slices");
  const EulerState& first = traj.states.front();
  if (std::abs(first.gamma - (q + 2)) > 1e-12)
    throw std::invalid_argument("weak_residual: q + 2 must match the trajectory's gamma");
  const int nx = first.nx;
  const double dx = first.dx();

  std::vector<double> W(n_states), A(n_states), D(n_states);
  for (int n = 0; n < n_states; ++n) {
    const EulerState& s = traj.states[n];
    const std::vector<double> rho_x = spectral_derivative(s.rho, s.x_period, 1);
    double w = 0.0, a = 0.0, d = 0.0;
    for (int i = 0; i < nx; ++i) {
      const double x = s.x(i);
      w += s.rho[i] * tf.phi(x, s.u[i]);
      a += s.rho[i] * s.u[i] * tf.dphi_dx(x, s.u[i]);
      d += std::pow(s.rho[i], q) * rho_x[i] * s.rho[i] * tf.dphi_dv(x, s.u[i]);
    }
    W[n] = w * dx;
    A[n] = a * dx;
    D[n] = d * dx;
  }

  WeakResidualSeries series;
  for (int n = 2; n + 2 < n_states; ++n) {
    const double wdot =
        (-W[n + 2] + 8.0 * W[n + 1] - 8.0 * W[n - 1] + W[n - 2]) / (12.0 * traj.dt);
    const double r = wdot - A[n] + D[n];
    series.times.push_back(traj.states[n].time);
    series.values.push_back(r);
    series.max_abs = std::max(series.max_abs, std::abs(r));
  }
  return series;
}

}  // namespace vbl

#endif
