#ifndef VBL_FIELD_HPP
#define VBL_FIELD_HPP

// Gridded phase-space fields and densities with the operations the rest of
// the code builds on: trapezoid moments in v, spectral derivatives in x and
// v (order capped at 8), and the omega/alpha profile fields.
//
// The boundary-decay padding contract (|f| at the extreme v rows below
// 1e-12 of the field max) is enforced where it matters for correctness:
// v-differentiation treats [-V, V) as periodic, so it refuses fields whose
// tails have not died off. Profile fields like omega carry heavy tails by
// design and are only ever used pointwise.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbl/fft.hpp"
#include "vbl/grid.hpp"
#include "vbl/parallel.hpp"
#include "vbl/profiles.hpp"

namespace vbl {

struct DensityField {
  GridSpec grid;
  std::vector<double> values;  // size nx

  double max_abs() const {
    double m = 0.0;
    for (double x : values) m = std::max(m, std::abs(x));
    return m;
  }
};

struct PhaseField {
  GridSpec grid;
  std::vector<double> values;  // row-major, values[i*nv + j] = f(x_i, v_j)

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.nv + j]; }
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.nv + j]; }

  static PhaseField zeros(const GridSpec& g) {
    return PhaseField{g, std::vector<double>(static_cast<std::size_t>(g.nx) * g.nv, 0.0)};
  }

  static PhaseField from_function(const GridSpec& g,
                                  const std::function<double(double, double)>& f) {
    PhaseField out = zeros(g);
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.nv; ++j) out.at(i, j) = f(g.x(i), g.v(j));
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : values) m = std::max(m, std::abs(x));
    return m;
  }

  // Largest |f| on the extreme v rows, which sit in the decay padding.
  double boundary_magnitude() const {
    double m = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
      m = std::max(m, std::abs(at(i, 0)));
      m = std::max(m, std::abs(at(i, grid.nv - 1)));
    }
    return m;
  }

  bool padding_ok() const {
    const double m = max_abs();
    if (m == 0.0) return true;
    return boundary_magnitude() <= 1e-12 * m;
  }
};

inline void require_same_mesh(const PhaseField& a, const PhaseField& b, const char* who) {
  if (!a.grid.same_mesh(b.grid))
    throw std::invalid_argument(std::string(who) + ": fields live on different meshes");
}

inline PhaseField linear_combination(const PhaseField& a, double ca,
                                     const PhaseField& b, double cb) {
  require_same_mesh(a, b, "linear_combination");
  PhaseField out = a;
  for (std::size_t n = 0; n < out.values.size(); ++n)
    out.values[n] = ca * a.values[n] + cb * b.values[n];
  return out;
}

inline PhaseField pointwise_scale(const PhaseField& f,
                                  const std::function<double(double)>& wv) {
  PhaseField out = f;
  for (int i = 0; i < f.grid.nx; ++i)
    for (int j = 0; j < f.grid.nv; ++j) out.at(i, j) = f.at(i, j) * wv(f.grid.v(j));
  return out;
}

// Trapezoid quadrature in v on the periodic extension: with the decay
// padding in force this equals the composite trapezoid rule on [-V, V].
inline DensityField moment_zero(const PhaseField& f) {
  const GridSpec& g = f.grid;
  DensityField rho{g, std::vector<double>(g.nx, 0.0)};
  const double dv = g.dv();
  for (int i = 0; i < g.nx; ++i) {
    double s = 0.0;
    for (int j = 0; j < g.nv; ++j) s += f.at(i, j);
    rho.values[i] = s * dv;
  }
  return rho;
}

inline DensityField moment_first(const PhaseField& f) {
  const GridSpec& g = f.grid;
  DensityField m{g, std::vector<double>(g.nx, 0.0)};
  const double dv = g.dv();
  for (int i = 0; i < g.nx; ++i) {
    // pair +v with -v so odd symmetry cancels exactly; node 0 (v = -V) and
    // node nv/2 (v = 0) have no partner, v = 0 contributes nothing anyway
    double s = -g.v_halfwidth * f.at(i, 0);
    for (int j = 1; j < g.nv / 2; ++j) {
      const double v = g.v(g.nv / 2 + j);  // = +v_j magnitude
      s += v * (f.at(i, g.nv / 2 + j) - f.at(i, g.nv / 2 - j));
    }
    m.values[i] = s * dv;
  }
  return m;
}

// Mass of the omega tail outside [-V, V]; reported next to omega-weighted
// moments because the weight decays only like 1/v^2.
inline double omega_tail_mass(double v_halfwidth) {
  return 2.0 * std::atan(1.0 / v_halfwidth) / pi;
}

inline void require_padding(const PhaseField& f, const char* who) {
  if (!f.padding_ok()) {
    throw std::domain_error(std::string(who) +
                            ": decay padding violated, boundary magnitude " +
                            std::to_string(f.boundary_magnitude()) + " vs max " +
                            std::to_string(f.max_abs()));
  }
}

inline void require_order(int order, const char* who) {
  if (order < 0 || order > 8)
    throw std::invalid_argument(std::string(who) + ": derivative order must be in [0, 8]");
}

inline PhaseField ddx(const PhaseField& f, int order) {
  require_order(order, "ddx");
  if (order == 0) return f;
  const GridSpec& g = f.grid;
  PhaseField out = PhaseField::zeros(g);
  parallel_for(static_cast<std::size_t>(g.nv), [&](std::size_t j) {
    std::vector<double> col(g.nx);
    for (int i = 0; i < g.nx; ++i) col[i] = f.at(i, static_cast<int>(j));
    col = spectral_derivative(col, g.x_period, order);
    for (int i = 0; i < g.nx; ++i) out.at(i, static_cast<int>(j)) = col[i];
  });
  return out;
}

inline PhaseField ddv(const PhaseField& f, int order) {
  require_order(order, "ddv");
  if (order == 0) return f;
  require_padding(f, "ddv");
  const GridSpec& g = f.grid;
  PhaseField out = PhaseField::zeros(g);
  parallel_for(static_cast<std::size_t>(g.nx), [&](std::size_t i) {
    std::vector<double> row(g.nv);
    for (int j = 0; j < g.nv; ++j) row[j] = f.at(static_cast<int>(i), j);
    row = spectral_derivative(row, 2.0 * g.v_halfwidth, order);
    for (int j = 0; j < g.nv; ++j) out.at(static_cast<int>(i), j) = row[j];
  });
  return out;
}

inline DensityField ddx(const DensityField& rho, int order) {
  require_order(order, "ddx");
  if (order == 0) return rho;
  DensityField out = rho;
  out.values = spectral_derivative(rho.values, rho.grid.x_period, order);
  return out;
}

inline PhaseField weight_profile(const GridSpec& g) {
  return PhaseField::from_function(g, [](double, double v) { return weight_omega(v); });
}

inline PhaseField alpha_profile(const GridSpec& g) {
  return PhaseField::from_function(g, [](double, double v) { return alpha_of_v(v); });
}

inline PhaseField initial_field(const GridSpec& g, const InitialProfile& p) {
  return PhaseField::from_function(
      g, [&](double x, double v) { return p(x, v, g.x_period); });
}

// g0 = f0 / omega = pi (1 + v^2) f0
inline PhaseField divide_by_weight(const PhaseField& f) {
  return pointwise_scale(f, [](double v) { return pi * (1.0 + v * v); });
}

inline PhaseField multiply_by_weight(const PhaseField& f) {
  return pointwise_scale(f, [](double v) { return weight_omega(v); });
}

inline double x_integral(const DensityField& rho, int power = 1) {
  double s = 0.0;
  for (double r : rho.values) s += (power == 1) ? r : std::pow(r, power);
  return s * rho.grid.dx();
}

inline double field_mass(const PhaseField& f) {
  double s = 0.0;
  for (double x : f.values) s += x;
  return s * f.grid.dx() * f.grid.dv();
}

}  // namespace vbl

#endif
