#ifndef VBL_FIXED_POINT_HPP
#define VBL_FIXED_POINT_HPP

// The contraction argument made executable. Psi maps a candidate h to the
// solution g of the linear problem whose drift density is the omega-moment
// of h, with initial slice g0 = f0/omega. The gate evaluates the smallness
// chain that makes Psi a contraction on the ball X of radius M:
//
//   0 < T < 1,  T < lambda0 < 1,  0 < K < lambda0/T - 1
//   kappa = (1 + qT)(1 + alpha0) M^{q+1} e^{alpha0 M^{q+1} T} < 1
//   K - lambda0 - 16 M^{q+1} > 1
//   ||f0/omega||_{H,lambda0} <= M e^{-(16 + alpha0) M^{q+1}}
//
// alpha0 = ||alpha||_{lambda0} is always recomputed from the closed-form
// alpha table, never supplied by the caller. Distances between iterates are
// measured in the Z norm through spectral derivative tables of difference
// fields, capped at (4,4) with entries masked to total order <= 6.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbl/norms.hpp"
#include "vbl/transport.hpp"

namespace vbl {

struct GateFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverParams {
  double lambda0 = 0.5;
  double K = 40.0;
  double T = 0.01;
  double M = 0.25;
  int q = 0;
  double picard_tol = 1e-9;
  int max_iter = 40;

  NormParams norm_params() const { return NormParams{lambda0, K, T}; }
};

inline constexpr int alpha_table_order = 72;

inline double compute_alpha0(double lambda0) {
  const NormValue v = norm_lambda(table_alpha(alpha_table_order), lambda0,
                                  TailPolicy::reject);
  return static_cast<double>(v.value);
}

inline double kappa(const SolverParams& p, double alpha0) {
  const double mq = std::pow(p.M, p.q + 1);
  return (1.0 + p.q * p.T) * (1.0 + alpha0) * mq * std::exp(alpha0 * mq * p.T);
}

struct GateCondition {
  std::string name;
  double value = 0.0;
  double margin = 0.0;  // signed distance to the threshold, >= 0 passes
  bool pass = false;
};

struct GateReport {
  double alpha0 = 0.0;
  double kappa_value = 0.0;
  double f0_norm = 0.0;
  double f0_bound = 0.0;
  std::vector<GateCondition> conditions;
  bool pass = false;
};

// g0_table: derivative table of f0/omega (closed form for library profiles).
inline GateReport gate(const SolverParams& p, const DerivativeTable& g0_table) {
  GateReport r;
  r.alpha0 = compute_alpha0(p.lambda0);
  r.kappa_value = kappa(p, r.alpha0);
  const double mq = std::pow(p.M, p.q + 1);

  auto add = [&](const std::string& name, double value, double margin) {
    r.conditions.push_back({name, value, margin, margin >= 0.0});
  };
  add("range_T", p.T, std::min(p.T, 1.0 - p.T));
  add("range_lambda0", p.lambda0, std::min(p.lambda0 - p.T, 1.0 - p.lambda0));
  add("range_K", p.K, std::min(p.K, p.lambda0 / p.T - 1.0 - p.K));
  add("contraction_factor", r.kappa_value, 1.0 - r.kappa_value);
  const double gap = p.K - p.lambda0 - 16.0 * mq;
  add("norm_gap", gap, gap - 1.0);
  r.f0_norm = static_cast<double>(norm_H(g0_table, p.lambda0).value);
  r.f0_bound = p.M * std::exp(-(16.0 + r.alpha0) * mq);
  add("initial_size", r.f0_norm, r.f0_bound - r.f0_norm);

  r.pass = true;
  for (const auto& c : r.conditions) r.pass = r.pass && c.pass;
  return r;
}

// Largest M on the 0.05 grid satisfying the two M-conditions; 0 when the
// scan finds none.
inline double auto_select_M(double lambda0, double K, double T, int q) {
  const double alpha0 = compute_alpha0(lambda0);
  double best = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double M = 0.05 * j;
    const double mq = std::pow(M, q + 1);
    const double left = (1.0 + q * T) * (1.0 + alpha0) * mq * std::exp(alpha0 * mq * T);
    const double right = K - lambda0 - 16.0 * mq;
    if (left < 1.0 && right > 1.0) best = M;
  }
  return best;
}

// Derivative-table policy for Z distances and membership values: rectangle
// caps (4,4), entries masked to k + l <= 6.
inline DerivativeTable z_table(const PhaseField& f) {
  return table_from_field(f, 4, 4, 6);
}

inline NormValue z_distance(const Trajectory& a, const Trajectory& b,
                            const NormParams& np) {
  if (a.slices.size() != b.slices.size())
    throw std::invalid_argument("z_distance: trajectories hold different slice counts");
  if (!a.grid.same_mesh(b.grid))
    throw std::invalid_argument("z_distance: trajectories live on different meshes");
  std::vector<DerivativeTable> tables;
  tables.reserve(a.slices.size());
  for (std::size_t n = 0; n < a.slices.size(); ++n)
    tables.push_back(z_table(linear_combination(a.slices[n], 1.0, b.slices[n], -1.0)));
  return z_norm(tables, a.grid.dt, np);
}

// sigma(t) = integral of omega h(t) dv, one density slice per time slice.
inline std::vector<DensityField> sigma_series_of(const Trajectory& h) {
  std::vector<DensityField> sigma;
  sigma.reserve(h.slices.size());
  for (const auto& slice : h.slices) sigma.push_back(moment_zero(multiply_by_weight(slice)));
  return sigma;
}

inline Trajectory psi(const Trajectory& h, const PhaseField& g0,
                      const SolverParams& p) {
  if (h.kind != TrajectoryKind::linear_g)
    throw std::invalid_argument("psi: candidate trajectory must be linear-g kind");
  if (!h.grid.same_mesh(g0.grid))
    throw std::invalid_argument("psi: candidate and initial slice meshes differ");
  if (std::abs(h.grid.t_final - p.T) > 1e-12 * std::max(1.0, p.T))
    throw std::invalid_argument("psi: grid horizon does not match params T");
  AdvanceOptions opt;
  opt.q = p.q;
  opt.alpha_term = true;
  opt.form = DriftForm::conservative;
  return solve_linear(g0, sigma_series_of(h), opt);
}

enum class StartExtension { constant_in_time, free_transport };

inline Trajectory start_trajectory(const PhaseField& g0, StartExtension kind) {
  const GridSpec& grid = g0.grid;
  if (kind == StartExtension::constant_in_time) {
    Trajectory h{grid, TrajectoryKind::linear_g, {}, {}, true};
    h.slices.assign(grid.steps() + 1, g0);
    h.drift_sup.assign(grid.steps(), 0.0);
    return h;
  }
  // free transport: advect g0 with zero drift (alpha term inert since a = 0)
  std::vector<DensityField> zero_sigma(grid.steps() + 1,
                                       DensityField{grid, std::vector<double>(grid.nx, 0.0)});
  AdvanceOptions opt;
  opt.q = 0;
  opt.alpha_term = false;
  return solve_linear(g0, zero_sigma, opt);
}

struct PicardIteration {
  int k = 0;
  double distance = 0.0;  // Z distance between iterates k and k+1
  double ratio = 0.0;     // distance_k / distance_{k-1}, 0 for k = 0
};

struct PicardResult {
  std::vector<PicardIteration> iterations;
  bool converged = false;
  Trajectory fixed_g;  // last iterate, linear-g kind
  Trajectory fixed_f;  // omega * g, nonlinear-f kind
};

inline Trajectory weight_times(const Trajectory& g_traj) {
  Trajectory f = g_traj;
  f.kind = TrajectoryKind::nonlinear_f;
  for (auto& slice : f.slices) slice = multiply_by_weight(slice);
  return f;
}

inline PicardResult picard(const PhaseField& f0, const SolverParams& p,
                           StartExtension start = StartExtension::constant_in_time) {
  const PhaseField g0 = divide_by_weight(f0);
  const NormParams np = p.norm_params();
  Trajectory h = start_trajectory(g0, start);
  PicardResult result;
  double prev_d = -1.0;
  for (int k = 0; k < p.max_iter; ++k) {
    Trajectory next = psi(h, g0, p);
    const double d = static_cast<double>(z_distance(next, h, np).value);
    PicardIteration it;
    it.k = k;
    it.distance = d;
    it.ratio = (prev_d > 0.0) ? d / prev_d : 0.0;
    result.iterations.push_back(it);
    h = std::move(next);
    prev_d = d;
    if (d < p.picard_tol) {
      result.converged = true;
      break;
    }
  }
  result.fixed_g = h;
  result.fixed_f = weight_times(h);
  return result;
}

// X-space membership: sup over slices of ||.||_{H,lambda0} plus the
// trapezoid-in-time integral of |.|_{H,lambda(t)}, compared against M.
// Estimated on capped grid tables, so it underestimates the true value;
// the reported tail bound carries the truncation honesty.
struct MembershipReport {
  double value = 0.0;
  double tail_bound = 0.0;
  double M = 0.0;
  bool pass = false;
};

inline MembershipReport membership_X(const Trajectory& traj, const SolverParams& p) {
  const NormParams np = p.norm_params();
  double sup_part = 0.0, int_part = 0.0;
  long double tail = 0.0L;
  const double dt = traj.grid.dt;
  const int n_slices = static_cast<int>(traj.slices.size());
  for (int n = 0; n < n_slices; ++n) {
    const DerivativeTable t = z_table(traj.slices[n]);
    const NormValue h0 = norm_H(t, np.lambda0);
    const NormValue hs = seminorm_H(t, np.lambda_at(dt * n));
    sup_part = std::max(sup_part, static_cast<double>(h0.value));
    const double w = (n == 0 || n == n_slices - 1) ? 0.5 : 1.0;
    int_part += w * dt * static_cast<double>(hs.value);
    tail += h0.tail_bound + static_cast<long double>(w * dt) * hs.tail_bound;
  }
  MembershipReport r;
  r.value = sup_part + int_part;
  r.tail_bound = static_cast<double>(tail);
  r.M = p.M;
  r.pass = r.value <= p.M;
  return r;
}

struct ContractionMeasurement {
  double input_distance = 0.0;
  double output_distance = 0.0;
  double measured = 0.0;
  double bound = 0.0;  // kappa at the gate parameters
};

inline ContractionMeasurement contraction_rate(const Trajectory& h1,
                                               const Trajectory& h2,
                                               const PhaseField& g0,
                                               const SolverParams& p) {
  const NormParams np = p.norm_params();
  ContractionMeasurement m;
  m.input_distance = static_cast<double>(z_distance(h1, h2, np).value);
  if (m.input_distance < 1e-6)
    throw std::invalid_argument(
        "contraction_rate: input Z distance below 1e-6 would be noise-dominated");
  const Trajectory p1 = psi(h1, g0, p);
  const Trajectory p2 = psi(h2, g0, p);
  m.output_distance = static_cast<double>(z_distance(p1, p2, np).value);
  m.measured = m.output_distance / m.input_distance;
  m.bound = kappa(p, compute_alpha0(p.lambda0));
  return m;
}

}  // namespace vbl

#endif
