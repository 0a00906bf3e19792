#ifndef VBL_RUNNER_HPP
#define VBL_RUNNER_HPP

// Mode orchestration behind the vbl command line. Every mode writes a
// deterministic report.json (full resolved config embedded, no clocks) plus
// a meta.json carrying wall time and timestamps, so identical config+seed
// reproduce report.json byte for byte.
//
// Exit codes: 0 success, 2 config error, 3 gate failure, 4 numerical abort,
// 5 property-suite failure.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <string>
#include <vector>

#include "vbl/config.hpp"
#include "vbl/io.hpp"

namespace vbl {

struct ResolvedSetup {
  RunConfig cfg;
  GridSpec grid;
  SolverParams params;
  double alpha0 = 0.0;
  double amplitude = 0.0;
  bool M_auto = false;
  bool amplitude_auto = false;
};

inline constexpr int closed_form_kmax = 24;
inline constexpr int closed_form_lmax = 40;

inline DerivativeTable g0_closed_form_table(const ResolvedSetup& s) {
  return table_weighted_gauss_v_trig_x(s.amplitude, s.cfg.epsilon, s.cfg.mode,
                                       s.cfg.x_period, closed_form_kmax,
                                       closed_form_lmax);
}

inline ResolvedSetup resolve_setup(RunConfig cfg) {
  ResolvedSetup s;
  s.grid = cfg.grid();
  s.M_auto = !cfg.M.has_value();
  double M = cfg.M.value_or(0.0);
  if (s.M_auto) {
    M = auto_select_M(cfg.lambda0, cfg.K, cfg.horizon(), cfg.q);
    if (M <= 0.0)
      throw GateFailure("auto M scan found no admissible radius; give params.M explicitly");
  }
  s.params = SolverParams{cfg.lambda0, cfg.K,          cfg.horizon(), M,
                          cfg.q,       cfg.picard_tol, cfg.max_iter};
  s.alpha0 = compute_alpha0(cfg.lambda0);
  s.amplitude_auto = !cfg.amplitude.has_value();
  if (s.amplitude_auto) {
    const double mq = std::pow(M, cfg.q + 1);
    const double bound = M * std::exp(-(16.0 + s.alpha0) * mq);
    const DerivativeTable unit = table_weighted_gauss_v_trig_x(
        1.0, cfg.epsilon, cfg.mode, cfg.x_period, closed_form_kmax, closed_form_lmax);
    s.amplitude = 0.9 * bound / static_cast<double>(norm_H(unit, cfg.lambda0).value);
  } else {
    s.amplitude = *cfg.amplitude;
  }
  cfg.M = M;
  cfg.amplitude = s.amplitude;
  s.cfg = cfg;
  return s;
}

inline PhaseField initial_f0(const ResolvedSetup& s) {
  if (s.cfg.profile == "file") {
    const SnapshotFile snap = read_field_vbl(s.cfg.initial_file);
    if (static_cast<int>(snap.nx) != s.grid.nx || static_cast<int>(snap.nv) != s.grid.nv ||
        std::abs(snap.x_period - s.grid.x_period) > 1e-12 ||
        std::abs(snap.v_halfwidth - s.grid.v_halfwidth) > 1e-12)
      throw ConfigError(s.cfg.initial_file + ": snapshot mesh disagrees with [grid]");
    return PhaseField{s.grid, snap.values};
  }
  return initial_field(s.grid, InitialProfile{s.amplitude, s.cfg.epsilon, s.cfg.mode});
}

inline ordered_json config_json(const ResolvedSetup& s) {
  const RunConfig& c = s.cfg;
  return ordered_json{
      {"grid",
       {{"nx", c.nx},
        {"nv", c.nv},
        {"x_period", c.x_period},
        {"v_halfwidth", c.v_halfwidth},
        {"dt", c.step()},
        {"t_final", c.horizon()}}},
      {"params",
       {{"lambda0", c.lambda0},
        {"K", c.K},
        {"T", c.horizon()},
        {"M", *c.M},
        {"M_auto", s.M_auto},
        {"q", c.q},
        {"picard_tol", c.picard_tol},
        {"max_iter", c.max_iter}}},
      {"initial",
       {{"profile", c.profile},
        {"amplitude", s.amplitude},
        {"amplitude_auto", s.amplitude_auto},
        {"epsilon", c.epsilon},
        {"mode", c.mode},
        {"file", c.initial_file}}},
      {"run",
       {{"out", c.out},
        {"seed", c.seed},
        {"pairs", c.pairs},
        {"drift_form", c.drift_form}}}};
}

class MetaClock {
 public:
  MetaClock() : start_(std::chrono::steady_clock::now()) {}

  void write(const std::string& path, const std::string& mode) const {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    char stamp[64];
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    write_json(path, ordered_json{{"mode", mode},
                                  {"generated_at", stamp},
                                  {"wall_time_seconds", secs},
                                  {"threads", thread_budget()}});
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline DriftForm drift_form_of(const RunConfig& c) {
  return c.drift_form == "direct" ? DriftForm::direct : DriftForm::conservative;
}

// ---------------------------------------------------------------- gate mode

inline int mode_gate(const RunConfig& cfg) {
  MetaClock clock;
  const ResolvedSetup s = resolve_setup(cfg);
  const GateReport g = gate(s.params, g0_closed_form_table(s));
  ensure_dir(s.cfg.out);
  write_json(s.cfg.out + "/report.json",
             ordered_json{{"mode", "gate"}, {"config", config_json(s)}, {"gate", gate_json(g)}});
  clock.write(s.cfg.out + "/meta.json", "gate");
  for (const auto& c : g.conditions)
    std::printf("%-20s value % .6e margin % .6e %s\n", c.name.c_str(), c.value,
                c.margin, c.pass ? "pass" : "FAIL");
  std::printf("gate %s (alpha0 = %.12g, kappa = %.12g, M = %.12g)\n",
              g.pass ? "passed" : "FAILED", g.alpha0, g.kappa_value, s.params.M);
  return g.pass ? 0 : 3;
}

// ------------------------------------------------------------ helper: gate

inline GateReport gate_or_abort(const ResolvedSetup& s, bool force,
                                const std::string& mode) {
  const GateReport g = gate(s.params, g0_closed_form_table(s));
  if (!g.pass) {
    if (!force) {
      ensure_dir(s.cfg.out);
      write_json(s.cfg.out + "/report.json",
                 ordered_json{{"mode", mode},
                              {"config", config_json(s)},
                              {"gate", gate_json(g)},
                              {"aborted", "gate failure"}});
      throw GateFailure(mode + ": smallness gate failed; rerun with --force to override");
    }
    std::printf("warning: smallness gate FAILED, continuing under --force\n");
  }
  return g;
}

// ------------------------------------------------------------ simulate mode

inline int mode_simulate(const RunConfig& cfg, bool force) {
  MetaClock clock;
  const ResolvedSetup s = resolve_setup(cfg);
  const GateReport g = gate_or_abort(s, force, "simulate");
  const PhaseField f0 = initial_f0(s);
  const Trajectory traj = solve_nonlinear(f0, s.params.q, drift_form_of(s.cfg));

  const auto sup = sup_history(traj);
  std::vector<std::vector<double>> rows;
  double mass0 = field_mass(traj.slices.front());
  double e0 = kinetic_energy_total(traj.slices.front(), s.params.q);
  for (int n = 0; n <= traj.steps(); ++n) {
    rows.push_back({traj.time(n), field_mass(traj.slices[n]),
                    kinetic_energy_total(traj.slices[n], s.params.q), sup[n]});
  }
  const ConservationReport cons = conservation_report(traj, s.params.q);
  const double mp = max_principle_residual(traj);

  ensure_dir(s.cfg.out);
  write_series_csv(s.cfg.out + "/conservation.csv", {"t", "mass", "energy", "sup"}, rows);
  write_field_csv(s.cfg.out + "/snapshot_final.csv", traj.slices.back());
  write_field_vbl(s.cfg.out + "/snapshot_final.vbl", traj.slices.back(), s.params.T);
  write_json(
      s.cfg.out + "/report.json",
      ordered_json{{"mode", "simulate"},
                   {"config", config_json(s)},
                   {"gate", gate_json(g)},
                   {"diagnostics",
                    {{"mass_initial", mass0},
                     {"energy_initial", e0},
                     {"mass_drift_rel", cons.mass_drift_rel},
                     {"energy_drift_rel", cons.energy_drift_rel},
                     {"sup_residual_max", mp},
                     {"drift_resolved", traj.resolved}}},
                   {"artifacts", {"conservation.csv", "snapshot_final.csv", "snapshot_final.vbl"}}});
  clock.write(s.cfg.out + "/meta.json", "simulate");
  std::printf("simulate: %d steps, mass drift %.3e, energy drift %.3e\n",
              traj.steps(), cons.mass_drift_rel, cons.energy_drift_rel);
  return 0;
}

// -------------------------------------------------------------- picard mode

inline int mode_picard(const RunConfig& cfg, bool force) {
  MetaClock clock;
  const ResolvedSetup s = resolve_setup(cfg);
  const GateReport g = gate_or_abort(s, force, "picard");
  const PhaseField f0 = initial_f0(s);
  const PicardResult pr = picard(f0, s.params);

  ordered_json iters = ordered_json::array();
  std::vector<std::vector<double>> rows;
  for (const auto& it : pr.iterations) {
    iters.push_back(ordered_json{{"k", it.k}, {"d", it.distance}, {"ratio", it.ratio}});
    rows.push_back({static_cast<double>(it.k), it.distance, it.ratio});
  }
  const MembershipReport mem = membership_X(pr.fixed_g, s.params);

  ensure_dir(s.cfg.out);
  write_series_csv(s.cfg.out + "/iterations.csv", {"k", "d", "ratio"}, rows);
  write_field_csv(s.cfg.out + "/snapshot_final.csv", pr.fixed_f.slices.back());
  write_field_vbl(s.cfg.out + "/snapshot_final.vbl", pr.fixed_f.slices.back(), s.params.T);
  write_json(s.cfg.out + "/report.json",
             ordered_json{{"mode", "picard"},
                          {"config", config_json(s)},
                          {"gate", gate_json(g)},
                          {"kappa", g.kappa_value},
                          {"iterations", iters},
                          {"converged", pr.converged},
                          {"membership", membership_json(mem)},
                          {"artifacts",
                           {"iterations.csv", "snapshot_final.csv", "snapshot_final.vbl"}}});
  clock.write(s.cfg.out + "/meta.json", "picard");
  if (!pr.converged) {
    std::string hist;
    for (const auto& it : pr.iterations) hist += " " + format_double(it.distance);
    throw TransportAbort("picard did not reach tolerance " +
                         format_double(s.params.picard_tol) + " in " +
                         std::to_string(s.params.max_iter) + " iterations; distances:" + hist);
  }
  std::printf("picard: converged in %zu iterations, membership value %.6e (M = %g)\n",
              pr.iterations.size(), mem.value, mem.M);
  return 0;
}

// ------------------------------------------------------------ contract mode

inline PhaseField perturbation_field(const GridSpec& grid, double amp, int mode,
                                     double phase) {
  return PhaseField::from_function(grid, [&](double x, double v) {
    return amp * std::cos(2.0 * pi * mode * x / grid.x_period + phase) *
           std::exp(-0.5 * v * v);
  });
}

struct PairSample {
  double input = 0.0, output = 0.0, measured = 0.0;
};

inline PairSample contraction_sample(const GridSpec& grid, const SolverParams& params,
                                     double base_amp, double eps, int base_mode,
                                     double u1, double u2, double u3, double u4) {
  const PhaseField f0 =
      initial_field(grid, InitialProfile{base_amp, eps, base_mode});
  const PhaseField g0 = divide_by_weight(f0);
  Trajectory h1 = start_trajectory(g0, StartExtension::constant_in_time);
  Trajectory h2 = h1;
  const double a1 = base_amp * (0.05 + 0.45 * u1);
  const double a2 = base_amp * (0.05 + 0.45 * u2);
  const int m1 = 1 + static_cast<int>(u3 * 3.0) % 3;
  const int m2 = 1 + static_cast<int>(u4 * 3.0) % 3;
  const PhaseField p1 = perturbation_field(grid, a1, m1, 2.0 * pi * u4);
  const PhaseField p2 = perturbation_field(grid, -a2, m2, 2.0 * pi * u3);
  for (auto& slice : h1.slices) slice = linear_combination(slice, 1.0, p1, 1.0);
  for (auto& slice : h2.slices) slice = linear_combination(slice, 1.0, p2, 1.0);
  const ContractionMeasurement m = contraction_rate(h1, h2, g0, params);
  return PairSample{m.input_distance, m.output_distance, m.measured};
}

inline int mode_contract(const RunConfig& cfg, bool force) {
  MetaClock clock;
  const ResolvedSetup s = resolve_setup(cfg);
  const GateReport g = gate_or_abort(s, force, "contract");

  TableRng rng(s.cfg.seed);
  std::vector<PairSample> samples;
  std::vector<std::array<double, 4>> draws;
  for (int p = 0; p < s.cfg.pairs; ++p) {
    draws.push_back({rng.uniform01(), rng.uniform01(), rng.uniform01(), rng.uniform01()});
    samples.push_back(contraction_sample(s.grid, s.params, s.amplitude, s.cfg.epsilon,
                                         s.cfg.mode, draws.back()[0], draws.back()[1],
                                         draws.back()[2], draws.back()[3]));
  }

  // allowance: self-convergence of the measured quotient for the first pair
  // under one mesh/step refinement
  GridSpec fine = GridSpec::make(s.grid.nx * 2, s.grid.nv * 2, s.grid.x_period,
                                 s.grid.v_halfwidth, s.grid.dt / 2.0, s.grid.t_final);
  const PairSample fine_sample =
      contraction_sample(fine, s.params, s.amplitude, s.cfg.epsilon, s.cfg.mode,
                         draws[0][0], draws[0][1], draws[0][2], draws[0][3]);
  const double allowance = 2.0 * std::abs(fine_sample.measured - samples[0].measured);

  double worst = 0.0;
  ordered_json jpairs = ordered_json::array();
  std::vector<std::vector<double>> rows;
  for (const auto& ps : samples) {
    worst = std::max(worst, ps.measured);
    jpairs.push_back(ordered_json{
        {"input_distance", ps.input}, {"output_distance", ps.output}, {"measured", ps.measured}});
    rows.push_back({ps.input, ps.output, ps.measured});
  }
  const bool pass = worst <= g.kappa_value + allowance;

  ensure_dir(s.cfg.out);
  write_series_csv(s.cfg.out + "/pairs.csv", {"input_d", "output_d", "measured"}, rows);
  write_json(s.cfg.out + "/report.json",
             ordered_json{{"mode", "contract"},
                          {"config", config_json(s)},
                          {"gate", gate_json(g)},
                          {"kappa", g.kappa_value},
                          {"allowance", allowance},
                          {"max_measured", worst},
                          {"pairs", jpairs},
                          {"pass", pass}});
  clock.write(s.cfg.out + "/meta.json", "contract");
  std::printf("contract: %d pairs, max measured %.6e vs kappa %.6e (+%.2e) -> %s\n",
              s.cfg.pairs, worst, g.kappa_value, allowance, pass ? "pass" : "FAIL");
  return pass ? 0 : 5;
}

// -------------------------------------------------------------- norms mode

inline int mode_norms(const RunConfig& cfg) {
  MetaClock clock;
  const ResolvedSetup s = resolve_setup(cfg);
  TableRng rng(s.cfg.seed);
  ordered_json suites = ordered_json::array();
  int total_failures = 0;

  {  // shift inequality on random tables
    int failures = 0;
    double worst_margin = 1e300;
    for (int i = 0; i < 100; ++i) {
      const DerivativeTable t = random_table_2d(rng);
      const double lam = 0.2 + 0.6 * rng.uniform01();
      const CheckResult r = check_lemma_shift(t, lam, i % 3);
      worst_margin = std::min(worst_margin,
                              static_cast<double>(r.rhs + r.slack - r.lhs));
      if (!r.pass) ++failures;
    }
    suites.push_back(ordered_json{{"name", "shift_inequality"},
                                  {"cases", 100},
                                  {"failures", failures},
                                  {"worst_margin", worst_margin}});
    total_failures += failures;
  }
  {  // power identity
    int failures = 0;
    double worst_relerr = 0.0;
    for (int i = 0; i < 100; ++i) {
      const DerivativeTable t = random_table_x_only(rng);
      const double lam = 0.1 + 0.7 * rng.uniform01();
      const CheckResult r = check_power_identity(t, lam, 1 + i % 4);
      worst_relerr = std::max(worst_relerr, static_cast<double>(r.slack));
      if (!r.pass) ++failures;
    }
    suites.push_back(ordered_json{{"name", "power_identity"},
                                  {"cases", 100},
                                  {"failures", failures},
                                  {"worst_relerr", worst_relerr}});
    total_failures += failures;
  }
  {  // product inequalities
    int failures = 0;
    double worst_ratio = 0.0;
    for (int i = 0; i < 50; ++i) {
      const DerivativeTable ts = random_table_x_only(rng);
      const DerivativeTable tg = random_table_2d(rng);
      DerivativeTable ta = random_table(rng, 0, rng.uniform_int(6, 12));
      const double lam = 0.1 + 0.7 * rng.uniform01();
      const int q = i % 4;
      const CheckResult r1 = check_product_inequality_I(ts, tg, lam, q);
      const CheckResult r2 = check_product_inequality_II(ts, ta, tg, lam, q);
      worst_ratio = std::max({worst_ratio,
                              static_cast<double>(r1.lhs / std::max(r1.rhs, 1e-300L)),
                              static_cast<double>(r2.lhs / std::max(r2.rhs, 1e-300L))});
      if (!r1.pass) ++failures;
      if (!r2.pass) ++failures;
    }
    suites.push_back(ordered_json{{"name", "product_inequalities"},
                                  {"cases", 100},
                                  {"failures", failures},
                                  {"worst_lhs_over_rhs", worst_ratio}});
    total_failures += failures;
  }
  {  // combinatorial bounds, exhaustive
    int failures = 0;
    double maxA = 0.0, maxB = 0.0;
    for (int n = 2; n <= 50; ++n)
      for (int m = 2; m <= 50; ++m) {
        const double a = static_cast<double>(combinatorial_A(n, m));
        maxA = std::max(maxA, a);
        if (a > 24.0) ++failures;
      }
    for (int n = 0; n <= 50; ++n)
      for (int m = 0; m <= 50; ++m) {
        const double b = static_cast<double>(combinatorial_B(n, m));
        maxB = std::max(maxB, b);
        if (b > 1.0 + 1e-15) ++failures;
      }
    suites.push_back(ordered_json{{"name", "combinatorial_bounds"},
                                  {"max_A", maxA},
                                  {"max_B", maxB},
                                  {"failures", failures}});
    total_failures += failures;
  }

  ensure_dir(s.cfg.out);
  write_json(s.cfg.out + "/report.json", ordered_json{{"mode", "norms"},
                                                      {"config", config_json(s)},
                                                      {"suites", suites},
                                                      {"failures", total_failures}});
  clock.write(s.cfg.out + "/meta.json", "norms");
  std::printf("norms: %d failures across property suites\n", total_failures);
  return total_failures == 0 ? 0 : 5;
}

// --------------------------------------------------------- euler-check mode

struct EulerCheckRun {
  double mass_drift = 0.0, momentum_drift = 0.0, energy_drift = 0.0;
  std::vector<double> residuals;  // per test function
  EulerTrajectory traj;
};

inline EulerCheckRun euler_check_run(int nx, double L, double eps, int mode, int q,
                                     double dt, int steps) {
  std::vector<double> rho(nx), u(nx, 0.0);
  for (int i = 0; i < nx; ++i)
    rho[i] = 1.0 + eps * std::cos(2.0 * pi * mode * (L * i / nx) / L);
  EulerCheckRun run;
  run.traj = euler_solve(EulerState::make(nx, L, q + 2.0, rho, u), dt, steps);
  const EulerState& s0 = run.traj.states.front();
  const double m0 = euler_mass(s0), p0 = euler_momentum(s0), e0 = energy_total(s0, q);
  for (const auto& st : run.traj.states) {
    run.mass_drift = std::max(run.mass_drift, std::abs(euler_mass(st) - m0) / std::abs(m0));
    run.momentum_drift =
        std::max(run.momentum_drift, std::abs(euler_momentum(st) - p0) / std::max(std::abs(m0), 1.0));
    run.energy_drift =
        std::max(run.energy_drift, std::abs(energy_total(st, q) - e0) / std::abs(e0));
  }
  for (const auto& tf : test_function_library(L))
    run.residuals.push_back(weak_residual(run.traj, q, tf).max_abs);
  return run;
}

inline int mode_euler_check(const RunConfig& cfg) {
  MetaClock clock;
  const ResolvedSetup s = resolve_setup(cfg);
  const int q = s.params.q;
  const double L = s.cfg.x_period;
  const double eps = s.cfg.epsilon;
  const int steps = s.grid.steps();

  const EulerCheckRun coarse =
      euler_check_run(s.cfg.nx, L, eps, s.cfg.mode, q, s.grid.dt, steps);
  const EulerCheckRun fine =
      euler_check_run(s.cfg.nx * 2, L, eps, s.cfg.mode, q, s.grid.dt / 2.0, steps * 2);

  const auto lib = test_function_library(L);
  ordered_json jres = ordered_json::array();
  bool orders_ok = true;
  for (std::size_t i = 0; i < lib.size(); ++i) {
    const double rc = coarse.residuals[i], rf = fine.residuals[i];
    double order = 0.0;
    bool at_floor = rc < 1e-13;
    if (!at_floor && rf > 0.0) order = std::log2(rc / rf);
    const bool ok = at_floor || order >= 2.0;
    orders_ok = orders_ok && ok;
    jres.push_back(ordered_json{{"name", lib[i].name},
                                {"residual_coarse", rc},
                                {"residual_fine", rf},
                                {"order", order},
                                {"at_noise_floor", at_floor},
                                {"pass", ok}});
  }
  const bool cons_ok = coarse.mass_drift <= 1e-10 && coarse.momentum_drift <= 1e-10 &&
                       coarse.energy_drift <= 1e-8;

  std::vector<std::vector<double>> rows;
  const EulerState& s0 = coarse.traj.states.front();
  for (std::size_t n = 0; n < coarse.traj.states.size(); ++n) {
    const EulerState& st = coarse.traj.states[n];
    rows.push_back({st.time, euler_mass(st), euler_momentum(st), energy_total(st, q)});
  }
  (void)s0;

  ensure_dir(s.cfg.out);
  write_series_csv(s.cfg.out + "/euler_series.csv", {"t", "mass", "momentum", "energy"}, rows);
  write_json(s.cfg.out + "/report.json",
             ordered_json{{"mode", "euler-check"},
                          {"config", config_json(s)},
                          {"conservation",
                           {{"mass_drift_rel", coarse.mass_drift},
                            {"momentum_drift_abs", coarse.momentum_drift},
                            {"energy_drift_rel", coarse.energy_drift},
                            {"pass", cons_ok}}},
                          {"weak_residuals", jres},
                          {"pass", orders_ok && cons_ok}});
  clock.write(s.cfg.out + "/meta.json", "euler-check");
  std::printf("euler-check: conservation %s, residual orders %s\n",
              cons_ok ? "pass" : "FAIL", orders_ok ? "pass" : "FAIL");
  return (orders_ok && cons_ok) ? 0 : 5;
}

// ---------------------------------------------------------------- plot mode

inline std::vector<std::vector<double>> read_csv_rows(const std::string& path,
                                                      std::vector<std::string>* columns) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  std::vector<std::vector<double>> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (header) {
      *columns = cells;
      header = false;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(std::stod(c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline int mode_plot(const RunConfig& cfg) {
  MetaClock clock;
  const std::string dir = cfg.out;
  int emitted = 0;
  for (const char* name : {"conservation", "euler_series", "iterations", "pairs"}) {
    const std::string csv = dir + "/" + name + ".csv";
    if (!std::filesystem::exists(csv)) continue;
    std::vector<std::string> columns;
    const auto rows = read_csv_rows(csv, &columns);
    write_dat(dir + "/" + name + ".dat", columns, rows);
    ++emitted;
  }
  const std::string snap = dir + "/snapshot_final.vbl";
  if (std::filesystem::exists(snap)) {
    const SnapshotFile sf = read_field_vbl(snap);
    GridSpec g = GridSpec::make(static_cast<int>(sf.nx), static_cast<int>(sf.nv),
                                sf.x_period, sf.v_halfwidth, 1.0, 1.0);
    write_field_dat(dir + "/snapshot_final.dat", PhaseField{g, sf.values});
    ++emitted;
  }
  if (emitted == 0)
    throw ConfigError("plot: no known artifacts found in '" + dir + "'");
  clock.write(dir + "/meta.json", "plot");
  std::printf("plot: emitted %d gnuplot file(s) into %s\n", emitted, dir.c_str());
  return 0;
}

}  // namespace vbl

#endif
