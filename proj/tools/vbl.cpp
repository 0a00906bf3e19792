// vbl: command line front end for the vlasov bounded-laboratory library.
//
//   vbl <mode> <config.cfg> [--out DIR] [--seed N] [--force]
//
// Modes: gate, simulate, picard, contract, norms, euler-check, plot.
// Exit codes: 0 ok, 2 config error, 3 gate failure, 4 numerical abort,
// 5 property-suite failure.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "vbl/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for a nonlinear Vlasov-type equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::uint64_t seed_override = 0;
  bool seed_given = false;
  bool force = false;

  auto add_mode = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("config", config_path, "run configuration file")->required();
    sub->add_option("--out", out_override, "override [run] out directory");
    sub->add_option("--seed", seed_override, "override [run] seed")
        ->each([&](const std::string&) { seed_given = true; });
    return sub;
  };

  CLI::App* gate = add_mode("gate", "evaluate the smallness gate and report margins");
  CLI::App* simulate = add_mode("simulate", "advance the nonlinear equation, track conservation");
  simulate->add_flag("--force", force, "continue past a failed gate");
  CLI::App* picard = add_mode("picard", "iterate the linearized map to its fixed point");
  picard->add_flag("--force", force, "continue past a failed gate");
  CLI::App* contract = add_mode("contract", "measure contraction quotients on random pairs");
  contract->add_flag("--force", force, "continue past a failed gate");
  CLI::App* norms = add_mode("norms", "run randomized norm/inequality property suites");
  CLI::App* euler = add_mode("euler-check", "weak residual and conservation checks for the fluid limit");
  CLI::App* plot = add_mode("plot", "convert artifacts in the out directory to gnuplot .dat");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    vbl::RunConfig cfg = vbl::parse_config_file(config_path);
    if (!out_override.empty()) cfg.out = out_override;
    if (seed_given) cfg.seed = seed_override;

    if (gate->parsed()) return vbl::mode_gate(cfg);
    if (simulate->parsed()) return vbl::mode_simulate(cfg, force);
    if (picard->parsed()) return vbl::mode_picard(cfg, force);
    if (contract->parsed()) return vbl::mode_contract(cfg, force);
    if (norms->parsed()) return vbl::mode_norms(cfg);
    if (euler->parsed()) return vbl::mode_euler_check(cfg);
    if (plot->parsed()) return vbl::mode_plot(cfg);
    std::fprintf(stderr, "error: no mode selected\n");
    return 2;
  } catch (const vbl::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const vbl::GateFailure& e) {
    std::fprintf(stderr, "gate failure: %s\n", e.what());
    return 3;
  } catch (const vbl::TransportAbort& e) {
    std::fprintf(stderr, "numerical abort: %s\n", e.what());
    return 4;
  } catch (const vbl::EulerAbort& e) {
    std::fprintf(stderr, "numerical abort: %s\n", e.what());
    return 4;
  } catch (const vbl::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
