// Batch experiment runner.  Subcommands:
//   verify   - run the identity-and-probe suite, emit the check report
//   sweep    - amplitude sweep of the current-built chi against exact energies
//   converge - refinement ladders for the shift identity and the vacuum probe
//
// Exit codes: 0 success, 1 identity-check failure, 2 config parse error,
// 3 config schema error, 4 filesystem error, 5 degenerate construction,
// 64 usage error, 70 internal error.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "diraclab/diraclab.hpp"

namespace {

using namespace diraclab;

struct CliOverrides {
  std::string config_path;
  std::string out_prefix;
  std::string format;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

RunConfig load_config(const CliOverrides& cli) {
  RunConfig rc = parse_run_config_file(cli.config_path);
  if (cli.seed_set) rc.seed = cli.seed;
  if (!cli.out_prefix.empty()) rc.output_prefix = cli.out_prefix;
  if (!cli.format.empty()) {
    rc.format_csv = cli.format == "csv" || cli.format == "both";
    rc.format_json = cli.format == "json" || cli.format == "both";
  }
  return rc;
}

ordered_json report_envelope(const RunConfig& rc) {
  ordered_json j = ordered_json::object();
  j["config"] = rc.to_json();
  j["seed"] = rc.seed;
  return j;
}

void emit(const RunConfig& rc, const std::string& suffix, const ordered_json& json_doc,
          const std::string& csv_doc, bool force_json = false) {
  if (rc.format_json || force_json)
    write_text_file(rc.output_prefix + suffix + ".json", json_doc.dump(2) + "\n");
  if (rc.format_csv) write_text_file(rc.output_prefix + suffix + ".csv", csv_doc);
}

void print_check_table(const std::vector<CheckResult>& checks) {
  std::size_t width = 12;
  for (const CheckResult& c : checks) width = std::max(width, c.name.size());
  int failures = 0;
  for (const CheckResult& c : checks) {
    const bool identity = c.kind == CheckKind::identity;
    const char* status = identity ? (c.passed ? "  ok  " : " FAIL ") : (c.passed ? " meas " : " drift");
    if (identity && !c.passed) ++failures;
    std::printf("[%s] %-*s  measured=% .6e", status, int(width), c.name.c_str(), c.measured);
    if (c.tolerance != 0.0) std::printf("  tol=%.1e", c.tolerance);
    std::printf("\n");
  }
  int identities = 0, probes = 0;
  for (const CheckResult& c : checks) (c.kind == CheckKind::identity ? identities : probes)++;
  std::printf("%d identity checks (%d failed), %d probes\n", identities, failures, probes);
}

int run_verify(const CliOverrides& cli) {
  const RunConfig rc = load_config(cli);
  if (rc.oracle && rc.lattice.n_sites > 4)
    throw ConfigSchemaError(0, "run.oracle", "the Fock oracle needs n_sites <= 4");

  SuiteParams params;
  params.lattice = rc.lattice;
  params.state = rc.state;
  params.chi = rc.chi;
  params.use_peierls = rc.scheme_peierls;
  params.use_linear = rc.scheme_linear;
  params.seed = rc.seed;
  params.oracle = rc.oracle;
  params.vacuum_trials = rc.vacuum_trials;
  params.oracle_trials = rc.oracle_trials;
  params.refinement_levels = rc.refinements;

  const std::vector<CheckResult> checks = run_verification_suite(params);
  print_check_table(checks);

  ordered_json doc = report_envelope(rc);
  doc["checks"] = checks_json(checks);
  emit(rc, "_checks", doc, to_csv(checks_report(checks, rc.meta())), /*force_json=*/true);

  for (const CheckResult& c : checks)
    if (c.kind == CheckKind::identity && !c.passed) return 1;
  return 0;
}

int run_sweep(const CliOverrides& cli) {
  const RunConfig rc = load_config(cli);
  if (rc.sweep_f.empty())
    throw ConfigSchemaError(0, "sweep.f_values", "required for the sweep subcommand");

  const SingleParticleOperator h0 = build_free_hamiltonian(rc.lattice);
  auto [vac, vacuum_state] = build_vacuum(h0);
  const CorrelationState state = make_state(rc.state, rc.lattice, vac, vacuum_state);

  const std::vector<SweepRow> rows = sweep_f(state, rc.sweep_f, rc.lattice, h0, vac);
  const double free_e = free_energy(state, h0, vac);
  const CrossoverScale fstar = crossover_scale(rows, free_e);
  double floor = std::numeric_limits<double>::infinity();
  for (const SweepRow& r : rows)
    floor = std::min({floor, r.transformed_free_energy, r.exact_peierls_energy});

  auto meta = rc.meta();
  meta.emplace_back("free_energy", format_g17(free_e));
  meta.emplace_back("crossover_f_star", fstar.found ? format_g17(fstar.f_star) : "none");
  meta.emplace_back("exact_energy_floor", format_g17(floor));

  ordered_json doc = report_envelope(rc);
  doc["free_energy"] = free_e;
  doc["crossover_f_star"] = fstar.found ? ordered_json(fstar.f_star) : ordered_json(nullptr);
  doc["exact_energy_floor"] = floor;
  doc["rows"] = rows_json(sweep_report(rows, {}));
  emit(rc, "_sweep", doc, to_csv(sweep_report(rows, meta)));

  std::printf("sweep: %zu rows, free energy %.12g, floor %.3e, f* %s\n", rows.size(), free_e,
              floor, fstar.found ? format_g17(fstar.f_star).c_str() : "not reached");
  return 0;
}

int run_converge(const CliOverrides& cli) {
  const RunConfig rc = load_config(cli);
  if (rc.refinements < 3)
    throw ConfigSchemaError(0, "run.refinements", "converge needs at least 3 levels");
  if (!rc.chi.refinable())
    throw ConfigSchemaError(0, "chi.recipe", "converge needs a generator recipe, not samples");

  const bool chi_constant = rc.chi.kind == ChiRecipe::Kind::constant;

  const ShiftIdentityResult shift =
      check_energy_shift_identity(rc.state, rc.chi, rc.lattice, rc.refinements);
  const ShiftIdentityResult sea_shift = check_energy_shift_identity(
      StateRecipe::boosted_sea(0.5), rc.chi, rc.lattice, rc.refinements);

  ExperimentReport table;
  table.columns = {"spacing", "n_sites", "shift_residual_with_p", "shift_residual_without_p",
                   "probe_value", "probe_kappa"};

  std::vector<double> kappas(rc.refinements, 0.0), probes(rc.refinements, 0.0);
  if (!chi_constant) {
    const ParadoxProbe probe = vacuum_paradox_probe(rc.chi, rc.lattice, rc.refinements);
    kappas = probe.ladder_kappa;
    probes = probe.ladder_values;
  }
  for (int j = 0; j < rc.refinements; ++j) {
    table.rows.push_back({shift.with_anomaly.spacings[j],
                          double(rc.lattice.n_sites * (1 << j)),
                          shift.with_anomaly.errors[j], shift.residual_without_p[j], probes[j],
                          kappas[j]});
  }

  auto meta = rc.meta();
  auto add_fit = [&meta](const std::string& prefix, const ConvergenceFit& fit) {
    meta.emplace_back(prefix + "_order", fit.degenerate ? "degenerate" : format_g17(fit.fitted_order));
    meta.emplace_back(prefix + "_r_squared", fit.degenerate ? "degenerate" : format_g17(fit.r_squared));
  };
  add_fit("shift_with_p", shift.with_anomaly);
  add_fit("sea_shift_with_p", sea_shift.with_anomaly);
  if (!chi_constant && kappas.size() >= 2) {
    meta.emplace_back("probe_kappa_last", format_g17(kappas.back()));
    meta.emplace_back("probe_kappa_drift",
                      format_g17(std::abs(kappas.back() / kappas[kappas.size() - 2] - 1.0)));
  }
  meta.emplace_back("plateau_gap",
                    shift.plateau_check.details.rfind("degenerate", 0) == 0
                        ? "degenerate"
                        : format_g17(shift.plateau_check.measured));
  table.meta = meta;

  ordered_json doc = report_envelope(rc);
  for (const auto& [k, v] : meta) {
    if (k.find('.') == std::string::npos && k != "seed") doc[k] = v;
  }
  doc["rows"] = rows_json(table);
  emit(rc, "_converge", doc, to_csv(table));

  std::printf("converge: %d levels, shift order %s (r^2 %s), sea-state order %s\n", rc.refinements,
              shift.with_anomaly.degenerate ? "degenerate"
                                            : format_g17(shift.with_anomaly.fitted_order).c_str(),
              shift.with_anomaly.degenerate ? "-" : format_g17(shift.with_anomaly.r_squared).c_str(),
              sea_shift.with_anomaly.degenerate
                  ? "degenerate"
                  : format_g17(sea_shift.with_anomaly.fitted_order).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1+1D lattice Dirac gauge laboratory"};
  app.require_subcommand(1);

  CliOverrides cli;
  auto add_common = [&cli](CLI::App* sub) {
    sub->add_option("--config", cli.config_path, "run configuration file")->required();
    sub->add_option("--out", cli.out_prefix, "output path prefix (overrides config)");
    sub->add_option("--seed", cli.seed, "seed (overrides config)")->each([&cli](const std::string&) {
      cli.seed_set = true;
    });
    sub->add_option("--format", cli.format, "csv|json|both (overrides config)")
        ->check(CLI::IsMember({"csv", "json", "both"}));
  };

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  CLI::App* sweep = app.add_subcommand("sweep", "run the amplitude sweep");
  CLI::App* converge = app.add_subcommand("converge", "run the refinement study");
  add_common(verify);
  add_common(sweep);
  add_common(converge);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (verify->parsed()) return run_verify(cli);
    if (sweep->parsed()) return run_sweep(cli);
    if (converge->parsed()) return run_converge(cli);
    return 64;
  } catch (const diraclab::ConfigParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const diraclab::ConfigSchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const diraclab::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const diraclab::DegenerateInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
