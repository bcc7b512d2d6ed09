// Command-line front end: barrier potential curves, T/R scans and the
// analytic-vs-oracle verification report.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dengfan/cli/commands.hpp"
#include "dengfan/errors.hpp"

namespace {

using namespace dengfan;
using namespace dengfan::cli;

struct Flags {
  std::vector<double> v0;
  std::optional<double> a, xe, q_tilde, mass, emin, emax, xmin, xmax, oracle_step;
  std::vector<double> q;
  std::optional<int> n;
  std::optional<std::size_t> workers;
  std::optional<MatchingMode> mode;
  std::optional<OutputFormat> format;
  std::optional<EnergyGrid> grid;
  std::optional<IntegratorMethod> oracle_method;
  bool oracle = false;
  bool relative = false;
  bool table1 = false, fig3 = false, fig4 = false;
  std::string config_path;
  std::string out_dir;
};

void add_options(CLI::App* sub, Flags& f) {
  sub->add_option("--v0", f.v0, "dissociation energy; comma list sweeps V0")->delimiter(',');
  sub->add_option("--a", f.a, "inverse range a");
  sub->add_option("--xe", f.xe, "equilibrium distance x_e");
  sub->add_option("--q", f.q, "deformation q; comma list sweeps q = q~")->delimiter(',');
  sub->add_option("--q-tilde", f.q_tilde, "deformation q~ for x > 0");
  sub->add_option("--mass", f.mass, "particle mass");
  sub->add_option("--emin", f.emin, "lowest energy (units of V_max with --relative)");
  sub->add_option("--emax", f.emax, "highest energy (units of V_max with --relative)");
  sub->add_option("--n", f.n, "number of grid points");
  sub->add_option("--grid", f.grid, "energy grid spacing")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, EnergyGrid>{{"linear", EnergyGrid::Linear}, {"log", EnergyGrid::Log}}));
  sub->add_flag("--relative", f.relative, "energies are given in units of V_max");
  sub->add_option("--xmin", f.xmin, "potential sampling start (default -10/a)");
  sub->add_option("--xmax", f.xmax, "potential sampling end (default 10/a)");
  sub->add_option("--mode", f.mode, "matching mode")
      ->transform(CLI::CheckedTransformer(std::map<std::string, MatchingMode>{
          {"corrected", MatchingMode::CorrectedMatching}, {"paper", MatchingMode::PaperLiteral}}));
  sub->add_flag("--oracle", f.oracle, "also run the ODE oracle");
  sub->add_option("--oracle-step", f.oracle_step, "override the oracle step");
  sub->add_option("--oracle-method", f.oracle_method, "oracle integrator")
      ->transform(CLI::CheckedTransformer(std::map<std::string, IntegratorMethod>{
          {"rk4", IntegratorMethod::RK4}, {"numerov", IntegratorMethod::Numerov}}));
  sub->add_option("--format", f.format, "output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, OutputFormat>{
          {"csv", OutputFormat::CSV}, {"json", OutputFormat::JSON}}));
  sub->add_option("--config", f.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* t1 = sub->add_flag("--table1", f.table1, "reference-table preset");
  auto* f3 = sub->add_flag("--fig3", f.fig3, "E/V_max up to 5 preset");
  auto* f4 = sub->add_flag("--fig4", f.fig4, "low-energy V0 sweep preset");
  t1->excludes(f3)->excludes(f4);
  f3->excludes(f4);
  sub->add_option("--workers", f.workers, "worker threads (0 = all cores)");
  sub->add_option("--out-dir", f.out_dir, "write each output document into this directory");
}

// defaults < config file < preset < flags
RunConfig build_config(const Flags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) cfg = load_config_file(f.config_path);
  if (f.table1) apply_preset(cfg, Preset::Table1);
  if (f.fig3) apply_preset(cfg, Preset::Fig3);
  if (f.fig4) apply_preset(cfg, Preset::Fig4);

  if (f.v0.size() == 1) {
    cfg.params.v0 = f.v0.front();
    cfg.v0_values.clear();
  } else if (f.v0.size() > 1) {
    cfg.v0_values = f.v0;
  }
  if (f.q.size() == 1) {
    cfg.params.q = f.q.front();
    cfg.q_values.clear();
  } else if (f.q.size() > 1) {
    cfg.q_values = f.q;
  }
  if (f.a) cfg.params.a = *f.a;
  if (f.xe) cfg.params.x_e = *f.xe;
  if (f.q_tilde) cfg.params.q_tilde = *f.q_tilde;
  if (f.mass) cfg.params.m = *f.mass;
  if (f.emin) cfg.e_min = *f.emin;
  if (f.emax) cfg.e_max = *f.emax;
  if (f.n) cfg.n_points = *f.n;
  if (f.grid) cfg.grid = *f.grid;
  if (f.relative) cfg.relative_energy = true;
  if (f.xmin) cfg.x_min = *f.xmin;
  if (f.xmax) cfg.x_max = *f.xmax;
  if (f.mode) cfg.mode = *f.mode;
  if (f.oracle) cfg.oracle_enabled = true;
  if (f.oracle_step) cfg.oracle_step = *f.oracle_step;
  if (f.oracle_method) cfg.oracle_method = *f.oracle_method;
  if (f.format) cfg.output_format = *f.format;
  if (f.workers) cfg.workers = *f.workers;
  return cfg;
}

int emit(const CommandResult& result, const std::string& out_dir) {
  if (result.artifacts.size() == 1 && out_dir.empty()) {
    std::cout << result.artifacts.front().content;
  } else {
    const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
    std::filesystem::create_directories(dir);
    for (const auto& art : result.artifacts) {
      std::ofstream out(dir / art.name, std::ios::binary);
      out << art.content;
      if (!out) {
        std::cerr << "error: cannot write " << (dir / art.name).string() << '\n';
        return kExitNumerical;
      }
      std::cerr << "wrote " << (dir / art.name).string() << '\n';
    }
  }
  std::cerr << result.diagnostics;
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reflection and transmission for the symmetric shifted Deng-Fan barrier"};
  app.require_subcommand(1);
  Flags flags;
  auto* potential_cmd = app.add_subcommand("potential", "tabulate V(x)");
  auto* scatter_cmd = app.add_subcommand("scatter", "tabulate T(E), R(E)");
  auto* verify_cmd = app.add_subcommand("verify", "compare analytic T, R with the ODE oracle");
  for (auto* sub : {potential_cmd, scatter_cmd, verify_cmd}) add_options(sub, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  RunConfig cfg;
  CommandResult result;
  try {
    cfg = build_config(flags);
    if (potential_cmd->parsed()) {
      result = cmd_potential(cfg);
    } else if (scatter_cmd->parsed()) {
      result = cmd_scatter(cfg);
    } else {
      result = cmd_verify(cfg);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidParameter ? kExitUsage : kExitNumerical;
  }
  return emit(result, flags.out_dir);
}
