#include "dengfan/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "dengfan/errors.hpp"
#include "dengfan/oracle.hpp"
#include "dengfan/parallel.hpp"
#include "dengfan/reference_table.hpp"
#include "dengfan/scattering.hpp"

namespace dengfan::cli {

namespace {

using nlohmann::json;

struct OraclePoint {
  std::optional<OracleResult> result;
  std::string error;
};

struct CurveRun {
  Curve curve;
  double v_max = 0.0;
  std::vector<ScanEntry> analytic;
  std::vector<OraclePoint> oracle;  // empty unless the oracle ran
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

std::string artifact_name(const std::string& stem, const Curve& c, OutputFormat fmt) {
  return stem + (c.label.empty() ? "" : "_" + c.label) +
         (fmt == OutputFormat::CSV ? ".csv" : ".json");
}

// The config echo for one curve: sweeps collapsed into its params, so the
// echo reloads to exactly this curve.
json curve_config(const RunConfig& cfg, const Curve& c) {
  RunConfig single = cfg;
  single.params = c.params;
  single.v0_values.clear();
  single.q_values.clear();
  return to_json(single);
}

CurveRun run_curve(const RunConfig& cfg, const Curve& curve, bool with_oracle) {
  CurveRun run{curve, derived_shape(curve.params).v_max, {}, {}};
  const auto energies = energy_grid(cfg, curve.params);
  run.analytic = scan(energies, curve.params, cfg.mode, cfg.workers);
  if (!with_oracle) return run;

  run.oracle.resize(energies.size());
  parallel_for(energies.size(), cfg.workers, [&](std::size_t i) {
    try {
      IntegrationConfig ic = default_integration_config(energies[i], curve.params);
      if (cfg.oracle_step) ic.step = *cfg.oracle_step;
      ic.method = cfg.oracle_method;
      run.oracle[i].result = oracle_scatter(energies[i], curve.params, ic);
    } catch (const Error& e) {
      run.oracle[i].error = e.what();
    }
  });
  return run;
}

std::string point_error(const CurveRun& run, std::size_t i) {
  std::string err = run.analytic[i].error;
  if (!run.oracle.empty() && !run.oracle[i].error.empty()) {
    err += (err.empty() ? "" : "; ") + std::string("oracle: ") + run.oracle[i].error;
  }
  return err;
}

bool curve_failed(const CurveRun& run) {
  for (std::size_t i = 0; i < run.analytic.size(); ++i) {
    if (!point_error(run, i).empty()) return true;
  }
  return false;
}

std::string scatter_csv(const CurveRun& run) {
  const bool oracle = !run.oracle.empty();
  const bool errors = curve_failed(run);
  std::string out = kScatterHeader;
  if (oracle) out += kScatterOracleHeader;
  if (errors) out += ",error";
  out += '\n';
  for (std::size_t i = 0; i < run.analytic.size(); ++i) {
    const auto& e = run.analytic[i];
    out += format_number(e.energy) + ',' + format_number(e.energy / run.v_max);
    if (e.result) {
      out += ',' + format_number(e.result->T) + ',' + format_number(e.result->R) + ',' +
             format_number(e.result->unitarity_residual);
    } else {
      out += ",,,";
    }
    if (oracle) {
      const auto& o = run.oracle[i].result;
      if (o) {
        out += ',' + format_number(o->T) + ',' + format_number(o->R) + ',' +
               (e.result ? format_number(std::abs(e.result->T - o->T)) : std::string());
      } else {
        out += ",,,";
      }
    }
    if (errors) out += ',' + csv_escape(point_error(run, i));
    out += '\n';
  }
  return out;
}

json scatter_json(const RunConfig& cfg, const CurveRun& run) {
  json rows = json::array();
  for (std::size_t i = 0; i < run.analytic.size(); ++i) {
    const auto& e = run.analytic[i];
    json row = {{"E", e.energy}, {"E_over_Vmax", e.energy / run.v_max}};
    if (e.result) {
      row["T"] = e.result->T;
      row["R"] = e.result->R;
      row["unitarity_residual"] = e.result->unitarity_residual;
    }
    if (!run.oracle.empty() && run.oracle[i].result) {
      const auto& o = *run.oracle[i].result;
      row["T_oracle"] = o.T;
      row["R_oracle"] = o.R;
      if (e.result) row["delta_T"] = std::abs(e.result->T - o.T);
    }
    const std::string err = point_error(run, i);
    if (!err.empty()) row["error"] = err;
    rows.push_back(std::move(row));
  }
  return json{{"config", curve_config(cfg, run.curve)}, {"v_max", run.v_max}, {"rows", rows}};
}

std::string peak_summary(const CurveRun& run) {
  const ScatteringResult* best = nullptr;
  for (const auto& e : run.analytic) {
    if (e.result && (!best || e.result->T > best->T)) best = &*e.result;
  }
  if (!best) return {};
  return fmt::format("{}max T = {} at E = {} (E/V_max = {}), V_max = {}\n",
                     run.curve.label.empty() ? "" : run.curve.label + ": ",
                     format_number(best->T), format_number(best->energy),
                     format_number(best->energy / run.v_max), format_number(run.v_max));
}

}  // namespace

std::string format_number(double v) { return fmt::format("{:.9g}", v); }

CommandResult cmd_potential(const RunConfig& cfg) {
  cfg.validate_potential();
  CommandResult result;
  for (const auto& curve : curves(cfg)) {
    const double lo = cfg.x_min.value_or(-10.0 / curve.params.a);
    const double hi = cfg.x_max.value_or(10.0 / curve.params.a);
    const auto n = static_cast<std::size_t>(cfg.n_points);

    std::string csv = "x,V\n";
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      const double x = n == 1 ? lo
                              : (i + 1 == n ? hi
                                            : lo + (hi - lo) * static_cast<double>(i) /
                                                       static_cast<double>(n - 1));
      const double v = potential(x, curve.params);
      csv += format_number(x) + ',' + format_number(v) + '\n';
      rows.push_back(json{{"x", x}, {"V", v}});
    }
    Artifact art{artifact_name("potential", curve, cfg.output_format), {}};
    if (cfg.output_format == OutputFormat::CSV) {
      art.content = std::move(csv);
    } else {
      art.content = json{{"config", curve_config(cfg, curve)},
                         {"v_max", derived_shape(curve.params).v_max},
                         {"rows", rows}}
                        .dump(2) +
                    '\n';
    }
    result.artifacts.push_back(std::move(art));
  }
  return result;
}

CommandResult cmd_scatter(const RunConfig& cfg) {
  cfg.validate_scan();
  CommandResult result;
  for (const auto& curve : curves(cfg)) {
    const CurveRun run = run_curve(cfg, curve, cfg.oracle_enabled);
    if (curve_failed(run)) result.exit_code = kExitNumerical;
    Artifact art{artifact_name("scatter", curve, cfg.output_format), {}};
    art.content = cfg.output_format == OutputFormat::CSV ? scatter_csv(run)
                                                         : scatter_json(cfg, run).dump(2) + '\n';
    result.artifacts.push_back(std::move(art));
    result.diagnostics += peak_summary(run);
  }
  return result;
}

ReferenceCheck check_reference_table(MatchingMode mode) {
  ReferenceCheck check;
  check.mode = mode;
  try {
    for (const auto& row : kReferenceTable) {
      const auto r = scatter(row.energy, kReferenceParams, mode);
      check.max_dT = std::max(check.max_dT, std::abs(r.T - row.T));
      check.max_dR = std::max(check.max_dR, std::abs(r.R - row.R));
    }
    check.reproduces = check.max_dT <= kReferenceTol && check.max_dR <= kReferenceTol;
  } catch (const Error& e) {
    check.failure = e.what();
    check.reproduces = false;
  }
  return check;
}

CommandResult cmd_verify(const RunConfig& cfg) {
  cfg.validate_scan();
  CommandResult result;
  std::string report = fmt::format("verify: {} matching vs {} oracle\n", to_string(cfg.mode),
                                   cfg.oracle_method == IntegratorMethod::RK4 ? "rk4" : "numerov");
  json curves_json = json::array();
  bool pass = true;

  for (const auto& curve : curves(cfg)) {
    const CurveRun run = run_curve(cfg, curve, true);
    double max_dT = 0.0, max_dR = 0.0, max_unit = 0.0;
    std::vector<std::string> offending;
    for (std::size_t i = 0; i < run.analytic.size(); ++i) {
      const auto& a = run.analytic[i];
      const auto& o = run.oracle[i];
      if (!a.result || !o.result) {
        offending.push_back(fmt::format("E={} ({})", format_number(a.energy), point_error(run, i)));
        continue;
      }
      const double dT = std::abs(a.result->T - o.result->T);
      const double dR = std::abs(a.result->R - o.result->R);
      const double unit = a.result->unitarity_residual;
      max_dT = std::max(max_dT, dT);
      max_dR = std::max(max_dR, dR);
      max_unit = std::max(max_unit, unit);
      if (dT > kVerifyTolT || dR > kVerifyTolR || unit > kVerifyTolUnitarity) {
        offending.push_back(fmt::format("E={} (|dT|={}, |dR|={}, unitarity={})",
                                        format_number(a.energy), format_number(dT),
                                        format_number(dR), format_number(unit)));
      }
    }
    const bool ok = offending.empty();
    pass = pass && ok;

    report += fmt::format("curve {}: {} points, V_max = {}\n",
                          curve.label.empty() ? "default" : curve.label, run.analytic.size(),
                          format_number(run.v_max));
    report += fmt::format("  max |dT| = {} (tol {:g})\n", format_number(max_dT), kVerifyTolT);
    report += fmt::format("  max |dR| = {} (tol {:g})\n", format_number(max_dR), kVerifyTolR);
    report += fmt::format("  max unitarity residual = {} (tol {:g})\n", format_number(max_unit),
                          kVerifyTolUnitarity);
    for (const auto& o : offending) report += "  FAIL " + o + '\n';

    curves_json.push_back(json{{"label", curve.label},
                               {"config", curve_config(cfg, curve)},
                               {"max_delta_T", max_dT},
                               {"max_delta_R", max_dR},
                               {"max_unitarity_residual", max_unit},
                               {"offending", offending},
                               {"pass", ok}});
  }

  report += fmt::format("reference table (V0=1.25, a=x_e=q=q~=0.8, m=1), tol {:g}:\n",
                        kReferenceTol);
  json ref_json = json::array();
  for (MatchingMode mode : {MatchingMode::CorrectedMatching, MatchingMode::PaperLiteral}) {
    const auto check = check_reference_table(mode);
    if (!check.failure.empty()) {
      report += fmt::format("  {}: does not reproduce ({})\n", to_string(mode), check.failure);
    } else {
      report += fmt::format("  {}: {} (max |dT| = {}, max |dR| = {})\n", to_string(mode),
                            check.reproduces ? "reproduces" : "does not reproduce",
                            format_number(check.max_dT), format_number(check.max_dR));
    }
    ref_json.push_back(json{{"mode", to_string(mode)},
                            {"reproduces", check.reproduces},
                            {"max_delta_T", check.max_dT},
                            {"max_delta_R", check.max_dR},
                            {"failure", check.failure}});
  }
  report += fmt::format("result: {}\n", pass ? "PASS" : "FAIL");
  result.exit_code = pass ? kExitOk : kExitNumerical;

  if (cfg.output_format == OutputFormat::CSV) {
    result.artifacts.push_back({"verify.txt", report});
  } else {
    json doc = {{"config", to_json(cfg)},
                {"curves", curves_json},
                {"reference_table", ref_json},
                {"pass", pass}};
    result.artifacts.push_back({"verify.json", doc.dump(2) + '\n'});
  }
  return result;
}

}  // namespace dengfan::cli
