#include "dengfan/cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "dengfan/errors.hpp"
#include "dengfan/reference_table.hpp"

namespace dengfan::cli {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidParameter, what);
}

template <typename Enum>
struct EnumName {
  Enum value;
  const char* name;
};

constexpr EnumName<MatchingMode> kModes[] = {{MatchingMode::CorrectedMatching, "corrected"},
                                             {MatchingMode::PaperLiteral, "paper"}};
constexpr EnumName<OutputFormat> kFormats[] = {{OutputFormat::CSV, "csv"},
                                               {OutputFormat::JSON, "json"}};
constexpr EnumName<EnergyGrid> kGrids[] = {{EnergyGrid::Linear, "linear"},
                                           {EnergyGrid::Log, "log"}};
constexpr EnumName<IntegratorMethod> kMethods[] = {{IntegratorMethod::RK4, "rk4"},
                                                   {IntegratorMethod::Numerov, "numerov"}};

template <typename Enum, std::size_t N>
const char* name_of(const EnumName<Enum> (&table)[N], Enum v) {
  for (const auto& e : table) {
    if (e.value == v) return e.name;
  }
  return "?";
}

template <typename Enum, std::size_t N>
Enum parse_enum(const EnumName<Enum> (&table)[N], const std::string& s, const char* key) {
  for (const auto& e : table) {
    if (s == e.name) return e.value;
  }
  invalid(fmt::format("unknown value '{}' for '{}'", s, key));
}

std::optional<double> optional_number(const json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

BarrierParams params_from_json(const json& j, BarrierParams p) {
  static const std::set<std::string> known = {"v0", "a", "x_e", "q", "q_tilde", "m"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) invalid(fmt::format("unknown params key '{}'", key));
  }
  if (j.contains("v0")) p.v0 = j.at("v0").get<double>();
  if (j.contains("a")) p.a = j.at("a").get<double>();
  if (j.contains("x_e")) p.x_e = j.at("x_e").get<double>();
  if (j.contains("q")) p.q = j.at("q").get<double>();
  if (j.contains("q_tilde")) p.q_tilde = j.at("q_tilde").get<double>();
  if (j.contains("m")) p.m = j.at("m").get<double>();
  return p;
}

std::string label_value(double v) { return fmt::format("{:g}", v); }

}  // namespace

void RunConfig::validate_scan() const {
  params.validate();
  if (!(e_min > 0.0) || !(e_min < e_max) || !std::isfinite(e_max)) {
    invalid("energy range needs 0 < e_min < e_max");
  }
  if (n_points < 1) invalid("n_points must be >= 1");
  if (oracle_step && !(*oracle_step > 0.0)) invalid("oracle_step must be > 0");
  for (const auto& c : curves(*this)) c.params.validate();
}

void RunConfig::validate_potential() const {
  params.validate();
  if (n_points < 1) invalid("n_points must be >= 1");
  if (x_min && x_max && !(*x_min <= *x_max)) invalid("x range needs x_min <= x_max");
  for (const auto& c : curves(*this)) c.params.validate();
}

void apply_preset(RunConfig& cfg, Preset preset) {
  cfg.params = kReferenceParams;
  cfg.v0_values.clear();
  cfg.q_values.clear();
  switch (preset) {
    case Preset::Table1:
      cfg.e_min = 0.005;
      cfg.e_max = 0.1;
      cfg.n_points = 20;
      cfg.grid = EnergyGrid::Linear;
      cfg.relative_energy = false;
      break;
    case Preset::Fig3:
      cfg.e_min = 0.0125;
      cfg.e_max = 5.0;
      cfg.n_points = 400;
      cfg.grid = EnergyGrid::Linear;
      cfg.relative_energy = true;
      break;
    case Preset::Fig4:
      // Log spacing down to 1e-7 V_max: the low-energy peaks are far
      // narrower than a linear 2000-point grid can see.
      cfg.v0_values = {1.15, 1.25, 1.35};
      cfg.e_min = 1e-7;
      cfg.e_max = 0.5;
      cfg.n_points = 2000;
      cfg.grid = EnergyGrid::Log;
      cfg.relative_energy = true;
      break;
  }
}

std::vector<Curve> curves(const RunConfig& cfg) {
  const std::vector<std::optional<double>> v0s =
      cfg.v0_values.empty() ? std::vector<std::optional<double>>{std::nullopt}
                            : std::vector<std::optional<double>>(cfg.v0_values.begin(),
                                                                 cfg.v0_values.end());
  const std::vector<std::optional<double>> qs =
      cfg.q_values.empty() ? std::vector<std::optional<double>>{std::nullopt}
                           : std::vector<std::optional<double>>(cfg.q_values.begin(),
                                                                cfg.q_values.end());
  std::vector<Curve> out;
  for (const auto& v0 : v0s) {
    for (const auto& q : qs) {
      Curve c{"", cfg.params};
      if (v0) {
        c.params.v0 = *v0;
        c.label = "v0-" + label_value(*v0);
      }
      if (q) {
        c.params.q = *q;
        c.params.q_tilde = *q;
        c.label += (c.label.empty() ? "" : "_") + std::string("q-") + label_value(*q);
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<double> energy_grid(const RunConfig& cfg, const BarrierParams& params) {
  const double scale = cfg.relative_energy ? derived_shape(params).v_max : 1.0;
  const auto n = static_cast<std::size_t>(cfg.n_points);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    const double e = cfg.grid == EnergyGrid::Linear
                         ? cfg.e_min + f * (cfg.e_max - cfg.e_min)
                         : cfg.e_min * std::pow(cfg.e_max / cfg.e_min, f);
    out[i] = (i + 1 == n && n > 1 ? cfg.e_max : e) * scale;
  }
  return out;
}

json to_json(const RunConfig& cfg) {
  const auto& p = cfg.params;
  return json{
      {"params",
       {{"v0", p.v0}, {"a", p.a}, {"x_e", p.x_e}, {"q", p.q}, {"q_tilde", p.q_tilde}, {"m", p.m}}},
      {"v0_values", cfg.v0_values},
      {"q_values", cfg.q_values},
      {"e_min", cfg.e_min},
      {"e_max", cfg.e_max},
      {"n_points", cfg.n_points},
      {"grid", name_of(kGrids, cfg.grid)},
      {"relative_energy", cfg.relative_energy},
      {"x_min", optional_to_json(cfg.x_min)},
      {"x_max", optional_to_json(cfg.x_max)},
      {"mode", name_of(kModes, cfg.mode)},
      {"output_format", name_of(kFormats, cfg.output_format)},
      {"oracle_enabled", cfg.oracle_enabled},
      {"oracle_step", optional_to_json(cfg.oracle_step)},
      {"oracle_method", name_of(kMethods, cfg.oracle_method)},
      {"workers", cfg.workers},
  };
}

RunConfig from_json(const json& doc, RunConfig cfg) {
  if (!doc.is_object()) invalid("config must be a JSON object");
  const json& j = doc.contains("config") ? doc.at("config") : doc;
  if (!j.is_object()) invalid("'config' must be a JSON object");

  static const std::set<std::string> known = {
      "params", "v0_values", "q_values", "e_min", "e_max", "n_points",
      "grid", "relative_energy", "x_min", "x_max", "mode", "output_format",
      "oracle_enabled", "oracle_step", "oracle_method", "workers"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) invalid(fmt::format("unknown config key '{}'", key));
  }

  try {
    if (j.contains("params")) cfg.params = params_from_json(j.at("params"), cfg.params);
    if (j.contains("v0_values")) cfg.v0_values = j.at("v0_values").get<std::vector<double>>();
    if (j.contains("q_values")) cfg.q_values = j.at("q_values").get<std::vector<double>>();
    if (j.contains("e_min")) cfg.e_min = j.at("e_min").get<double>();
    if (j.contains("e_max")) cfg.e_max = j.at("e_max").get<double>();
    if (j.contains("n_points")) cfg.n_points = j.at("n_points").get<int>();
    if (j.contains("grid")) cfg.grid = parse_enum(kGrids, j.at("grid").get<std::string>(), "grid");
    if (j.contains("relative_energy")) cfg.relative_energy = j.at("relative_energy").get<bool>();
    if (j.contains("x_min")) cfg.x_min = optional_number(j.at("x_min"));
    if (j.contains("x_max")) cfg.x_max = optional_number(j.at("x_max"));
    if (j.contains("mode")) cfg.mode = parse_enum(kModes, j.at("mode").get<std::string>(), "mode");
    if (j.contains("output_format")) {
      cfg.output_format =
          parse_enum(kFormats, j.at("output_format").get<std::string>(), "output_format");
    }
    if (j.contains("oracle_enabled")) cfg.oracle_enabled = j.at("oracle_enabled").get<bool>();
    if (j.contains("oracle_step")) cfg.oracle_step = optional_number(j.at("oracle_step"));
    if (j.contains("oracle_method")) {
      cfg.oracle_method =
          parse_enum(kMethods, j.at("oracle_method").get<std::string>(), "oracle_method");
    }
    if (j.contains("workers")) cfg.workers = j.at("workers").get<std::size_t>();
  } catch (const json::exception& e) {
    invalid(fmt::format("malformed config: {}", e.what()));
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) invalid(fmt::format("cannot open config file '{}'", path));
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    invalid(fmt::format("config file '{}' is not valid JSON: {}", path, e.what()));
  }
  return from_json(doc, std::move(base));
}

}  // namespace dengfan::cli
