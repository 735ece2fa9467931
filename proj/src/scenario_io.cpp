#include "taskgrowth/scenario_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

#include "json.hpp"

namespace taskgrowth {
namespace {

using FieldValue = std::variant<double, std::string, bool>;
using FieldMap = std::map<std::string, FieldValue>;

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Flat TOML subset: [section] headers, key = value, # comments. Values are
// quoted strings, booleans, or numbers; the bare token inf is kept as a string.
FieldMap parse_toml_flat(const std::string& text) {
  FieldMap out;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Strip comments outside quotes.
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ValidationError("line " + std::to_string(lineno), "malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("line " + std::to_string(lineno), "expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    const std::string path = section.empty() ? key : section + "." + key;
    if (key.empty() || raw.empty()) {
      throw ValidationError(path, "empty key or value");
    }
    if (raw.front() == '"') {
      if (raw.size() < 2 || raw.back() != '"') {
        throw ValidationError(path, "unterminated string");
      }
      out[path] = raw.substr(1, raw.size() - 2);
    } else if (raw == "true" || raw == "false") {
      out[path] = (raw == "true");
    } else if (raw == "inf") {
      out[path] = std::string("inf");
    } else {
      char* end = nullptr;
      const double v = std::strtod(raw.c_str(), &end);
      if (end != raw.c_str() + raw.size() || !std::isfinite(v)) {
        throw ValidationError(path, "not a number: '" + raw + "'");
      }
      out[path] = v;
    }
  }
  return out;
}

FieldMap flatten_json(const nlohmann::json& j) {
  FieldMap out;
  if (!j.is_object()) throw ValidationError("document", "expected a JSON object");
  for (const auto& [section, body] : j.items()) {
    if (!body.is_object()) throw ValidationError(section, "expected an object of fields");
    for (const auto& [key, value] : body.items()) {
      const std::string path = section + "." + key;
      if (value.is_number()) {
        out[path] = value.get<double>();
      } else if (value.is_string()) {
        out[path] = value.get<std::string>();
      } else if (value.is_boolean()) {
        out[path] = value.get<bool>();
      } else {
        throw ValidationError(path, "unsupported value type");
      }
    }
  }
  return out;
}

double require_number(const FieldMap& m, const std::string& path) {
  const auto it = m.find(path);
  if (it == m.end()) throw ValidationError(path, "missing required field");
  if (const double* v = std::get_if<double>(&it->second)) return *v;
  throw ValidationError(path, "expected a number");
}

double number_or(const FieldMap& m, const std::string& path, double fallback) {
  const auto it = m.find(path);
  if (it == m.end()) return fallback;
  if (const double* v = std::get_if<double>(&it->second)) return *v;
  throw ValidationError(path, "expected a number");
}

std::string require_string(const FieldMap& m, const std::string& path) {
  const auto it = m.find(path);
  if (it == m.end()) throw ValidationError(path, "missing required field");
  if (const std::string* v = std::get_if<std::string>(&it->second)) return *v;
  throw ValidationError(path, "expected a string");
}

AutomationCost require_cost(const FieldMap& m, const std::string& path) {
  const auto it = m.find(path);
  if (it == m.end()) throw ValidationError(path, "missing required field");
  if (const std::string* s = std::get_if<std::string>(&it->second)) {
    if (*s == "inf") return AutomationCost::infinite();
    throw ValidationError(path, "expected a positive number or \"inf\"");
  }
  const double v = std::get<double>(it->second);
  if (!(v > 0.0)) throw ValidationError(path, "automation cost must be positive");
  return AutomationCost::finite(v);
}

ScenarioFile build_scenario(const FieldMap& m) {
  ScenarioFile file;
  Scenario& sc = file.scenario;

  const std::string family = require_string(m, "production.family");
  if (family != "cobb-douglas" && family != "cobbdouglas" && family != "ces") {
    throw ValidationError("production.family", "must be \"cobb-douglas\" or \"ces\"");
  }
  const double beta = require_number(m, "production.beta");
  if (family == "cobb-douglas" || family == "cobbdouglas") {
    sc.production.family = CobbDouglas{beta};
    if (m.count("production.rho")) {
      throw ValidationError("production.rho", "rho is only valid for the ces family");
    }
  } else {
    sc.production.family = Ces{beta, require_number(m, "production.rho")};
  }
  sc.production.hicks_neutral = number_or(m, "production.A0", 1.0);
  sc.production.labor_augmenting = number_or(m, "production.AL0", 1.0);
  sc.g_hicks = number_or(m, "production.g_A", 0.0);
  sc.g_labor_aug = number_or(m, "production.g_AL", 0.0);

  sc.tasks.cognitive = {"cognitive", TaskClass::Cognitive, require_cost(m, "tasks.alpha_c")};
  sc.tasks.physical = {"physical", TaskClass::Physical, require_cost(m, "tasks.alpha_p")};

  sc.labor_supply = require_number(m, "labor.L0");
  sc.g_labor = number_or(m, "labor.g_L", 0.0);

  const std::string kind = require_string(m, "compute.kind");
  if (kind == "exponential") {
    sc.compute_path.kind =
        ExponentialPath{require_number(m, "compute.Q0"), require_number(m, "compute.g")};
  } else if (kind == "bounded") {
    sc.compute_path.kind =
        BoundedSaturatingPath{require_number(m, "compute.Q0"),
                              require_number(m, "compute.Qmax"),
                              require_number(m, "compute.rate")};
  } else {
    throw ValidationError("compute.kind", "must be \"exponential\" or \"bounded\"");
  }

  file.grid.t_start = require_number(m, "simulation.t_start");
  file.grid.t_end = require_number(m, "simulation.t_end");
  file.grid.t_step = require_number(m, "simulation.t_step");

  sc.validate();
  file.grid.validate();
  return file;
}

}  // namespace

void SimulationGrid::validate() const {
  if (!(t_start >= 0.0) || !std::isfinite(t_start)) {
    throw ValidationError("simulation.t_start", "must be nonnegative and finite");
  }
  if (!(t_end >= t_start) || !std::isfinite(t_end)) {
    throw ValidationError("simulation.t_end", "must satisfy t_end >= t_start");
  }
  if (!(t_step > 0.0) || !std::isfinite(t_step)) {
    throw ValidationError("simulation.t_step", "must be a positive real");
  }
}

std::vector<double> SimulationGrid::times() const {
  validate();
  std::vector<double> out;
  const auto n = static_cast<size_t>(std::floor((t_end - t_start) / t_step + 1e-9));
  out.reserve(n + 1);
  for (size_t i = 0; i <= n; ++i) out.push_back(t_start + t_step * static_cast<double>(i));
  return out;
}

ScenarioFile parse_scenario_toml(const std::string& text) {
  return build_scenario(parse_toml_flat(text));
}

ScenarioFile parse_scenario_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("document", std::string("invalid JSON: ") + e.what());
  }
  return build_scenario(flatten_json(j));
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("scenario", "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    return parse_scenario_json(text);
  }
  return parse_scenario_toml(text);
}

void apply_parameter(ScenarioFile& file, const std::string& path, double value) {
  Scenario& sc = file.scenario;
  const auto set_beta = [&](double b) {
    if (sc.production.is_cobb_douglas()) {
      sc.production.family = CobbDouglas{b};
    } else {
      sc.production.family = Ces{b, std::get<Ces>(sc.production.family).rho};
    }
  };
  if (path == "production.beta") {
    set_beta(value);
  } else if (path == "production.rho") {
    if (sc.production.is_cobb_douglas()) {
      throw ValidationError(path, "rho is only valid for the ces family");
    }
    sc.production.family = Ces{sc.production.beta(), value};
  } else if (path == "production.A0") {
    sc.production.hicks_neutral = value;
  } else if (path == "production.AL0") {
    sc.production.labor_augmenting = value;
  } else if (path == "production.g_A") {
    sc.g_hicks = value;
  } else if (path == "production.g_AL") {
    sc.g_labor_aug = value;
  } else if (path == "tasks.alpha_c") {
    sc.tasks.cognitive.cost = AutomationCost::finite(value);
  } else if (path == "tasks.alpha_p") {
    sc.tasks.physical.cost = AutomationCost::finite(value);
  } else if (path == "labor.L0") {
    sc.labor_supply = value;
  } else if (path == "labor.g_L") {
    sc.g_labor = value;
  } else if (path == "compute.Q0") {
    std::visit([&](auto& p) { p.q0 = value; }, sc.compute_path.kind);
  } else if (path == "compute.g") {
    if (auto* e = std::get_if<ExponentialPath>(&sc.compute_path.kind)) {
      e->growth = value;
    } else {
      throw ValidationError(path, "scenario does not use an exponential path");
    }
  } else if (path == "compute.Qmax") {
    if (auto* b = std::get_if<BoundedSaturatingPath>(&sc.compute_path.kind)) {
      b->q_max = value;
    } else {
      throw ValidationError(path, "scenario does not use a bounded path");
    }
  } else if (path == "compute.rate") {
    if (auto* b = std::get_if<BoundedSaturatingPath>(&sc.compute_path.kind)) {
      b->rate = value;
    } else {
      throw ValidationError(path, "scenario does not use a bounded path");
    }
  } else {
    throw ValidationError(path, "unknown parameter path");
  }
  sc.validate();
}

bool is_log_scale_parameter(const std::string& path) {
  return path == "tasks.alpha_c" || path == "tasks.alpha_p" ||
         path == "compute.Q0" || path == "compute.Qmax" || path == "labor.L0";
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& trajectory) {
  std::string out =
      "t,Q,Y,wage,rent,labor_share,compute_share,L_c,L_p,Q_c,Q_p,"
      "cog_automated,phys_automated\n";
  for (const auto& p : trajectory) {
    const auto& a = p.result.allocation;
    out += format_number(p.t) + ',' + format_number(p.q) + ',' +
           format_number(p.result.output) + ',' + format_number(p.result.wage) + ',' +
           format_number(p.result.rent) + ',' + format_number(p.result.labor_share) +
           ',' + format_number(p.result.compute_share) + ',' +
           format_number(a.labor_cognitive) + ',' + format_number(a.labor_physical) +
           ',' + format_number(a.compute_cognitive) + ',' +
           format_number(a.compute_physical) + ',' +
           (p.flags.cognitive_threshold ? "true" : "false") + ',' +
           (p.flags.physical_threshold ? "true" : "false") + '\n';
  }
  return out;
}

std::string trajectory_json(const std::vector<TrajectoryPoint>& trajectory) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& p : trajectory) {
    const auto& a = p.result.allocation;
    rows.push_back({{"t", p.t},
                    {"Q", p.q},
                    {"Y", p.result.output},
                    {"wage", p.result.wage},
                    {"rent", p.result.rent},
                    {"labor_share", p.result.labor_share},
                    {"compute_share", p.result.compute_share},
                    {"L_c", a.labor_cognitive},
                    {"L_p", a.labor_physical},
                    {"Q_c", a.compute_cognitive},
                    {"Q_p", a.compute_physical},
                    {"cog_automated", p.flags.cognitive_threshold},
                    {"phys_automated", p.flags.physical_threshold}});
  }
  return rows.dump(2) + "\n";
}

namespace {

std::string share_text(const AsymptoticVerdict& v) {
  return v.limiting_labor_share ? format_number(*v.limiting_labor_share)
                                : std::string("undetermined");
}

std::string time_text(const std::optional<double>& t) {
  return t ? format_number(*t) : std::string("not-reached");
}

}  // namespace

std::string sweep_csv(const std::string& param, const std::vector<SweepRow>& rows) {
  std::string out =
      "param,value,regime,asymptotic_labor_share,cognitive_automation_time,"
      "physical_automation_time\n";
  for (const auto& r : rows) {
    out += param + ',' + format_number(r.value) + ',' +
           (r.verdict.regime == Regime::FiniteCompute ? "finite" : "unbounded") + ',' +
           share_text(r.verdict) + ',' + time_text(r.cognitive_time) + ',' +
           time_text(r.physical_time) + '\n';
  }
  return out;
}

std::string sweep_json(const std::string& param, const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["param"] = param;
    row["value"] = r.value;
    row["regime"] = r.verdict.regime == Regime::FiniteCompute ? "finite" : "unbounded";
    if (r.verdict.limiting_labor_share) {
      row["asymptotic_labor_share"] = *r.verdict.limiting_labor_share;
    } else {
      row["asymptotic_labor_share"] = "undetermined";
    }
    if (r.cognitive_time) {
      row["cognitive_automation_time"] = *r.cognitive_time;
    } else {
      row["cognitive_automation_time"] = "not-reached";
    }
    if (r.physical_time) {
      row["physical_automation_time"] = *r.physical_time;
    } else {
      row["physical_automation_time"] = "not-reached";
    }
    out.push_back(row);
  }
  return out.dump(2) + "\n";
}

}  // namespace taskgrowth
