#include "parab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace parab {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& raw, const std::string& where) {
  const std::string s = trim(raw);
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::runtime_error("config: malformed number '" + raw + "' at " + where);
  return v;
}

}  // namespace

IniFile IniFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

IniFile IniFile::parse_string(const std::string& text, const std::string& origin) {
  IniFile ini;
  ini.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config: malformed section at " + origin + ":" +
                                 std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key = value at " + origin + ":" +
                               std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    ini.sections_[section][key] = value;
  }
  return ini;
}

void IniFile::missing(const std::string& section, const std::string& key) const {
  throw std::runtime_error("config: missing field [" + section + "] " + key + " in " + origin_);
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  const auto sit = sections_.find(section);
  return sit != sections_.end() && sit->second.count(key) > 0;
}

std::string IniFile::get_string(const std::string& section, const std::string& key) const {
  if (!has(section, key)) missing(section, key);
  return sections_.at(section).at(key);
}

std::string IniFile::get_string_or(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
  return has(section, key) ? sections_.at(section).at(key) : fallback;
}

double IniFile::get_double(const std::string& section, const std::string& key) const {
  return parse_double(get_string(section, key), "[" + section + "] " + key);
}

double IniFile::get_double_or(const std::string& section, const std::string& key,
                              double fallback) const {
  if (!has(section, key)) return fallback;
  return parse_double(sections_.at(section).at(key), "[" + section + "] " + key);
}

long IniFile::get_int_or(const std::string& section, const std::string& key, long fallback) const {
  if (!has(section, key)) return fallback;
  return static_cast<long>(parse_double(sections_.at(section).at(key),
                                        "[" + section + "] " + key));
}

bool IniFile::get_bool_or(const std::string& section, const std::string& key,
                          bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = sections_.at(section).at(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::runtime_error("config: malformed bool [" + section + "] " + key);
}

std::vector<std::string> IniFile::get_list_or(const std::string& section,
                                              const std::string& key) const {
  std::vector<std::string> out;
  if (!has(section, key)) return out;
  std::istringstream ss(sections_.at(section).at(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> IniFile::get_double_list_or(const std::string& section,
                                                const std::string& key) const {
  std::vector<double> out;
  for (const auto& s : get_list_or(section, key))
    out.push_back(parse_double(s, "[" + section + "] " + key));
  return out;
}

OperatorSpec ScenarioConfig::make_operator() const {
  if (operator_kind == "grad_trace_minus_infinity")
    return OperatorSpec::grad_trace_minus_infinity(p, n);
  if (operator_kind == "truncated_eigen_sum") return OperatorSpec::truncated_eigen_sum(p, m, n);
  if (operator_kind == "middle_eigenvalue") return OperatorSpec::middle_eigenvalue(n);
  throw std::runtime_error("config: unknown operator kind '" + operator_kind + "'");
}

ChiSpec ScenarioConfig::make_chi() const {
  if (chi_profile == "zero") return ChiSpec::zero(T);
  if (chi_profile == "const") return ChiSpec::constant(chi_value, T);
  if (chi_profile == "sin") return ChiSpec::sine(chi_value, T);
  throw std::runtime_error("config: unknown chi profile '" + chi_profile + "'");
}

ZSpec ScenarioConfig::make_z() const {
  if (z_kind == "zero") {
    ZSpec z = ZSpec::zero();
    z.domain_min = z_domain_min;
    return z;
  }
  if (z_kind == "zero_above") return ZSpec::zero_above(z_s0, z_domain_min);
  if (z_kind == "power_decay") return ZSpec::power_decay(z_domain_min);
  throw std::runtime_error("config: unknown Z kind '" + z_kind + "'");
}

ScenarioConfig ScenarioConfig::defaults() { return ScenarioConfig{}; }

ScenarioConfig ScenarioConfig::from_ini(const IniFile& ini) {
  ScenarioConfig cfg;
  cfg.operator_kind = ini.get_string_or("operator", "kind", cfg.operator_kind);
  cfg.p = ini.get_double_or("operator", "p", cfg.p);
  cfg.m = static_cast<int>(ini.get_int_or("operator", "m", cfg.m));
  cfg.n = static_cast<int>(ini.get_int_or("operator", "n", cfg.n));

  if (ini.has("problem", "sigma_sweep"))
    cfg.sigma_sweep = ini.get_double_list_or("problem", "sigma_sweep");
  else if (ini.has("problem", "sigma"))
    cfg.sigma_sweep = {ini.get_double("problem", "sigma")};
  cfg.T = ini.get_double_or("problem", "T", cfg.T);
  cfg.alpha = ini.get_double_or("problem", "alpha", cfg.alpha);
  cfg.chi_profile = ini.get_string_or("problem", "chi_profile", cfg.chi_profile);
  cfg.chi_value = ini.get_double_or("problem", "chi_value", cfg.alpha);
  cfg.z_kind = ini.get_string_or("problem", "Z", cfg.z_kind);
  cfg.z_s0 = ini.get_double_or("problem", "Z_s0", cfg.z_s0);
  if (ini.has("problem", "Z_domain_min"))
    cfg.z_domain_min = ini.get_double("problem", "Z_domain_min");

  cfg.directions = ini.get_list_or("run", "directions");
  if (cfg.directions.empty()) cfg.directions = {"super", "sub"};
  cfg.cases = ini.get_list_or("run", "cases");
  cfg.sampler = ini.get_string_or("run", "sampler", cfg.sampler);
  cfg.n_samples = static_cast<std::size_t>(ini.get_int_or("run", "n_samples",
                                                          static_cast<long>(cfg.n_samples)));
  cfg.slack = ini.get_double_or("run", "slack", cfg.slack);
  cfg.r_probe = ini.get_double_or("run", "R_probe", cfg.r_probe);
  cfg.seed = static_cast<std::uint64_t>(ini.get_int_or("run", "seed",
                                                       static_cast<long>(cfg.seed)));
  cfg.b_fraction = ini.get_double_or("run", "b_fraction", cfg.b_fraction);

  cfg.special.cases = ini.get_list_or("special", "cases");
  cfg.special.R = ini.get_double_or("special", "R", cfg.special.R);
  cfg.special.mu = ini.get_double_or("special", "mu", cfg.special.mu);
  cfg.special.gaussian_E = ini.get_double_or("special", "E", cfg.special.gaussian_E);
  cfg.special.chi_hat = ini.get_double_or("special", "chi_hat", cfg.special.chi_hat);

  cfg.sim.enabled = ini.has("sim", "R") || ini.has("sim", "R_list");
  cfg.sim.R = ini.get_double_or("sim", "R", cfg.sim.R);
  cfg.sim.h = ini.get_double_or("sim", "h", cfg.sim.h);
  cfg.sim.dt = ini.get_double_or("sim", "dt", cfg.sim.dt);
  cfg.sim.cfl_safety = ini.get_double_or("sim", "cfl_safety", cfg.sim.cfl_safety);
  cfg.sim.t_end = ini.get_double_or("sim", "t_end", cfg.T);
  cfg.sim.growth_beta = ini.get_double_or("sim", "growth_beta", cfg.sim.growth_beta);
  cfg.sim.R_list = ini.get_double_list_or("sim", "R_list");
  cfg.sim.nu = ini.get_double_or("sim", "nu", cfg.sim.nu);

  cfg.transform.enabled = ini.has("transform", "f");
  cfg.transform.f_spec = ini.get_string_or("transform", "f", cfg.transform.f_spec);
  cfg.transform.k = ini.get_double_or("transform", "k", cfg.transform.k);
  cfg.transform.classify_only = ini.get_bool_or("transform", "classify_only", false);

  cfg.output_dir = ini.get_string_or("output", "dir", cfg.output_dir);
  cfg.validate();
  return cfg;
}

void ScenarioConfig::validate() const {
  static const char* known_cases[] = {"I.i",    "I.ii",    "I.iii",   "I.iv",    "II.a",
                                      "II.b",   "II.iii",  "II.iv",   "V.I",     "V.II",
                                      "VI.i-1", "VI.i-2",  "VI.ii-1", "VI.ii-2", "VI.iii"};
  auto known = [&](const std::string& id) {
    return std::any_of(std::begin(known_cases), std::end(known_cases),
                       [&](const char* c) { return id == c; });
  };
  for (const auto& id : cases)
    if (!known(id)) throw std::runtime_error("config: unknown case id '" + id + "' in [run] cases");
  for (const auto& id : special.cases)
    if (!known(id) || id.rfind("VI.", 0) != 0)
      throw std::runtime_error("config: unknown special case id '" + id + "' in [special] cases");
  for (const auto& d : directions)
    if (d != "super" && d != "sub")
      throw std::runtime_error("config: [run] directions entries must be super|sub");
  if (sampler != "grid" && sampler != "low_discrepancy")
    throw std::runtime_error("config: [run] sampler must be grid|low_discrepancy");

  // sup |chi| of the declared profile must equal alpha.
  const double sup_abs = make_chi().sup_abs();
  if (std::abs(sup_abs - alpha) > 1e-12)
    throw std::runtime_error("config: [problem] alpha = " + std::to_string(alpha) +
                             " inconsistent with chi profile sup|chi| = " +
                             std::to_string(sup_abs));
  if (!(std::isfinite(z_domain_min) || z_domain_min == -std::numeric_limits<double>::infinity()))
    throw std::runtime_error("config: malformed Z domain: [problem] Z_domain_min");
  for (double s : sigma_sweep)
    if (!(s >= 0.0)) throw std::runtime_error("config: [problem] sigma entries must be >= 0");
}

}  // namespace parab
