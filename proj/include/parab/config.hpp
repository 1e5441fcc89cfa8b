#ifndef PARAB_CONFIG_HPP
#define PARAB_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parab/problem.hpp"

namespace parab {

// Minimal INI-style file: [section] headers, key = value lines, # or ;
// comments. Values are decimal (std::from_chars, no locale dependence).
class IniFile {
 public:
  static IniFile parse_file(const std::string& path);
  static IniFile parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key, double fallback) const;
  long get_int_or(const std::string& section, const std::string& key, long fallback) const;
  bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<std::string> get_list_or(const std::string& section, const std::string& key) const;
  std::vector<double> get_double_list_or(const std::string& section, const std::string& key) const;

 private:
  [[noreturn]] void missing(const std::string& section, const std::string& key) const;
  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::string origin_;
};

struct SpecialBlock {
  std::vector<std::string> cases;  // VI.* ids requested
  double R = 10.0;
  double mu = 1.0;
  double gaussian_E = 0.1;
  double chi_hat = 1.0;  // magnitude of the one-signed chi for VI.ii / VI.iii
};

struct SimBlock {
  bool enabled = false;
  double R = 10.0;
  double h = 0.1;
  double dt = 1e-3;
  double cfl_safety = 0.5;
  double t_end = 1.0;
  double growth_beta = 2.0;
  std::vector<double> R_list;
  double nu = 1.0;
};

struct TransformBlock {
  bool enabled = false;
  std::string f_spec = "power:1,0";  // power:alpha,a
  double k = 3.0;
  bool classify_only = false;
};

struct ScenarioConfig {
  // operator block
  std::string operator_kind = "grad_trace_minus_infinity";
  double p = 0.0;
  int m = 2;
  int n = 2;
  // problem block
  std::vector<double> sigma_sweep{0.0};
  double T = 1.0;
  double alpha = 1.0;
  std::string chi_profile = "const";  // const | sin | zero
  double chi_value = 1.0;
  std::string z_kind = "zero_above";  // zero | zero_above | power_decay
  double z_s0 = 1.0;
  double z_domain_min = -std::numeric_limits<double>::infinity();
  // run block
  std::vector<std::string> directions{"super", "sub"};
  std::vector<std::string> cases;  // empty = all dispatched
  std::string sampler = "low_discrepancy";
  std::size_t n_samples = 20000;
  double slack = 1e-9;
  double r_probe = 50.0;
  std::uint64_t seed = 42;
  double b_fraction = 0.5;  // b used = fraction of the admissibility bound
  SpecialBlock special;
  SimBlock sim;
  TransformBlock transform;
  std::string output_dir = "out";

  OperatorSpec make_operator() const;
  ChiSpec make_chi() const;
  ZSpec make_z() const;
  static ScenarioConfig from_ini(const IniFile& ini);
  static ScenarioConfig defaults();
  void validate() const;
};

}  // namespace parab

#endif
