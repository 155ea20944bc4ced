#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace risopt {

/// dBm -> watts.
double dbm_to_watts(double dbm);
/// dB ratio -> linear ratio.
double db_to_linear(double db);

/// Flat "section.key = value" text config. Lines starting with '#' are
/// comments; values are scalars or comma-separated lists.
class ConfigMap {
 public:
  static ConfigMap parse_file(const std::string& path);
  static ConfigMap parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<std::string> get_string_list(const std::string& key) const;

  double get_double_or(const std::string& key, double fallback) const;
  std::int64_t get_int_or(const std::string& key, std::int64_t fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;
  std::string get_string_or(const std::string& key,
                            const std::string& fallback) const;

  const std::map<std::string, std::string>& entries() const { return map_; }

 private:
  std::map<std::string, std::string> map_;
};

/// Large-scale fading of one link: kappa = 10^(c_db/10) * distance^(-rho)
/// scales the line-of-sight component.
struct PathlossParams {
  double c_db = 0.0;
  double rho = 0.0;
  double distance = 1.0;
  double kappa() const;
};

/// Penalty / stopping knobs shared by both ADMM drivers.
struct AdmmParams {
  double eps = 1e-5;    ///< residual stopping threshold
  int k_max = 100;      ///< iteration cap
  double rho0 = 1e-4;   ///< initial penalty (single-penalty driver)
  double delta = 1.01;  ///< penalty growth factor (single-penalty driver)
  double rho1_0 = 0.01;  ///< initial x-y penalty (two-penalty driver)
  double rho2_0 = 0.01;  ///< initial z-consensus penalty (two-penalty driver)
  double delta1 = 5.0;
  double delta2 = 5.0;
  bool random_init = false;  ///< randomize y0 and the multipliers
  void validate() const;
};

/// One experiment scenario: dimensions, powers, channel statistics, seed.
struct ScenarioConfig {
  int m = 4;  ///< transmit antennas
  int n = 16; ///< reflecting elements
  double p_t = 2.0;        ///< total transmit power budget (watts)
  double sigma2_1 = 1e-11; ///< user-1 noise power (watts)
  double sigma2_2 = 1e-11; ///< user-2 noise power (watts)

  double beta_br_db = 3.0;  ///< Rician factor, base-to-surface link
  double beta_bu_db = 3.0;  ///< Rician factor, direct links
  double beta_ru_db = 3.0;  ///< Rician factor, surface-to-user links

  bool use_pathloss = false;
  PathlossParams pl_br, pl_bu1, pl_bu2, pl_ru1, pl_ru2;

  std::uint64_t seed = 1;
  AdmmParams admm;

  void validate() const;
  static ScenarioConfig from_config(const ConfigMap& cfg);
};

}  // namespace risopt
