#include "risopt/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "risopt/errors.hpp"

namespace risopt {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigMap ConfigMap::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

ConfigMap ConfigMap::parse_string(const std::string& text) {
  ConfigMap out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    out.map_[key] = val;
  }
  return out;
}

bool ConfigMap::has(const std::string& key) const { return map_.count(key); }

std::string ConfigMap::get_string(const std::string& key) const {
  const auto it = map_.find(key);
  if (it == map_.end()) throw ConfigError("missing config key: " + key);
  return it->second;
}

double ConfigMap::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": not a number: " + v);
  }
}

std::int64_t ConfigMap::get_int(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    std::size_t pos = 0;
    const std::int64_t i = std::stoll(v, &pos, 10);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": not an integer: " + v);
  }
}

bool ConfigMap::get_bool(const std::string& key) const {
  std::string v = get_string(key);
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key " + key + ": not a boolean: " + v);
}

std::vector<double> ConfigMap::get_double_list(const std::string& key) const {
  std::vector<double> out;
  std::istringstream in(get_string(key));
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("config key " + key + ": bad list item: " + item);
    }
  }
  if (out.empty()) throw ConfigError("config key " + key + ": empty list");
  return out;
}

std::vector<std::string> ConfigMap::get_string_list(
    const std::string& key) const {
  std::vector<std::string> out;
  std::istringstream in(get_string(key));
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw ConfigError("config key " + key + ": empty list");
  return out;
}

double ConfigMap::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}
std::int64_t ConfigMap::get_int_or(const std::string& key,
                                   std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}
bool ConfigMap::get_bool_or(const std::string& key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}
std::string ConfigMap::get_string_or(const std::string& key,
                                     const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double PathlossParams::kappa() const {
  return db_to_linear(c_db) * std::pow(distance, -rho);
}

void AdmmParams::validate() const {
  if (eps < 0) throw ConfigError("admm.eps must be >= 0");
  if (k_max < 1) throw ConfigError("admm.k_max must be >= 1");
  if (rho0 <= 0 || rho1_0 <= 0 || rho2_0 <= 0)
    throw ConfigError("initial penalties must be > 0");
  if (delta <= 1 || delta1 <= 1 || delta2 <= 1)
    throw ConfigError("penalty growth factors must be > 1");
}

void ScenarioConfig::validate() const {
  if (m < 1) throw ConfigError("scenario.m must be >= 1");
  if (n < 1) throw ConfigError("scenario.n must be >= 1");
  if (p_t <= 0) throw ConfigError("scenario.p_t must be > 0");
  if (sigma2_1 <= 0 || sigma2_2 <= 0)
    throw ConfigError("noise powers must be > 0");
  if (use_pathloss) {
    for (const auto* pl : {&pl_br, &pl_bu1, &pl_bu2, &pl_ru1, &pl_ru2})
      if (pl->distance <= 0)
        throw ConfigError("pathloss distances must be > 0");
  }
  admm.validate();
}

ScenarioConfig ScenarioConfig::from_config(const ConfigMap& cfg) {
  ScenarioConfig sc;
  sc.m = static_cast<int>(cfg.get_int("scenario.m"));
  sc.n = static_cast<int>(cfg.get_int("scenario.n"));
  sc.p_t = cfg.get_double("scenario.p_t");

  const bool has_dbm = cfg.has("scenario.sigma2_dbm");
  const bool has_w = cfg.has("scenario.sigma2_watts");
  if (has_dbm == has_w)
    throw ConfigError(
        "exactly one of scenario.sigma2_dbm / scenario.sigma2_watts required");
  sc.sigma2_1 = has_dbm ? dbm_to_watts(cfg.get_double("scenario.sigma2_dbm"))
                        : cfg.get_double("scenario.sigma2_watts");
  if (cfg.has("scenario.sigma2_dbm_2") && cfg.has("scenario.sigma2_watts_2"))
    throw ConfigError(
        "at most one of scenario.sigma2_dbm_2 / scenario.sigma2_watts_2");
  if (cfg.has("scenario.sigma2_dbm_2"))
    sc.sigma2_2 = dbm_to_watts(cfg.get_double("scenario.sigma2_dbm_2"));
  else if (cfg.has("scenario.sigma2_watts_2"))
    sc.sigma2_2 = cfg.get_double("scenario.sigma2_watts_2");
  else
    sc.sigma2_2 = sc.sigma2_1;

  sc.seed = static_cast<std::uint64_t>(cfg.get_int_or("scenario.seed", 1));

  sc.beta_br_db = cfg.get_double_or("channel.beta_br_db", 3.0);
  sc.beta_bu_db = cfg.get_double_or("channel.beta_bu_db", 3.0);
  sc.beta_ru_db = cfg.get_double_or("channel.beta_ru_db", 3.0);

  sc.use_pathloss = cfg.get_bool_or("channel.pathloss", false);
  if (sc.use_pathloss) {
    sc.pl_br = {cfg.get_double("channel.c_br_db"),
                cfg.get_double("channel.rho_br"),
                cfg.get_double("channel.dist_br")};
    sc.pl_bu1 = {cfg.get_double("channel.c_bu_db"),
                 cfg.get_double("channel.rho_bu"),
                 cfg.get_double("channel.dist_bu_1")};
    sc.pl_bu2 = {cfg.get_double("channel.c_bu_db"),
                 cfg.get_double("channel.rho_bu"),
                 cfg.get_double("channel.dist_bu_2")};
    sc.pl_ru1 = {cfg.get_double("channel.c_ru_db"),
                 cfg.get_double("channel.rho_ru"),
                 cfg.get_double("channel.dist_ru_1")};
    sc.pl_ru2 = {cfg.get_double("channel.c_ru_db"),
                 cfg.get_double("channel.rho_ru"),
                 cfg.get_double("channel.dist_ru_2")};
  }

  sc.admm.eps = cfg.get_double_or("admm.eps", sc.admm.eps);
  sc.admm.k_max = static_cast<int>(cfg.get_int_or("admm.k_max", sc.admm.k_max));
  sc.admm.rho0 = cfg.get_double_or("admm.rho0", sc.admm.rho0);
  sc.admm.delta = cfg.get_double_or("admm.delta", sc.admm.delta);
  sc.admm.rho1_0 = cfg.get_double_or("admm.rho1_0", sc.admm.rho1_0);
  sc.admm.rho2_0 = cfg.get_double_or("admm.rho2_0", sc.admm.rho2_0);
  sc.admm.delta1 = cfg.get_double_or("admm.delta1", sc.admm.delta1);
  sc.admm.delta2 = cfg.get_double_or("admm.delta2", sc.admm.delta2);
  sc.admm.random_init = cfg.get_bool_or("admm.random_init", false);

  sc.validate();
  return sc;
}

}  // namespace risopt
