#include "risopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "risopt/admm_sumrate.hpp"
#include "risopt/admm_wsinr.hpp"
#include "risopt/baselines.hpp"
#include "risopt/csv.hpp"
#include "risopt/errors.hpp"

#include "CLI11.hpp"

namespace risopt {

const char* to_string(SweepKind kind) {
  return kind == SweepKind::kLambda ? "lambda" : "power";
}

const std::vector<std::string> kAllSchemes = {
    "no_ris_zf",  "no_ris_wmmse",   "ris_random",
    "ris_dft",    "ris_opt_wsinr",  "ris_opt_sumrate",
};

bool is_optimizer_scheme(const std::string& scheme) {
  return scheme == "ris_opt_wsinr" || scheme == "ris_opt_sumrate";
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

SweepKind parse_kind(const std::string& s) {
  if (s == "lambda") return SweepKind::kLambda;
  if (s == "power") return SweepKind::kPower;
  throw ConfigError("sweep.kind must be 'lambda' or 'power', got '" + s + "'");
}

std::vector<double> default_values(SweepKind kind) {
  if (kind == SweepKind::kLambda) return {0.0, 0.25, 0.5, 0.75, 1.0};
  return {0.25, 0.5, 1.0, 2.0, 4.0};
}

std::vector<std::string> default_schemes(SweepKind kind) {
  if (kind == SweepKind::kLambda)
    return {"ris_opt_wsinr", "ris_dft", "ris_random", "no_ris_zf"};
  return {"ris_opt_sumrate", "ris_dft", "ris_random", "no_ris_wmmse"};
}

void check_scheme(const std::string& s) {
  if (std::find(kAllSchemes.begin(), kAllSchemes.end(), s) !=
      kAllSchemes.end())
    return;
  std::string known;
  for (const auto& tag : kAllSchemes) known += (known.empty() ? "" : ", ") + tag;
  throw ConfigError("unknown scheme '" + s + "' (known: " + known + ")");
}

const char* branch_name(QcqpStatus s) {
  switch (s) {
    case QcqpStatus::GlobalSdr: return "sdr";
    case QcqpStatus::EscapeStep: return "escape";
    case QcqpStatus::Infeasible: return "infeasible";
  }
  return "?";
}

void blank_qos(QosReport& q) {
  q.sinr1 = q.sinr2 = q.rate1 = q.rate2 = q.sum_rate = kNan;
  q.interference1 = q.interference2 = q.orthogonality_residual = kNan;
}

double sweep_metric(SweepKind kind, double lambda, const QosReport& q) {
  if (kind == SweepKind::kLambda)
    return lambda * q.sinr1 + (1.0 - lambda) * q.sinr2;
  return q.sum_rate;
}

TraceFile trace_of(int trial, const Alg1Result& r) {
  TraceFile tf;
  tf.trial = trial;
  tf.scheme = "ris_opt_wsinr";
  tf.columns = {"k", "objective", "primal_gap", "dual_gap", "rho", "branch"};
  for (const auto& row : r.trace)
    tf.rows.push_back({std::to_string(row.k), format_double(row.objective),
                       format_double(row.primal_gap),
                       format_double(row.dual_gap), format_double(row.rho),
                       branch_name(row.branch)});
  return tf;
}

TraceFile trace_of(int trial, const Alg2Result& r) {
  TraceFile tf;
  tf.trial = trial;
  tf.scheme = "ris_opt_sumrate";
  tf.columns = {"k",      "objective_ap", "xy_gap", "z_gap", "y_step",
                "z_step", "rho1",         "rho2",   "branch"};
  for (const auto& row : r.trace)
    tf.rows.push_back({std::to_string(row.k), format_double(row.objective),
                       format_double(row.primal_x), format_double(row.primal_z),
                       format_double(row.dual_y), format_double(row.dual_z),
                       format_double(row.rho1), format_double(row.rho2),
                       branch_name(row.branch)});
  return tf;
}

struct CellResult {
  TrialRecord record;
  TraceFile trace;      ///< empty columns = no trace collected
};

CellResult run_cell(const SweepSpec& spec, const ChannelSet& cs,
                    const std::string& scheme, double value, int trial,
                    bool keep_trace) {
  CellResult out;
  TrialRecord& rec = out.record;
  rec.trial = trial;
  rec.seed = spec.base.seed;
  rec.scheme = scheme;
  rec.value = value;

  const bool is_lambda = spec.kind == SweepKind::kLambda;
  const double lambda = is_lambda ? value : 0.5;
  const double p_t = is_lambda ? spec.base.p_t : value;
  const double s1 = spec.base.sigma2_1;
  const double s2 = spec.base.sigma2_2;

  const auto start = std::chrono::steady_clock::now();
  try {
    if (scheme == "ris_opt_wsinr") {
      Alg1Result r =
          run_alg1(cs, lambda, spec.base.admm, p_t, s1, std::nullopt,
                   keep_trace);
      rec.qos = r.qos;
      rec.iterations = r.iterations;
      if (!r.converged) rec.status = "max_iters";
      if (keep_trace) out.trace = trace_of(trial, r);
    } else if (scheme == "ris_opt_sumrate") {
      Alg2Result r =
          run_alg2(cs, spec.base.admm, p_t, s1, std::nullopt, keep_trace);
      rec.qos = r.qos;
      rec.iterations = r.iterations;
      if (!r.converged) rec.status = "max_iters";
      if (keep_trace) out.trace = trace_of(trial, r);
    } else if (scheme == "ris_random" || scheme == "ris_dft") {
      RisVector x;
      if (scheme == "ris_random") {
        RngStream rng(spec.base.seed, static_cast<std::uint64_t>(trial),
                      StreamTag::kRandomPhase);
        x = random_phase_ris(cs, rng);
      } else {
        x = dft_phase_ris(cs.n(), cs.m());
      }
      BaselineResult b = is_lambda
                             ? fixed_ris_wsinr(cs, x, lambda, s1, s2)
                             : fixed_ris_sumrate(cs, x, p_t, s1, s2);
      rec.qos = b.qos;
      rec.iterations = b.iterations;
    } else if (scheme == "no_ris_zf") {
      rec.qos = zf_no_ris(cs, p_t, s1, s2).qos;
    } else if (scheme == "no_ris_wmmse") {
      BaselineResult b = wmmse_no_ris(cs, p_t, s1, s2);
      rec.qos = b.qos;
      rec.iterations = b.iterations;
    } else {
      throw ConfigError("unknown scheme '" + scheme + "'");
    }
    rec.objective = sweep_metric(spec.kind, lambda, rec.qos);
  } catch (const SolverError& e) {
    rec.status = e.code();
    rec.objective = kNan;
    blank_qos(rec.qos);
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

}  // namespace

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep.values must be nonempty");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1]))
      throw ConfigError("sweep.values must be strictly increasing");
  if (kind == SweepKind::kLambda)
    for (double v : values)
      if (v < 0.0 || v > 1.0)
        throw ConfigError("lambda sweep values must lie in [0, 1]");
  if (kind == SweepKind::kPower)
    for (double v : values)
      if (!(v > 0.0)) throw ConfigError("power sweep values must be positive");
  if (trials < 1) throw ConfigError("sweep.trials must be >= 1");
  if (schemes.empty()) throw ConfigError("sweep.schemes must be nonempty");
  for (const auto& s : schemes) check_scheme(s);
  base.validate();
}

SweepSpec SweepSpec::from_config(const ConfigMap& cfg) {
  SweepSpec spec;
  spec.base = ScenarioConfig::from_config(cfg);
  spec.kind = parse_kind(cfg.get_string_or("sweep.kind", "lambda"));
  spec.values = cfg.has("sweep.values") ? cfg.get_double_list("sweep.values")
                                        : default_values(spec.kind);
  spec.trials = static_cast<int>(cfg.get_int_or("sweep.trials", 50));
  spec.schemes = cfg.has("sweep.schemes")
                     ? cfg.get_string_list("sweep.schemes")
                     : default_schemes(spec.kind);
  return spec;
}

SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& opt) {
  spec.validate();
  const int n_vals = static_cast<int>(spec.values.size());
  const int n_trials = spec.trials;
  const int n_schemes = static_cast<int>(spec.schemes.size());
  const int n_units = n_vals * n_trials;

  SweepResult result;
  result.records.resize(static_cast<std::size_t>(n_units) * n_schemes);
  std::vector<TraceFile> trace_slots(
      opt.keep_trace ? static_cast<std::size_t>(n_trials) * n_schemes : 0);

  std::atomic<int> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const int unit = next.fetch_add(1);
      if (unit >= n_units || abort.load()) return;
      const int vi = unit / n_trials;
      const int ti = unit % n_trials;
      try {
        const ChannelSet cs =
            make_channel_set(spec.base, static_cast<std::uint64_t>(ti));
        for (int si = 0; si < n_schemes; ++si) {
          const bool want_trace = opt.keep_trace && vi == 0 &&
                                  is_optimizer_scheme(spec.schemes[si]);
          CellResult cell = run_cell(spec, cs, spec.schemes[si],
                                     spec.values[vi], ti, want_trace);
          result.records[static_cast<std::size_t>(unit) * n_schemes + si] =
              std::move(cell.record);
          if (want_trace && !cell.trace.columns.empty())
            trace_slots[static_cast<std::size_t>(ti) * n_schemes + si] =
                std::move(cell.trace);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        abort.store(true);
        return;
      }
    }
  };

  int n_workers = opt.workers > 0
                      ? opt.workers
                      : static_cast<int>(
                            std::max(1u, std::thread::hardware_concurrency()));
  n_workers = std::min(n_workers, n_units);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (auto& tf : trace_slots)
    if (!tf.columns.empty()) result.traces.push_back(std::move(tf));
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw ConfigError("summarize: no records");
  std::vector<SummaryRow> rows;
  std::vector<std::vector<const TrialRecord*>> groups;
  for (const auto& rec : records) {
    std::size_t gi = 0;
    for (; gi < rows.size(); ++gi)
      if (rows[gi].value == rec.value && rows[gi].scheme == rec.scheme) break;
    if (gi == rows.size()) {
      SummaryRow row;
      row.value = rec.value;
      row.scheme = rec.scheme;
      rows.push_back(row);
      groups.emplace_back();
    }
    groups[gi].push_back(&rec);
  }

  for (std::size_t gi = 0; gi < rows.size(); ++gi) {
    SummaryRow& row = rows[gi];
    row.trials = static_cast<int>(groups[gi].size());
    std::vector<double> obj;
    double s1 = 0, s2 = 0, sr = 0;
    for (const TrialRecord* rec : groups[gi]) {
      if (!rec->solved()) continue;
      obj.push_back(rec->objective);
      s1 += rec->qos.sinr1;
      s2 += rec->qos.sinr2;
      sr += rec->qos.sum_rate;
    }
    row.solved = static_cast<int>(obj.size());
    if (obj.empty()) {
      row.objective_mean = row.objective_std = kNan;
      row.sinr1_mean = row.sinr2_mean = row.sum_rate_mean = kNan;
      continue;
    }
    const double n = static_cast<double>(obj.size());
    double mean = 0;
    for (double v : obj) mean += v;
    mean /= n;
    double var = 0;
    for (double v : obj) var += (v - mean) * (v - mean);
    row.objective_mean = mean;
    row.objective_std = obj.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    row.sinr1_mean = s1 / n;
    row.sinr2_mean = s2 / n;
    row.sum_rate_mean = sr / n;
  }
  return rows;
}

const std::vector<std::string> kRecordColumns = {
    "trial",     "seed",          "scheme",         "value",
    "objective", "sinr1",         "sinr2",          "rate1",
    "rate2",     "sum_rate",      "interference1",  "interference2",
    "orthogonality", "iterations", "status",
};

std::vector<std::string> record_cells(const TrialRecord& r) {
  return {std::to_string(r.trial),
          std::to_string(r.seed),
          r.scheme,
          format_double(r.value),
          format_double(r.objective),
          format_double(r.qos.sinr1),
          format_double(r.qos.sinr2),
          format_double(r.qos.rate1),
          format_double(r.qos.rate2),
          format_double(r.qos.sum_rate),
          format_double(r.qos.interference1),
          format_double(r.qos.interference2),
          format_double(r.qos.orthogonality_residual),
          std::to_string(r.iterations),
          r.status};
}

TrialRecord record_from_cells(const std::vector<std::string>& columns,
                              const std::vector<std::string>& cells) {
  if (columns.size() != cells.size())
    throw ConfigError("record width mismatch");
  auto cell = [&](const char* name) -> const std::string& {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return cells[i];
    throw ConfigError(std::string("no such column: ") + name);
  };
  TrialRecord r;
  r.trial = std::stoi(cell("trial"));
  r.seed = std::stoull(cell("seed"));
  r.scheme = cell("scheme");
  r.value = parse_double(cell("value"));
  r.objective = parse_double(cell("objective"));
  r.qos.sinr1 = parse_double(cell("sinr1"));
  r.qos.sinr2 = parse_double(cell("sinr2"));
  r.qos.rate1 = parse_double(cell("rate1"));
  r.qos.rate2 = parse_double(cell("rate2"));
  r.qos.sum_rate = parse_double(cell("sum_rate"));
  r.qos.interference1 = parse_double(cell("interference1"));
  r.qos.interference2 = parse_double(cell("interference2"));
  r.qos.orthogonality_residual = parse_double(cell("orthogonality"));
  r.iterations = std::stoi(cell("iterations"));
  r.status = cell("status");
  return r;
}

void write_records_csv(const std::string& path,
                       const std::vector<TrialRecord>& records) {
  CsvWriter w(path, kRecordColumns);
  for (const auto& r : records) w.row(record_cells(r));
  w.close();
}

void write_timings_csv(const std::string& path,
                       const std::vector<TrialRecord>& records) {
  CsvWriter w(path, {"trial", "scheme", "value", "wall_ms"});
  for (const auto& r : records)
    w.row({std::to_string(r.trial), r.scheme, format_double(r.value),
           format_double(r.wall_ms)});
  w.close();
}

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
  CsvWriter w(path, {"value", "scheme", "solved", "trials", "objective_mean",
                     "objective_std", "sinr1_mean", "sinr2_mean",
                     "sum_rate_mean"});
  for (const auto& r : rows)
    w.row({format_double(r.value), r.scheme, std::to_string(r.solved),
           std::to_string(r.trials), format_double(r.objective_mean),
           format_double(r.objective_std), format_double(r.sinr1_mean),
           format_double(r.sinr2_mean), format_double(r.sum_rate_mean)});
  w.close();
}

void write_trace_csv(const std::string& path, const TraceFile& trace) {
  CsvWriter w(path, trace.columns);
  for (const auto& row : trace.rows) w.row(row);
  w.close();
}

std::vector<std::string> audit_records(const std::string& records_path,
                                       const ConfigMap& cfg) {
  SweepSpec spec = SweepSpec::from_config(cfg);
  const double wsinr_stat = cfg.get_double_or("audit.wsinr_stationarity", 1e-4);
  const double wsinr_orth = cfg.get_double_or("audit.wsinr_orthogonality", 1e-6);
  const double sumrate_stat =
      cfg.get_double_or("audit.sumrate_stationarity", 1e-2);
  const double sumrate_orth =
      cfg.get_double_or("audit.sumrate_orthogonality", 1e-3);
  const double modulus_tol = cfg.get_double_or("audit.modulus", 1e-9);

  const CsvTable table = read_csv(records_path);
  std::vector<std::string> failures;
  int checked = 0;

  for (std::size_t ri = 0; ri < table.rows.size(); ++ri) {
    const TrialRecord rec = record_from_cells(table.columns, table.rows[ri]);
    if (!is_optimizer_scheme(rec.scheme) || !rec.solved()) continue;
    ++checked;
    auto where = [&] {
      std::ostringstream os;
      os << rec.scheme << " trial " << rec.trial << " value "
         << format_double(rec.value) << ": ";
      return os.str();
    };

    ScenarioConfig base = spec.base;
    base.seed = rec.seed;
    const ChannelSet cs =
        make_channel_set(base, static_cast<std::uint64_t>(rec.trial));
    const bool is_lambda = spec.kind == SweepKind::kLambda;
    const double lambda = is_lambda ? rec.value : 0.5;
    const double p_t = is_lambda ? base.p_t : rec.value;

    try {
      double recomputed = 0, stat = 0, orth = 0, modulus = 0;
      if (rec.scheme == "ris_opt_wsinr") {
        Alg1Result r = run_alg1(cs, lambda, base.admm, p_t, base.sigma2_1,
                                std::nullopt, false);
        recomputed = sweep_metric(spec.kind, lambda, r.qos);
        stat = r.kkt.stationarity_rel;
        orth = r.qos.orthogonality_residual;
        modulus = r.kkt.modulus_violation;
        if (stat > wsinr_stat)
          failures.push_back(where() + "stationarity " + format_double(stat));
        if (orth > wsinr_orth)
          failures.push_back(where() + "orthogonality " + format_double(orth));
      } else {
        Alg2Result r = run_alg2(cs, base.admm, p_t, base.sigma2_1,
                                std::nullopt, false);
        recomputed = sweep_metric(spec.kind, lambda, r.qos);
        stat = r.kkt.stationarity_rel;
        orth = r.qos.orthogonality_residual;
        modulus = r.kkt.modulus_violation;
        if (stat > sumrate_stat)
          failures.push_back(where() + "stationarity " + format_double(stat));
        if (orth > sumrate_orth)
          failures.push_back(where() + "orthogonality " + format_double(orth));
      }
      if (modulus > modulus_tol)
        failures.push_back(where() + "modulus violation " +
                           format_double(modulus));
      if (format_double(recomputed) != format_double(rec.objective))
        failures.push_back(where() + "objective drifted: stored " +
                           format_double(rec.objective) + ", recomputed " +
                           format_double(recomputed));
    } catch (const SolverError& e) {
      failures.push_back(where() + "re-run failed: " + e.what());
    }
  }
  if (checked == 0)
    failures.push_back("no solved optimizer records to audit in " +
                       records_path);
  return failures;
}

namespace {

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

/// Persist the effective configuration next to the outputs so a later
/// audit can regenerate the exact channels and solver settings.
void dump_run_config(const std::filesystem::path& path, const ConfigMap& cfg,
                     const SweepSpec& spec) {
  std::map<std::string, std::string> entries = cfg.entries();
  entries["scenario.seed"] = std::to_string(spec.base.seed);
  entries["sweep.kind"] = to_string(spec.kind);
  std::vector<std::string> vals;
  for (double v : spec.values) vals.push_back(format_double(v));
  entries["sweep.values"] = join(vals);
  entries["sweep.trials"] = std::to_string(spec.trials);
  entries["sweep.schemes"] = join(spec.schemes);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  for (const auto& [key, value] : entries) out << key << " = " << value << "\n";
  out.flush();
  if (out.fail()) throw ConfigError("write failed: " + path.string());
}

struct RunFlags {
  std::string config_path;
  std::string out_dir = "out";
  std::string schemes;
  std::uint64_t seed = 0;
  int trials = 0;
  bool seed_set = false;
  bool trials_set = false;
  bool trace = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
  cmd->add_option("--config", flags.config_path, "scenario config file")
      ->required();
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--seed", flags.seed, "override the scenario seed")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--trials", flags.trials, "override sweep.trials")
      ->each([&flags](const std::string&) { flags.trials_set = true; });
  cmd->add_option("--scheme", flags.schemes,
                  "comma-separated scheme tags to run");
  cmd->add_flag("--trace", flags.trace, "emit per-iteration trace CSVs");
}

int run_sweep_command(const RunFlags& flags,
                      std::optional<SweepKind> forced_kind,
                      bool baselines_only) {
  const ConfigMap cfg = ConfigMap::parse_file(flags.config_path);
  SweepSpec spec = SweepSpec::from_config(cfg);

  if (forced_kind && *forced_kind != spec.kind) {
    const bool explicit_values = cfg.has("sweep.values") &&
                                 cfg.get_string_or("sweep.kind", "lambda") ==
                                     to_string(*forced_kind);
    spec.kind = *forced_kind;
    if (!explicit_values) spec.values = default_values(spec.kind);
    if (!cfg.has("sweep.schemes")) spec.schemes = default_schemes(spec.kind);
  }
  if (flags.seed_set) spec.base.seed = flags.seed;
  if (flags.trials_set) spec.trials = flags.trials;
  if (!flags.schemes.empty()) spec.schemes = split_csv_list(flags.schemes);
  if (baselines_only) {
    std::vector<std::string> kept;
    for (const auto& s : spec.schemes)
      if (!is_optimizer_scheme(s)) kept.push_back(s);
    if (kept.empty()) kept = {"ris_dft", "ris_random", "no_ris_zf"};
    spec.schemes = kept;
  }
  spec.validate();

  const std::filesystem::path out_dir(flags.out_dir);
  std::filesystem::create_directories(out_dir);

  SweepOptions opt;
  opt.keep_trace = flags.trace;
  SweepResult result = run_sweep(spec, opt);

  write_records_csv((out_dir / "records.csv").string(), result.records);
  write_summary_csv((out_dir / "summary.csv").string(),
                    summarize(result.records));
  write_timings_csv((out_dir / "timings.csv").string(), result.records);
  dump_run_config(out_dir / "run_config.cfg", cfg, spec);

  const bool one_optimizer =
      std::count_if(spec.schemes.begin(), spec.schemes.end(),
                    is_optimizer_scheme) <= 1;
  for (const auto& tf : result.traces) {
    const std::string name =
        one_optimizer ? "trace_" + std::to_string(tf.trial) + ".csv"
                      : "trace_" + tf.scheme + "_" + std::to_string(tf.trial) +
                            ".csv";
    write_trace_csv((out_dir / name).string(), tf);
  }

  int solved = 0;
  for (const auto& r : result.records) solved += r.solved() ? 1 : 0;
  std::cout << "wrote " << (out_dir / "records.csv").string() << " ("
            << result.records.size() << " records, " << solved << " solved)"
            << std::endl;
  return 0;
}

int run_audit_command(const std::string& records_path,
                      const std::string& config_path) {
  std::string cfg_path = config_path;
  if (cfg_path.empty()) {
    const auto sibling =
        std::filesystem::path(records_path).parent_path() / "run_config.cfg";
    cfg_path = sibling.string();
  }
  const ConfigMap cfg = ConfigMap::parse_file(cfg_path);
  const std::vector<std::string> failures = audit_records(records_path, cfg);
  for (const auto& f : failures) std::cerr << "audit: " << f << std::endl;
  if (failures.empty()) {
    std::cout << "audit ok: " << records_path << std::endl;
    return 0;
  }
  std::cerr << "audit failed: " << failures.size() << " finding(s)"
            << std::endl;
  return 2;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"two-user downlink experiments with a reconfigurable surface"};
  app.require_subcommand(1);

  RunFlags wsinr_flags, sumrate_flags, sweep_flags, baseline_flags;
  auto* cmd_wsinr = app.add_subcommand(
      "wsinr", "lambda sweep of the weighted-SINR pipeline");
  add_run_flags(cmd_wsinr, wsinr_flags);
  auto* cmd_sumrate =
      app.add_subcommand("sumrate", "power sweep of the sum-rate pipeline");
  add_run_flags(cmd_sumrate, sumrate_flags);
  auto* cmd_sweep =
      app.add_subcommand("sweep", "sweep with the kind taken from the config");
  add_run_flags(cmd_sweep, sweep_flags);
  auto* cmd_baseline =
      app.add_subcommand("baseline", "baseline schemes only (no optimizer)");
  add_run_flags(cmd_baseline, baseline_flags);

  std::string audit_records_path, audit_config;
  auto* cmd_audit = app.add_subcommand(
      "audit", "re-verify first-order residuals of a saved records.csv");
  cmd_audit->add_option("records", audit_records_path, "path to records.csv")
      ->required();
  cmd_audit->add_option("--config", audit_config,
                        "config override (default: run_config.cfg next to "
                        "the records)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_wsinr->parsed())
      return run_sweep_command(wsinr_flags, SweepKind::kLambda, false);
    if (cmd_sumrate->parsed())
      return run_sweep_command(sumrate_flags, SweepKind::kPower, false);
    if (cmd_sweep->parsed())
      return run_sweep_command(sweep_flags, std::nullopt, false);
    if (cmd_baseline->parsed())
      return run_sweep_command(baseline_flags, std::nullopt, true);
    if (cmd_audit->parsed())
      return run_audit_command(audit_records_path, audit_config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 1;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 1;
}

}  // namespace risopt
