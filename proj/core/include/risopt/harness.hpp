#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "risopt/config.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

/// Experiment axes. A lambda sweep traces the SINR region at fixed power;
/// a power sweep traces sum-rate curves at fixed weights.
enum class SweepKind { kLambda, kPower };

const char* to_string(SweepKind kind);

/// Known scheme tags, in canonical column order.
extern const std::vector<std::string> kAllSchemes;
bool is_optimizer_scheme(const std::string& scheme);

struct SweepSpec {
  SweepKind kind = SweepKind::kLambda;
  std::vector<double> values;        ///< lambda weights or power budgets
  int trials = 1;
  std::vector<std::string> schemes;  ///< run order per trial
  ScenarioConfig base;

  void validate() const;
  /// Reads sweep.kind / sweep.values / sweep.trials / sweep.schemes plus
  /// the scenario keys; missing sweep keys fall back to per-kind defaults.
  static SweepSpec from_config(const ConfigMap& cfg);
};

/// One (trial, scheme, sweep value) outcome. `objective` is the sweep
/// metric measured from qos: the lambda-weighted sum SINR on lambda
/// sweeps, the sum rate on power sweeps.
struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string scheme;
  double value = 0;
  double objective = std::numeric_limits<double>::quiet_NaN();
  QosReport qos;
  int iterations = 0;
  std::string status = "ok";  ///< "ok", "max_iters", or a solver error code
  double wall_ms = 0;         ///< kept out of records.csv (timing sidecar)

  bool solved() const { return status == "ok"; }
};

struct SummaryRow {
  double value = 0;
  std::string scheme;
  int solved = 0;
  int trials = 0;
  double objective_mean = 0, objective_std = 0;
  double sinr1_mean = 0, sinr2_mean = 0, sum_rate_mean = 0;
};

/// Per-iteration trace of one optimizer run, already stringified into the
/// documented trace schema.
struct TraceFile {
  int trial = 0;
  std::string scheme;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct SweepOptions {
  bool keep_trace = false;  ///< collect optimizer traces (first sweep value)
  int workers = 0;          ///< 0 = hardware concurrency
};

struct SweepResult {
  std::vector<TrialRecord> records;  ///< value-major, then trial, then scheme
  std::vector<TraceFile> traces;
};

/// Run every (value, trial, scheme) cell. Channels depend only on
/// (base.seed, trial), so schemes and sweep values are paired. Per-cell
/// solver failures land in the record's status; they never abort the sweep.
SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& opt = {});

/// Group records by (value, scheme) in order of first appearance. Means
/// and stds cover solved records only; an all-failed cell reports NaN.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

extern const std::vector<std::string> kRecordColumns;
std::vector<std::string> record_cells(const TrialRecord& r);
TrialRecord record_from_cells(const std::vector<std::string>& columns,
                              const std::vector<std::string>& cells);

void write_records_csv(const std::string& path,
                       const std::vector<TrialRecord>& records);
void write_timings_csv(const std::string& path,
                       const std::vector<TrialRecord>& records);
void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows);
void write_trace_csv(const std::string& path, const TraceFile& trace);

/// Re-derive the optimizer records of a saved sweep and check the stored
/// objectives plus first-order residuals. Returns the failure messages
/// (empty = clean audit).
std::vector<std::string> audit_records(const std::string& records_path,
                                       const ConfigMap& cfg);

/// Entry point behind the command line tool: subcommands wsinr, sumrate,
/// sweep, baseline, audit. Exit 0 on success, 1 on configuration or usage
/// errors, 2 on hard solver errors or a failed audit.
int cli_main(int argc, const char* const* argv);

}  // namespace risopt
