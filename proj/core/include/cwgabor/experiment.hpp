#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cwgabor/channel.hpp"
#include "cwgabor/cwcode.hpp"
#include "cwgabor/gabor.hpp"

namespace cwgabor::sim {

enum class Scheme { Ura, Sra };
enum class DictKind { Gabor, Gaussian };

struct ExperimentConfig {
  Scheme scheme = Scheme::Ura;

  // code
  int q = 8;
  int n_prime = 6;
  int k_prime = 2;

  // dictionary
  int dict_n = 149;
  long m_total = 0;  // 0 = n' * q (U-RA) or users * n' * q (S-RA)
  long stride = 1;
  DictKind dict_kind = DictKind::Gabor;

  // channel
  chan::FadingModel model = chan::FadingModel::Awgn;
  int antennas = 1;
  double power = 1.0;
  std::optional<double> ebn0_db;

  // load
  int k_active = 1;             // U-RA list size / known activity count
  int users = 0;                // S-RA pool on the block
  double activation_prob = 0.0; // S-RA Bernoulli activity

  long trials = 100;
  std::uint64_t seed = 1;
  long n_tot = 30000;
  double target_pe = 0.05;

  void validate() const;
  long resolved_m_total() const;
  int message_bits() const;
  double kbar_a() const;  // K_a * N_tot / N
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);
// hash of the canonical config with the swept ebn0_db field excluded, so
// rows of one sweep share an identity
std::string config_hash(const ExperimentConfig& config);

ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

struct RunOptions {
  int threads = 0;   // 0 = hardware concurrency; CWGABOR_THREADS overrides
  bool timing = false;  // measured wall_ms in CSV rows (off keeps files byte-stable)
  int amp_max_iterations = 100;
  double amp_damping = 0.7;
  double amp_tolerance = 1e-6;
};

int resolve_threads(int requested);

struct TrialStats {
  long trials = 0;
  long active_users = 0;
  long missed = 0;
  long false_alarms = 0;
  double pe() const { return active_users > 0 ? static_cast<double>(missed) / active_users : 0.0; }
};

struct SweepRow {
  double ebn0_db = 0.0;
  TrialStats stats;
  double pe_ci_lo = 0.0;
  double pe_ci_hi = 1.0;
  long wall_ms = 0;
};

enum class SweepStatus { Bracketed, AtOrBelowLo, Unreachable, Undetermined };

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepStatus status = SweepStatus::Bracketed;
  double required_ebn0_db = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

TrialStats run_trials(const ExperimentConfig& config, const RunOptions& options);
SweepResult sweep_grid(const ExperimentConfig& config, const std::vector<double>& ebn0_points,
                       const RunOptions& options);
// smallest Eb/N0 with Pe <= target within tol_dB; seeds matched across points
SweepResult sweep_bisect(const ExperimentConfig& config, double lo_db, double hi_db, double tol_db,
                         const RunOptions& options);

// 95% Wilson score interval
std::pair<double, double> wilson_interval(long successes, long total);

void write_csv(std::ostream& os, const ExperimentConfig& config, const std::vector<SweepRow>& rows);

struct PhaseCell {
  double delta = 0.0;             // N / M undersampling
  double sparsity_fraction = 0.0; // k / N
  long m = 0;
  int k = 0;
  int trials = 0;
  int successes = 0;
  double success_rate() const { return trials > 0 ? static_cast<double>(successes) / trials : 0.0; }
};

// noiseless sparse recovery success rates over a (delta, sparsity) grid;
// x supports and values are matched across codebooks for a given seed
std::vector<PhaseCell> phase_transition(int n, int grid_delta, int grid_sparsity, DictKind kind,
                                        int trials_per_cell, std::uint64_t seed,
                                        const RunOptions& options);
void write_phase_csv(std::ostream& os, const std::vector<PhaseCell>& cells, DictKind kind, int n);

struct ExampleOptions {
  // fault injection for negative tests: overwrite one generator entry
  std::optional<std::tuple<int, int, gf::Symbol>> mutate_generator;
  std::uint64_t beyond_order_seed = 7;
};

struct ExampleReport {
  bool pass = false;
  std::string text;
};

// Reconstructs the worked PPM(8) o RS(6,2) example end to end: generator
// products, the OR matrix, the per-section candidate sets and the exact
// recovery of the three transmitted codewords.
ExampleReport verify_example(const ExampleOptions& options = {});

}  // namespace cwgabor::sim
