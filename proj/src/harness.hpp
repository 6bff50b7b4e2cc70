#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "channels.hpp"
#include "schemes.hpp"

namespace rlc {

struct TrialReport {
  int trials = 0;
  int failures = 0;
  double ci_low = 0, ci_high = 1;  // Wilson 95% interval for the failure rate
  std::uint64_t seed = 0;
  double wall_time = 0;  // seconds
};

// Wilson score interval at 95% for k successes out of n. n = 0 gives (0, 1).
std::pair<double, double> wilson_ci(int k, int n);

struct ExperimentConfig {
  ChannelSpec channel;
  SchemeParams scheme;
  std::string kind;  // "single" or "multi"
  double zeta = 0.5, gamma = 0.25;  // inner codebook density window
  int trials = 0;
  std::uint64_t seed = 0;
  std::string output;  // optional CSV path for per-trial results

  static ExperimentConfig from_json_file(const std::string& path);
  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
};

// Runs `trials` seeded encode/transmit/decode trials of the configured scheme;
// trial i uses subseed(seed, i); a failure is a flagged decode failure or a
// wrong message. Deterministic given seed; fans out across RLC_THREADS
// worker threads.
TrialReport run_trials(const ExperimentConfig& cfg);

// Writes the bound curves for tau as CSV (one file per tau).
void sweep_bounds(int tau, const std::vector<double>& d_grid,
                  const std::string& out_path);

// Empirical claim suite: buffer-event frequencies, good-pair counts and outer
// error accounting at desk-scale parameters. Prints one line per claim;
// returns false when any claim fails.
bool claims_check(std::ostream& os);

}  // namespace rlc
