#pragma once

#include <cstdint>
#include <vector>

#include "seqlearn/mechanisms.hpp"
#include "seqlearn/welfare.hpp"

namespace seqlearn {

// One simulated market: the state is drawn once, then `horizon` agents act
// in sequence under the mechanism.
struct EpisodeStep {
  int n = 0;       // summary before the report
  int y = 0;       // private signal (= report on the truthful path)
  int a = 0;       // recommended and taken action
  double tax = 0;  // transfer charged this period
};

struct EpisodeRecord {
  int w = 0;  // realized state
  int horizon = 0;
  double gsw = 0.0;      // sum_t delta^(t-1) * 1{a_t = w}
  double revenue = 0.0;  // sum_t delta^(t-1) * tax_t
  double nsw = 0.0;      // gsw - revenue
  std::vector<EpisodeStep> steps;
};

// Smallest horizon T with delta^T <= 1e-8 (discounted tail below 1e-8).
int default_horizon(double delta);

// Counter-based split of the master seed: the stream for episode `index`.
// estimate() runs episode i with run_episode(..., episode_seed(seed, i)),
// whatever the thread layout.
std::uint64_t episode_seed(std::uint64_t master, long index);

// Runs one episode from a point-mass belief at 0.  The state is drawn
// uniformly, signals from the binary symmetric channel; everything is
// deterministic given the seed.
EpisodeRecord run_episode(const ModelParams& mp, const MechanismPolicy& policy,
                          int horizon, std::uint64_t seed);

// Replays an episode with a forced signal sequence (for worked paths and
// regression tests); w only labels the record, the trajectory depends on the
// signals alone.
EpisodeRecord replay_episode(const ModelParams& mp,
                             const MechanismPolicy& policy,
                             const std::vector<int>& signals, int w = +1);

// Monte-Carlo estimate over `episodes` independent episodes.  Per-episode
// RNG streams are split from the master seed by episode index, per-episode
// results are stored and pairwise-summed in index order, so the report is
// identical for a given seed regardless of the number of worker threads.
WelfareReport estimate(const ModelParams& mp, const MechanismPolicy& policy,
                       long episodes, int horizon, std::uint64_t seed,
                       int threads = 1);

// Per-period sample means across episodes, used for period-by-period
// welfare comparisons: utilities[t-1] is the mean of 1{a_t = w} and
// taxes[t-1] the mean tax at period t; *_stderr hold their standard errors.
struct PerPeriodStats {
  std::vector<double> utilities;
  std::vector<double> utilities_stderr;
  std::vector<double> taxes;
  std::vector<double> taxes_stderr;
};
PerPeriodStats per_period_stats(const ModelParams& mp,
                                const MechanismPolicy& policy, long episodes,
                                int horizon, std::uint64_t seed);

}  // namespace seqlearn
