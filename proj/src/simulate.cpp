#include "seqlearn/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

namespace seqlearn {

namespace {

// splitmix64: cheap counter-based generator, one stream per episode
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Rng {
  std::uint64_t state;
  double u01() {
    state += kGolden;
    return (mix64(state) >> 11) * 0x1.0p-53;
  }
};

// Lazily grown graph of the beliefs one mechanism can visit: per belief the
// prescription and tax are computed once, successors on first traversal.
// After warmup a simulation step costs two array reads and a rule call.
struct NodeGraph {
  const ModelParams& mp;
  const MechanismPolicy& policy;
  std::unordered_map<std::string, int> ids;
  std::vector<SummaryBelief> beliefs;
  std::vector<Prescription> thetas;
  std::vector<double> taxes;
  std::vector<std::array<int, 2>> succ;  // [0] a=-1, [1] a=+1; -1 = unbuilt
  int root;

  NodeGraph(const ModelParams& m, const MechanismPolicy& pol)
      : mp(m), policy(pol) {
    root = intern(SummaryBelief::point(0));
  }

  int intern(const SummaryBelief& b) {
    const auto [it, fresh] = ids.try_emplace(b.canonical_key(), -1);
    if (!fresh) return it->second;
    const int id = static_cast<int>(beliefs.size());
    it->second = id;
    beliefs.push_back(b);
    thetas.push_back(policy.rule(b));
    taxes.push_back(tax(mp, b, thetas.back()));
    succ.push_back({-1, -1});
    return id;
  }

  int successor(int node, int a) {
    const int slot = a > 0 ? 1 : 0;
    int nxt = succ[node][slot];
    if (nxt < 0) {
      nxt = intern(belief_transition(mp, beliefs[node], a, thetas[node]));
      succ[node][slot] = nxt;
    }
    return nxt;
  }
};

// One episode walked through the graph; identical control flow whether or
// not a step record is kept, so seeds reproduce exactly everywhere.
EpisodeRecord run_core(const ModelParams& mp, NodeGraph& graph, int horizon,
                       std::uint64_t seed, bool keep_steps) {
  Rng rng{seed};
  EpisodeRecord rec;
  rec.horizon = horizon;
  rec.w = rng.u01() < 0.5 ? +1 : -1;
  if (keep_steps) rec.steps.reserve(horizon);

  int node = graph.root;
  int n = 0;
  double disc = 1.0;
  for (int t = 0; t < horizon; ++t) {
    const int y = rng.u01() < mp.p ? -rec.w : rec.w;
    const Prescription& theta = graph.thetas[node];
    int a;
    if (theta.deterministic()) {
      a = theta.prob(+1, n, y) >= 0.5 ? +1 : -1;
    } else {
      a = rng.u01() < theta.prob(+1, n, y) ? +1 : -1;
    }
    const double t_tax = graph.taxes[node];
    if (a == rec.w) rec.gsw += disc;
    rec.revenue += disc * t_tax;
    if (keep_steps) rec.steps.push_back({n, y, a, t_tax});
    node = graph.successor(node, a);
    n += y;
    disc *= mp.delta;
  }
  rec.nsw = rec.gsw - rec.revenue;
  return rec;
}

// Deterministic pairwise sum, independent of how the work was threaded.
double pairwise_sum(const double* v, long n) {
  if (n <= 8) {
    double s = 0.0;
    for (long i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const long half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double stderr_of(const std::vector<double>& v, double mean) {
  const long n = static_cast<long>(v.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> sq(v.size());
  for (long i = 0; i < n; ++i) sq[i] = (v[i] - mean) * (v[i] - mean);
  const double var = pairwise_sum(sq.data(), n) / (n - 1);
  return std::sqrt(var / n);
}

void check_run_args(long episodes, int horizon) {
  if (episodes < 1) {
    throw std::invalid_argument("estimate: episodes must be positive");
  }
  if (horizon < 1) {
    throw std::invalid_argument("estimate: horizon must be positive");
  }
}

}  // namespace

int default_horizon(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("default_horizon: delta must lie in (0, 1)");
  }
  int t = static_cast<int>(
      std::ceil(std::log(1e-8) / std::log(delta)));
  if (t < 1) t = 1;
  while (std::pow(delta, t) > 1e-8) ++t;
  while (t > 1 && std::pow(delta, t - 1) <= 1e-8) --t;
  return t;
}

std::uint64_t episode_seed(std::uint64_t master, long index) {
  std::uint64_t z = master + static_cast<std::uint64_t>(index + 1) * kGolden;
  z = mix64(z);
  return mix64(z ^ 0x94d049bb133111ebULL);
}

EpisodeRecord run_episode(const ModelParams& mp, const MechanismPolicy& policy,
                          int horizon, std::uint64_t seed) {
  mp.validate();
  check_run_args(1, horizon);
  NodeGraph graph(mp, policy);
  return run_core(mp, graph, horizon, seed, /*keep_steps=*/true);
}

EpisodeRecord replay_episode(const ModelParams& mp,
                             const MechanismPolicy& policy,
                             const std::vector<int>& signals, int w) {
  mp.validate();
  if (w != -1 && w != +1) {
    throw std::invalid_argument("replay_episode: w must be +/-1");
  }
  NodeGraph graph(mp, policy);
  EpisodeRecord rec;
  rec.w = w;
  rec.horizon = static_cast<int>(signals.size());
  rec.steps.reserve(signals.size());
  int node = graph.root;
  int n = 0;
  double disc = 1.0;
  for (int y : signals) {
    if (y != -1 && y != +1) {
      throw std::invalid_argument("replay_episode: signals must be +/-1");
    }
    const Prescription& theta = graph.thetas[node];
    if (!theta.deterministic()) {
      throw std::invalid_argument(
          "replay_episode: prescription must be deterministic");
    }
    const int a = theta.prob(+1, n, y) >= 0.5 ? +1 : -1;
    const double t_tax = graph.taxes[node];
    if (a == rec.w) rec.gsw += disc;
    rec.revenue += disc * t_tax;
    rec.steps.push_back({n, y, a, t_tax});
    node = graph.successor(node, a);
    n += y;
    disc *= mp.delta;
  }
  rec.nsw = rec.gsw - rec.revenue;
  return rec;
}

WelfareReport estimate(const ModelParams& mp, const MechanismPolicy& policy,
                       long episodes, int horizon, std::uint64_t seed,
                       int threads) {
  mp.validate();
  check_run_args(episodes, horizon);
  if (threads < 1) {
    throw std::invalid_argument("estimate: threads must be positive");
  }

  std::vector<double> gsw(episodes), rev(episodes);
  const auto worker = [&](long lo, long hi) {
    // each worker grows its own graph: no shared mutable state, and the
    // per-episode streams make the results independent of the partition
    NodeGraph graph(mp, policy);
    for (long i = lo; i < hi; ++i) {
      const EpisodeRecord rec =
          run_core(mp, graph, horizon, episode_seed(seed, i), false);
      gsw[i] = rec.gsw;
      rev[i] = rec.revenue;
    }
  };

  if (threads == 1) {
    worker(0, episodes);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (episodes + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const long lo = t * chunk;
      const long hi = std::min(episodes, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  WelfareReport out;
  out.gsw = pairwise_sum(gsw.data(), episodes) / episodes;
  out.revenue = pairwise_sum(rev.data(), episodes) / episodes;
  out.nsw = out.gsw - out.revenue;
  out.gsw_stderr = stderr_of(gsw, out.gsw);
  out.revenue_stderr = stderr_of(rev, out.revenue);
  std::vector<double> nsw(episodes);
  for (long i = 0; i < episodes; ++i) nsw[i] = gsw[i] - rev[i];
  out.nsw_stderr = stderr_of(nsw, out.nsw);
  return out;
}

PerPeriodStats per_period_stats(const ModelParams& mp,
                                const MechanismPolicy& policy, long episodes,
                                int horizon, std::uint64_t seed) {
  mp.validate();
  check_run_args(episodes, horizon);
  NodeGraph graph(mp, policy);
  std::vector<double> u_sum(horizon, 0.0), tax_sum(horizon, 0.0),
      tax_sumsq(horizon, 0.0);
  for (long i = 0; i < episodes; ++i) {
    Rng rng{episode_seed(seed, i)};
    const int w = rng.u01() < 0.5 ? +1 : -1;
    int node = graph.root;
    int n = 0;
    for (int t = 0; t < horizon; ++t) {
      const int y = rng.u01() < mp.p ? -w : w;
      const Prescription& theta = graph.thetas[node];
      int a;
      if (theta.deterministic()) {
        a = theta.prob(+1, n, y) >= 0.5 ? +1 : -1;
      } else {
        a = rng.u01() < theta.prob(+1, n, y) ? +1 : -1;
      }
      const double t_tax = graph.taxes[node];
      if (a == w) u_sum[t] += 1.0;
      tax_sum[t] += t_tax;
      tax_sumsq[t] += t_tax * t_tax;
      node = graph.successor(node, a);
      n += y;
    }
  }

  PerPeriodStats out;
  out.utilities.resize(horizon);
  out.utilities_stderr.resize(horizon);
  out.taxes.resize(horizon);
  out.taxes_stderr.resize(horizon);
  const double n_ep = static_cast<double>(episodes);
  for (int t = 0; t < horizon; ++t) {
    const double mu = u_sum[t] / n_ep;
    out.utilities[t] = mu;
    // indicator variance
    const double var_u =
        episodes > 1 ? (u_sum[t] - n_ep * mu * mu) / (n_ep - 1.0) : 0.0;
    out.utilities_stderr[t] = std::sqrt(std::max(0.0, var_u) / n_ep);
    const double mt = tax_sum[t] / n_ep;
    out.taxes[t] = mt;
    const double var_t =
        episodes > 1 ? (tax_sumsq[t] - n_ep * mt * mt) / (n_ep - 1.0) : 0.0;
    out.taxes_stderr[t] = std::sqrt(std::max(0.0, var_t) / n_ep);
  }
  return out;
}

}  // namespace seqlearn
