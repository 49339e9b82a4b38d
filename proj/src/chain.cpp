#include "seqlearn/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seqlearn/errors.hpp"
#include "seqlearn/mechanisms.hpp"

namespace seqlearn {

double ChainModel::trans_prob(int j, int k) const {
  const int target = index(k);
  for (const auto& [idx, q] : trans[index(j)]) {
    if (idx == target) return q;
  }
  return 0.0;
}

ChainModel build_chain(const ModelParams& mp, int kmax) {
  mp.validate();
  if (kmax < 4) {
    throw std::invalid_argument("build_chain: kmax must be at least 4");
  }

  ChainModel chain;
  chain.params = mp;
  chain.kmax = kmax;
  chain.states.resize(2 * kmax + 1);

  const MechanismPolicy policy = nsii_policy(mp);

  // states: point masses up to |k| = 2, then iterate the update on repeated
  // same-direction actions
  for (int k = -2; k <= 2; ++k) chain.states[chain.index(k)] = SummaryBelief::point(k);
  for (int k = 3; k <= kmax; ++k) {
    const SummaryBelief& prev = chain.state(k - 1);
    chain.states[chain.index(k)] =
        belief_transition(mp, prev, +1, policy.rule(prev));
    const SummaryBelief& nprev = chain.state(-(k - 1));
    chain.states[chain.index(-k)] =
        belief_transition(mp, nprev, -1, policy.rule(nprev));
  }

  chain.taxes.resize(2 * kmax + 1);
  chain.trans.resize(2 * kmax + 1);
  for (int k = -kmax; k <= kmax; ++k) {
    const SummaryBelief& here = chain.state(k);
    const Prescription theta = policy.rule(here);
    chain.taxes[chain.index(k)] = tax(mp, here, theta);

    auto& row = chain.trans[chain.index(k)];
    for (int a : {-1, +1}) {
      const double pa = action_probability(mp, here, a, theta);
      if (pa <= 0.0) continue;
      if (std::abs(k + a) > kmax) {
        // truncation: fold the outward move into a self-loop
        row.push_back({chain.index(k), pa});
        continue;
      }
      const SummaryBelief next = belief_transition(mp, here, a, theta);
      int target = 0;
      bool found = false;
      for (int cand : {k + a, +1, -1}) {
        if (std::abs(cand) > kmax) continue;
        if (next.max_abs_diff(chain.state(cand)) < 1e-9) {
          target = cand;
          found = true;
          break;
        }
      }
      if (!found) {
        throw numerical_error(
            "build_chain: successor belief is not a chain state");
      }
      row.push_back({chain.index(target), pa});
    }
  }
  return chain;
}

namespace {

// One synchronous sweep of v <- base + delta * Q v; returns the sup change.
double sweep(const ChainModel& chain, double delta,
             const std::vector<double>& base, std::vector<double>& v,
             std::vector<double>& scratch) {
  const std::size_t n = v.size();
  double diff = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = base[i];
    for (const auto& [j, q] : chain.trans[i]) s += delta * q * v[j];
    scratch[i] = s;
    diff = std::max(diff, std::abs(s - v[i]));
  }
  v.swap(scratch);
  return diff;
}

}  // namespace

ValueSolution coordinator_revenue(const ChainModel& chain, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument(
        "coordinator_revenue: delta must lie in [0, 1)");
  }
  const std::size_t n = chain.states.size();
  constexpr double tol = 1e-12;
  constexpr int cap = 1000000;

  ValueSolution sol;
  sol.values.assign(n, 0.0);
  std::vector<double> scratch(n, 0.0);
  for (int it = 1; it <= cap; ++it) {
    const double diff = sweep(chain, delta, chain.taxes, sol.values, scratch);
    sol.iterations = it;
    if (diff <= tol) break;
    if (it == cap) {
      throw numerical_error("coordinator_revenue: value iteration stalled");
    }
  }
  sol.root = sol.values[chain.index(0)];

  // truncation bound: hold the edge states at 1 and propagate the expected
  // discount to the first edge hit; the bound is that discount times the
  // largest per-step tax over an infinite tail
  std::vector<double> hit(n, 0.0);
  hit.front() = hit.back() = 1.0;
  for (int it = 1; it <= cap; ++it) {
    double diff = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double s = 0.0;
      for (const auto& [j, q] : chain.trans[i]) s += delta * q * hit[j];
      scratch[i] = s;
      diff = std::max(diff, std::abs(s - hit[i]));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) hit[i] = scratch[i];
    if (diff <= tol) break;
    if (it == cap) {
      throw numerical_error("coordinator_revenue: hit-time iteration stalled");
    }
  }
  const double max_tax =
      *std::max_element(chain.taxes.begin(), chain.taxes.end());
  sol.truncation_bound = hit[chain.index(0)] * max_tax / (1.0 - delta);
  return sol;
}

}  // namespace seqlearn
