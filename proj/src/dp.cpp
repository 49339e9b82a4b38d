#include "seqlearn/dp.hpp"

#include <cmath>
#include <stdexcept>

namespace seqlearn {

namespace {

using TableRows = std::vector<Prescription::TableRow>;

// Lexicographic order on the action column of two tables over the same
// (n, m) domain, -1 before +1.
bool lex_less(const TableRows& a, const TableRows& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].action != b[i].action) return a[i].action < b[i].action;
  }
  return a.size() < b.size();
}

// The (n, m) domain of a belief's support, in row order.
std::vector<std::pair<int, int>> domain_of(const SummaryBelief& belief) {
  std::vector<std::pair<int, int>> dom;
  dom.reserve(belief.support_size() * 2);
  for (const auto& [n, q] : belief.items()) {
    (void)q;
    dom.push_back({n, -1});
    dom.push_back({n, +1});
  }
  return dom;
}

struct Solver {
  const ModelParams& mp;
  const int T;
  DpSolution& sol;

  // Last stage: the tax objective is a sum of independent (n, report)
  // terms, so the best deterministic table picks each row's action by
  // itself; the row-wise maximum also keeps truthful reporting worthwhile
  // term by term, so the greedy table is feasible and optimal.
  double terminal(const SummaryBelief& belief, TableRows& rows) const {
    double value = 0.0;
    for (const auto& [n, mass] : belief.items()) {
      for (int m : {-1, +1}) {
        double best = -1.0;
        int pick = 0;
        for (int a : {-1, +1}) {  // -1 first: ties keep the lex-smaller action
          const double f = state_posterior_given_summary(mp, n, a) *
                           signal_prob(mp, m, a);
          if (f > best) {
            best = f;
            pick = a;
          }
        }
        rows.push_back({n, m, pick});
        value += mass * best;
      }
    }
    // subtract the outside option, which no table can affect
    for (int y : {-1, +1}) {
      const int br = outside_best_response(mp, belief, y);
      for (const auto& [n, mass] : belief.items()) {
        value -= mass * state_posterior_given_summary(mp, n, br) *
                 signal_prob(mp, y, br);
      }
    }
    return value;
  }

  double value(int stage, const SummaryBelief& belief) {
    auto& memo = sol.values[stage - 1];
    const std::string key = belief.canonical_key();
    if (const auto it = memo.find(key); it != memo.end()) return it->second;

    double best = 0.0;
    TableRows best_rows;
    if (stage == T) {
      best = terminal(belief, best_rows);
    } else {
      const auto dom = domain_of(belief);
      const int bits = static_cast<int>(dom.size());
      bool have = false;
      for (long mask = 0; mask < (1L << bits); ++mask) {
        TableRows rows;
        rows.reserve(bits);
        for (int b = 0; b < bits; ++b) {
          rows.push_back(
              {dom[b].first, dom[b].second, (mask >> b) & 1 ? +1 : -1});
        }
        const auto theta = Prescription::from_table("dp", rows);
        if (!truth_telling_feasible(mp, belief, theta)) continue;
        double v = tax(mp, belief, theta);
        for (int a : {-1, +1}) {
          const double pa = action_probability(mp, belief, a, theta);
          if (pa <= 0.0) continue;
          v += mp.delta * pa *
               value(stage + 1, belief_transition(mp, belief, a, theta));
        }
        if (!have || v > best ||
            (v == best && lex_less(rows, best_rows))) {
          have = true;
          best = v;
          best_rows = std::move(rows);
        }
      }
      // constant tables never punish a report, so some table is feasible
      // at every belief
    }
    memo[key] = best;
    sol.chosen[stage - 1][key] = std::move(best_rows);
    return best;
  }
};

}  // namespace

double DpSolution::value_at(int stage, const SummaryBelief& eta) const {
  return values.at(stage - 1).at(eta.canonical_key());
}

DpSolution solve_finite_horizon(const ModelParams& mp, int T) {
  mp.validate();
  if (T < 1 || T > 7) {
    throw std::invalid_argument("solve_finite_horizon: T must lie in [1, 7]");
  }
  DpSolution sol;
  sol.horizon = T;
  sol.values.resize(T);
  sol.chosen.resize(T);
  Solver solver{mp, T, sol};
  sol.root = solver.value(1, SummaryBelief::point(0));
  return sol;
}

double evaluate_policy_finite(const ModelParams& mp,
                              const MechanismPolicy& policy, int T) {
  mp.validate();
  if (T < 1 || T > 20) {
    throw std::invalid_argument(
        "evaluate_policy_finite: T must lie in [1, 20]");
  }
  // forward enumeration of the belief tree, merging equal beliefs
  std::map<std::string, std::pair<SummaryBelief, double>> layer;
  layer[SummaryBelief::point(0).canonical_key()] = {SummaryBelief::point(0),
                                                    1.0};
  double revenue = 0.0;
  double disc = 1.0;
  for (int t = 1; t <= T; ++t) {
    std::map<std::string, std::pair<SummaryBelief, double>> next;
    for (const auto& [key, node] : layer) {
      (void)key;
      const auto& [belief, prob] = node;
      const Prescription theta = policy.rule(belief);
      revenue += disc * prob * tax(mp, belief, theta);
      if (t == T) continue;
      for (int a : {-1, +1}) {
        const double pa = action_probability(mp, belief, a, theta);
        if (pa <= 0.0) continue;
        SummaryBelief child = belief_transition(mp, belief, a, theta);
        std::string ck = child.canonical_key();
        const auto it = next.find(ck);
        if (it == next.end()) {
          next[std::move(ck)] = {std::move(child), prob * pa};
        } else {
          it->second.second += prob * pa;
        }
      }
    }
    layer = std::move(next);
    disc *= mp.delta;
  }
  return revenue;
}

}  // namespace seqlearn
