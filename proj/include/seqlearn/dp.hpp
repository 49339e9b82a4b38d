#pragma once

#include <map>
#include <string>
#include <vector>

#include "seqlearn/mechanisms.hpp"

namespace seqlearn {

// Finite-horizon optimal coordinator revenue by backward induction over
// public beliefs reachable from the point mass at 0.  The action space is
// the deterministic truth-telling prescriptions on the belief's support
// (a documented lower bound on the randomized optimum); values discount
// future taxes by delta.  Ties between prescriptions break lexicographically
// on the (n, m)-ordered action table with -1 before +1.
struct DpSolution {
  int horizon = 0;
  double root = 0.0;  // V_1 at the point mass at 0

  // stage t in [1, horizon] -> canonical belief key -> value / chosen table
  std::vector<std::map<std::string, double>> values;
  std::vector<std::map<std::string, std::vector<Prescription::TableRow>>>
      chosen;

  double value_at(int stage, const SummaryBelief& eta) const;
};

// Requires 1 <= T <= 7 (the reachable belief tree grows steeply with T).
DpSolution solve_finite_horizon(const ModelParams& mp, int T);

// Exact expected discounted tax revenue sum_{t<=T} delta^(t-1) tax_t of a
// mechanism over T periods, by forward enumeration of the belief tree.
// Requires 1 <= T <= 20.
double evaluate_policy_finite(const ModelParams& mp,
                              const MechanismPolicy& policy, int T);

}  // namespace seqlearn
