#pragma once

#include <vector>

#include "seqlearn/core.hpp"

namespace seqlearn {

// Under the no-switch mechanism the public belief moves on a countable
// chain of states xi_k indexed by k in Z: xi_k is the point mass at k for
// |k| <= 2 and further states are generated by updating on repeated
// same-direction actions.  This model truncates the chain at |k| = kmax,
// folding the forward transition at the edge into a self-loop.
struct ChainModel {
  ModelParams params;
  int kmax = 0;

  // index i = k + kmax for k in [-kmax, kmax]
  std::vector<SummaryBelief> states;
  std::vector<double> taxes;  // per-period tax collected at each state
  std::vector<std::vector<std::pair<int, double>>> trans;  // (index, prob)

  int index(int k) const { return k + kmax; }
  const SummaryBelief& state(int k) const { return states[index(k)]; }
  double tax_at(int k) const { return taxes[index(k)]; }

  // Transition probability from state j to state k (0 if absent).
  double trans_prob(int j, int k) const;
};

// Builds the truncated chain from first principles: states by iterating the
// belief update, taxes and transition probabilities by evaluating the
// no-switch mechanism at each state.  Requires kmax >= 4.
ChainModel build_chain(const ModelParams& mp, int kmax);

// Solution of an expected-discounted-reward recursion on the chain.
struct ValueSolution {
  std::vector<double> values;  // same indexing as ChainModel
  double root = 0.0;           // value at k = 0
  double truncation_bound = 0.0;
  int iterations = 0;

  double at_state(int k, int kmax) const { return values[k + kmax]; }
};

// Expected discounted coordinator revenue R_k = r_k + delta * sum_j q_kj R_j,
// solved by value iteration to sup-norm tolerance 1e-12 (iteration cap 1e6).
// The truncation bound is E[delta^(first hit of the edge)] * max tax / (1-delta).
ValueSolution coordinator_revenue(const ChainModel& chain, double delta);

}  // namespace seqlearn
