#pragma once

#include "seqlearn/belief.hpp"
#include "seqlearn/params.hpp"
#include "seqlearn/prescription.hpp"

namespace seqlearn {

// Belief calculus for the summary-based coordinator.
//
// Conventions: w, y, m, a all take values in {-1, +1}; n is the current
// summary (sum of past reports).  On the truthful path m = y, so the
// coordinator's posterior over the state given the summary is exact.

// P(W = w | summary n) = (pbar/p)^(n*w) / ((pbar/p)^(n*w) + 1),
// computed in log space so it is stable for any |n|.
double state_posterior_given_summary(const ModelParams& mp, int n, int w);

// P(W = +1 | public belief eta) = sum_n eta(n) P(W=+1 | n).
double posterior_state(const ModelParams& mp, const SummaryBelief& eta);

// Log likelihood ratio log P(W=+1|eta) - log P(W=-1|eta); +inf/-inf when a
// side has no mass.  Point beliefs use n * log(pbar/p) exactly.
double posterior_log_ratio(const ModelParams& mp, const SummaryBelief& eta);

// Whether one contrarian signal can still swing the public belief: the
// posterior ratio lies within [p/pbar, pbar/p], boundaries inclusive
// (compared in log space with tolerance 1e-12).
bool in_learning_set(const ModelParams& mp, const SummaryBelief& eta);

// The action an agent with signal y would take on her own, ignoring any
// recommendation: argmax_a sum_n eta(n) P(W=a|n) P(y|a).  Ties go to +1.
int outside_best_response(const ModelParams& mp, const SummaryBelief& eta,
                          int y);

// One-step public belief update after observing the recommended action.
// Report m moves the summary n -> n + m, the observed action reweights by
// theta(action | n, m), and the result is normalized, pruned at 1e-15 and
// renormalized.  Throws unreachable_observation if the action has zero
// probability under (eta, theta).
SummaryBelief belief_transition(const ModelParams& mp,
                                const SummaryBelief& eta, int action,
                                const Prescription& theta);

// Probability that the recommended action is a, given belief eta and
// prescription theta (truthful reports).
double action_probability(const ModelParams& mp, const SummaryBelief& eta,
                          int a, const Prescription& theta);

// Expected gain from reporting the true signal y rather than -y, for an
// agent holding y.  Truth-telling requires this to be >= 0 for both y.
double cost_of_lying(const ModelParams& mp, const SummaryBelief& eta,
                     const Prescription& theta, int y);

// The largest tax every agent will pay at belief eta under prescription
// theta: expected obedience value minus the agent's outside option.
double tax(const ModelParams& mp, const SummaryBelief& eta,
           const Prescription& theta);

// Truth-telling check: cost_of_lying >= -tol for both signals.
bool truth_telling_feasible(const ModelParams& mp, const SummaryBelief& eta,
                            const Prescription& theta, double tol = 1e-12);

}  // namespace seqlearn
