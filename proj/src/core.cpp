#include "seqlearn/core.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "seqlearn/errors.hpp"

namespace seqlearn {

double state_posterior_given_summary(const ModelParams& mp, int n, int w) {
  // pbar^k / (pbar^k + p^k) with k = n * w.  The ratio form keeps the n = +-1
  // posteriors exactly p and pbar (p + pbar rounds to 1), so the cancelling
  // tax brackets at those summaries really do cancel; the logistic is only a
  // fallback for summaries deep enough that both powers underflow.
  const int k = n * w;
  const double a = std::pow(mp.pbar(), std::abs(k));
  const double b = std::pow(mp.p, std::abs(k));
  const double denom = a + b;
  if (denom > 0.0) return (k >= 0 ? a : b) / denom;
  const double x = static_cast<double>(k) * mp.log_lr();
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double posterior_state(const ModelParams& mp, const SummaryBelief& eta) {
  double s = 0.0;
  for (const auto& [n, q] : eta.items()) {
    s += q * state_posterior_given_summary(mp, n, +1);
  }
  return s;
}

double posterior_log_ratio(const ModelParams& mp, const SummaryBelief& eta) {
  if (eta.is_point()) {
    return eta.items().front().first * mp.log_lr();
  }
  double plus = 0.0, minus = 0.0;
  for (const auto& [n, q] : eta.items()) {
    plus += q * state_posterior_given_summary(mp, n, +1);
    minus += q * state_posterior_given_summary(mp, n, -1);
  }
  if (minus == 0.0) return std::numeric_limits<double>::infinity();
  if (plus == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(plus) - std::log(minus);
}

bool in_learning_set(const ModelParams& mp, const SummaryBelief& eta) {
  const double r = posterior_log_ratio(mp, eta);
  if (!std::isfinite(r)) return false;
  return std::abs(r) <= mp.log_lr() + 1e-12;
}

int outside_best_response(const ModelParams& mp, const SummaryBelief& eta,
                          int y) {
  // log odds of W = +1 after privately updating the public belief on y
  const double d = posterior_log_ratio(mp, eta) + y * mp.log_lr();
  if (std::abs(d) <= 1e-12) return +1;  // indifferent: settle on +1
  return d > 0 ? +1 : -1;
}

namespace {

// P(report m | summary n) on the truthful path.
double report_prob(const ModelParams& mp, int n, int m) {
  double s = 0.0;
  for (int w : {-1, +1}) {
    s += state_posterior_given_summary(mp, n, w) * signal_prob(mp, m, w);
  }
  return s;
}

}  // namespace

SummaryBelief belief_transition(const ModelParams& mp,
                                const SummaryBelief& eta, int action,
                                const Prescription& theta) {
  std::vector<SummaryBelief::Entry> weights;
  weights.reserve(eta.support_size() * 2);
  double total = 0.0;
  for (const auto& [n, q] : eta.items()) {
    for (int m : {-1, +1}) {
      const double w = q * report_prob(mp, n, m) * theta.prob(action, n, m);
      if (w > 0.0) {
        weights.push_back({n + m, w});
        total += w;
      }
    }
  }
  if (total <= 0.0) {
    throw unreachable_observation(
        "belief_transition: observed action has zero probability");
  }
  return SummaryBelief::from_weights(std::move(weights));
}

double action_probability(const ModelParams& mp, const SummaryBelief& eta,
                          int a, const Prescription& theta) {
  double s = 0.0;
  for (const auto& [n, q] : eta.items()) {
    for (int m : {-1, +1}) {
      s += q * report_prob(mp, n, m) * theta.prob(a, n, m);
    }
  }
  return s;
}

double cost_of_lying(const ModelParams& mp, const SummaryBelief& eta,
                     const Prescription& theta, int y) {
  // expected utility gap between reporting y and reporting -y, obeying the
  // recommendation either way; the prescription bracket is taken first so
  // report-independent rules give an exact zero
  double s = 0.0;
  for (const auto& [n, q] : eta.items()) {
    for (int w : {-1, +1}) {
      const double gap = theta.prob(w, n, y) - theta.prob(w, n, -y);
      if (gap == 0.0) continue;
      s += q * state_posterior_given_summary(mp, n, w) *
           signal_prob(mp, y, w) * gap;
    }
  }
  return s;
}

double tax(const ModelParams& mp, const SummaryBelief& eta,
           const Prescription& theta) {
  // expected obedience value minus the outside option of acting on the
  // public belief and one's own signal; bracket first for exact zeros
  double s = 0.0;
  for (int y : {-1, +1}) {
    const int br = outside_best_response(mp, eta, y);
    for (const auto& [n, q] : eta.items()) {
      for (int w : {-1, +1}) {
        const double gap = theta.prob(w, n, y) - (w == br ? 1.0 : 0.0);
        if (gap == 0.0) continue;
        s += q * state_posterior_given_summary(mp, n, w) *
             signal_prob(mp, y, w) * gap;
      }
    }
  }
  return s;
}

bool truth_telling_feasible(const ModelParams& mp, const SummaryBelief& eta,
                            const Prescription& theta, double tol) {
  return cost_of_lying(mp, eta, theta, +1) >= -tol &&
         cost_of_lying(mp, eta, theta, -1) >= -tol;
}

}  // namespace seqlearn
