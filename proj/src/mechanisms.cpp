#include "seqlearn/mechanisms.hpp"

#include <stdexcept>

namespace seqlearn {

Prescription theta_learning() {
  return Prescription::from_rule(
      "learning", [](int, int m) { return m > 0 ? 1.0 : 0.0; },
      /*deterministic=*/true);
}

Prescription theta_cascade(int direction) {
  if (direction != -1 && direction != +1) {
    throw std::invalid_argument("theta_cascade: direction must be +/-1");
  }
  const double plus = direction > 0 ? 1.0 : 0.0;
  return Prescription::from_rule(
      direction > 0 ? "cascade(+1)" : "cascade(-1)",
      [plus](int, int) { return plus; }, /*deterministic=*/true);
}

Prescription theta_no_switch() {
  // follow the report-adjusted majority sign(n + m); when the report exactly
  // cancels the summary, keep the standing majority sign(n)
  return Prescription::from_rule(
      "no-switch",
      [](int n, int m) {
        const int s = n + m;
        const int lead = (s != 0) ? s : n;
        return lead > 0 ? 1.0 : 0.0;
      },
      /*deterministic=*/true);
}

MechanismPolicy bhw_policy(const ModelParams& mp) {
  mp.validate();
  return {"bhw", [mp](const SummaryBelief& eta) {
            if (in_learning_set(mp, eta)) return theta_learning();
            return theta_cascade(posterior_log_ratio(mp, eta) > 0 ? +1 : -1);
          }};
}

MechanismPolicy nsii_policy(const ModelParams& mp) {
  mp.validate();
  return {"nsii", [mp](const SummaryBelief& eta) {
            if (in_learning_set(mp, eta)) return theta_learning();
            return theta_no_switch();
          }};
}

MechanismPolicy make_policy(const ModelParams& mp, Mechanism which) {
  return which == Mechanism::bhw ? bhw_policy(mp) : nsii_policy(mp);
}

}  // namespace seqlearn
