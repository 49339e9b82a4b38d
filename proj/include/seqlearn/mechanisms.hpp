#pragma once

#include "seqlearn/core.hpp"

namespace seqlearn {

// The three building-block prescriptions.

// Recommend the reported signal: a = m.  Used while the public belief can
// still learn from actions.
Prescription theta_learning();

// Recommend a fixed action regardless of the report (direction +1 or -1):
// the cascade behaviour.
Prescription theta_cascade(int direction);

// Recommend the report-adjusted majority: a = sign(n + m), and keep the
// standing majority a = sign(n) when n + m = 0 (no switch on indifference).
Prescription theta_no_switch();

// Baseline mechanism: signal-revealing inside the learning set, cascade in
// the direction of the public belief outside it.  Charges no taxes.
MechanismPolicy bhw_policy(const ModelParams& mp);

// No-switch mechanism: signal-revealing inside the learning set, no-switch
// prescription outside it.  Charges the profit-maximizing tax each period.
MechanismPolicy nsii_policy(const ModelParams& mp);

MechanismPolicy make_policy(const ModelParams& mp, Mechanism which);

}  // namespace seqlearn
