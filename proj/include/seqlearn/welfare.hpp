#pragma once

#include <cmath>
#include <limits>

#include "seqlearn/chain.hpp"

namespace seqlearn {

// Welfare quantities for one mechanism at one parameter point.  gsw is the
// expected discounted sum of realized agent utilities (gross), revenue the
// expected discounted taxes, and nsw = gsw - revenue.  Standard errors are
// NaN for exact analytic values and populated by the simulator.
struct WelfareReport {
  double gsw = 0.0;
  double nsw = 0.0;
  double revenue = 0.0;
  bool normalized = false;  // true if multiplied through by (1 - delta)

  double gsw_stderr = std::numeric_limits<double>::quiet_NaN();
  double nsw_stderr = std::numeric_limits<double>::quiet_NaN();
  double revenue_stderr = std::numeric_limits<double>::quiet_NaN();

  bool has_stderr() const { return !std::isnan(gsw_stderr); }
};

// Closed-form expected gross social welfare of the no-switch mechanism,
// unnormalized (present-value units).  Valid for p in [0, 1/2), delta in (0,1).
double nsii_gsw_closed_form(const ModelParams& mp);

// Closed-form expected gross social welfare of the baseline cascade
// mechanism, same units and domain.
double bhw_gsw_closed_form(const ModelParams& mp);

// Gross welfare of the no-switch mechanism computed independently of the
// closed form: value iteration on the conditional random-walk recursion
// R^S_k = reward(k) + delta * (pbar R^S_{k+1} + p R^S_{k-1}) over
// k in [-kmax, kmax] with boundary values 0 and 1/(1-delta).
double social_recursion_value(const ModelParams& mp, int kmax);

// Full analytic report for one mechanism; the no-switch revenue comes from
// the truncated chain (kmax states each side).
WelfareReport welfare_report(const ModelParams& mp, Mechanism which,
                             bool normalize = false, int kmax = 200);

// Multiplies all welfare columns by (1 - delta).
WelfareReport normalized(WelfareReport r, double delta);

}  // namespace seqlearn
