#include "seqlearn/welfare.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "seqlearn/errors.hpp"

namespace seqlearn {

double nsii_gsw_closed_form(const ModelParams& mp) {
  const double p = mp.p, pb = 1.0 - p, d = mp.delta;
  const double root = std::sqrt(1.0 - 4.0 * d * d * p * pb);
  return pb / ((1.0 - d) * (1.0 + root)) * (1.0 + (1.0 - 2.0 * d * d * p) / root);
}

double bhw_gsw_closed_form(const ModelParams& mp) {
  const double p = mp.p, pb = 1.0 - p, d = mp.delta;
  return pb * (1.0 - p * d * d) / ((1.0 - d) * (1.0 - 2.0 * p * pb * d * d));
}

double social_recursion_value(const ModelParams& mp, int kmax) {
  mp.validate();
  if (kmax < 1) {
    throw std::invalid_argument("social_recursion_value: kmax must be >= 1");
  }
  const double p = mp.p, pb = mp.pbar(), d = mp.delta;
  const int n = 2 * kmax + 1;
  const auto reward = [&](int k) {
    return (k > 0) ? 1.0 : (k == 0 ? pb : 0.0);
  };
  // past the truncation the conditional walk has essentially no chance of
  // coming back, so the continuation is pinned to its asymptote on each side
  const double top = 1.0 / (1.0 - d);  // correct forever above +kmax
  const double bottom = 0.0;           // wrong forever below -kmax

  std::vector<double> v(n, 0.0), next(n, 0.0);
  constexpr double tol = 1e-14;
  constexpr int cap = 1000000;
  for (int it = 1; it <= cap; ++it) {
    double diff = 0.0;
    for (int k = -kmax; k <= kmax; ++k) {
      const double up = (k == kmax) ? top : v[k + 1 + kmax];
      const double dn = (k == -kmax) ? bottom : v[k - 1 + kmax];
      const double s = reward(k) + d * (pb * up + p * dn);
      next[k + kmax] = s;
      diff = std::max(diff, std::abs(s - v[k + kmax]));
    }
    v.swap(next);
    if (diff <= tol) break;
    if (it == cap) {
      throw numerical_error("social_recursion_value: iteration stalled");
    }
  }
  return v[kmax];
}

WelfareReport welfare_report(const ModelParams& mp, Mechanism which,
                             bool normalize, int kmax) {
  mp.validate();
  WelfareReport r;
  if (which == Mechanism::bhw) {
    r.gsw = bhw_gsw_closed_form(mp);
    r.revenue = 0.0;
  } else {
    r.gsw = nsii_gsw_closed_form(mp);
    r.revenue = coordinator_revenue(build_chain(mp, kmax), mp.delta).root;
  }
  r.nsw = r.gsw - r.revenue;
  return normalize ? normalized(r, mp.delta) : r;
}

WelfareReport normalized(WelfareReport r, double delta) {
  const double f = 1.0 - delta;
  r.gsw *= f;
  r.nsw *= f;
  r.revenue *= f;
  if (r.has_stderr()) {
    r.gsw_stderr *= f;
    r.nsw_stderr *= f;
    r.revenue_stderr *= f;
  }
  r.normalized = true;
  return r;
}

}  // namespace seqlearn
