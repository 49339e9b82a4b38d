#include "doctest.h"
#include "oracle.hpp"
#include "seqlearn/mechanisms.hpp"

using namespace seqlearn;

namespace {
const ModelParams kQuarter{0.25, 0.9};
}

TEST_CASE("building-block prescriptions") {
  const auto tl = theta_learning();
  const auto tc_plus = theta_cascade(+1);
  const auto tc_minus = theta_cascade(-1);
  const auto tn = theta_no_switch();

  for (int n = -5; n <= 5; ++n) {
    for (int m : {-1, +1}) {
      CHECK(tl.action(n, m) == m);
      CHECK(tc_plus.action(n, m) == +1);
      CHECK(tc_minus.action(n, m) == -1);
      const int s = n + m;
      const int expect = (s != 0) ? (s > 0 ? +1 : -1) : (n > 0 ? +1 : -1);
      CHECK(tn.action(n, m) == expect);
      // rows are exact distributions
      CHECK(tl.prob(+1, n, m) + tl.prob(-1, n, m) == 1.0);
      CHECK(tn.prob(+1, n, m) + tn.prob(-1, n, m) == 1.0);
    }
  }
  CHECK(tl.deterministic());
  CHECK(tn.deterministic());
  CHECK_THROWS_AS(theta_cascade(0), std::invalid_argument);
}

TEST_CASE("no-switch keeps the standing majority on an exact offset") {
  const auto tn = theta_no_switch();
  CHECK(tn.action(+1, -1) == +1);
  CHECK(tn.action(-1, +1) == -1);
  CHECK(tn.action(+3, -1) == +1);  // n+m = 2 > 0 anyway
}

TEST_CASE("baseline policy: reveal inside the learning set, cascade outside") {
  const auto policy = bhw_policy(kQuarter);
  for (int n : {-1, 0, +1}) {
    const auto theta = policy.rule(SummaryBelief::point(n));
    for (int m : {-1, +1}) CHECK(theta.action(n, m) == m);
  }
  const auto up = policy.rule(SummaryBelief::point(+2));
  const auto dn = policy.rule(SummaryBelief::point(-2));
  for (int m : {-1, +1}) {
    CHECK(up.action(2, m) == +1);
    CHECK(dn.action(-2, m) == -1);
  }
  // the cascade belief keeps spreading but the policy must stay cascaded
  SummaryBelief b = SummaryBelief::point(+2);
  for (int step = 0; step < 10; ++step) {
    const auto theta = policy.rule(b);
    CHECK(theta.action(b.min_support(), -1) == +1);
    b = belief_transition(kQuarter, b, +1, theta);
  }
}

TEST_CASE("no-switch policy: reveal inside the learning set, no-switch outside") {
  const auto policy = nsii_policy(kQuarter);
  const auto inside = policy.rule(SummaryBelief::point(0));
  CHECK(inside.action(0, -1) == -1);
  const auto outside = policy.rule(SummaryBelief::point(+2));
  CHECK(outside.action(2, -1) == +1);  // sign(2-1) = +1
}

TEST_CASE("reachable beliefs within 30 steps: taxes and truth-telling") {
  for (double p : {0.1, 0.25, 0.37}) {
    const ModelParams mp{p, 0.9};

    const auto bhw = bhw_policy(mp);
    int checked = 0;
    for (const auto& belief : oracle::reachable_beliefs(mp, bhw, 30)) {
      const auto theta = bhw.rule(belief);
      CHECK(std::abs(tax(mp, belief, theta)) <= 1e-12);
      CHECK(truth_telling_feasible(mp, belief, theta));
      ++checked;
    }
    CHECK(checked > 30);

    const auto nsii = nsii_policy(mp);
    checked = 0;
    for (const auto& belief : oracle::reachable_beliefs(mp, nsii, 30)) {
      const auto theta = nsii.rule(belief);
      CHECK(tax(mp, belief, theta) >= -1e-15);
      CHECK(truth_telling_feasible(mp, belief, theta));
      ++checked;
    }
    CHECK(checked > 30);
  }
}

TEST_CASE("policies are pure functions of the belief") {
  const auto policy = nsii_policy(kQuarter);
  const auto a = policy.rule(SummaryBelief::point(2));
  const auto b = policy.rule(SummaryBelief::point(2));
  for (int m : {-1, +1}) CHECK(a.action(2, m) == b.action(2, m));
  CHECK(a.name() == b.name());
}
