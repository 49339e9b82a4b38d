#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "seqlearn/core.hpp"
#include "seqlearn/errors.hpp"
#include "seqlearn/mechanisms.hpp"

using namespace seqlearn;

namespace {
const ModelParams kQuarter{0.25, 0.9};  // pbar/p = 3

// chain state four steps out, frozen by hand from the update rule at p=1/4:
// {0: 2*pb^2*p^2, 2: 2*pb^3*p + 2*pb*p^3, 4: pb^4 + p^4} / (pb^2 + p^2)
SummaryBelief xi4_quarter() {
  return SummaryBelief::from_weights(
      {{0, 0.1125}, {2, 0.375}, {4, 0.5125}});
}
}  // namespace

TEST_CASE("state posterior given summary: frozen values and symmetry") {
  CHECK(state_posterior_given_summary(kQuarter, 0, +1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(state_posterior_given_summary(kQuarter, 2, +1) == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(state_posterior_given_summary(kQuarter, 1, +1) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(state_posterior_given_summary(kQuarter, 3, +1) == doctest::Approx(27.0 / 28.0).epsilon(1e-14));

  for (double p : {0.1, 0.25, 0.37, 0.49}) {
    const ModelParams mp{p, 0.9};
    for (int n = -50; n <= 50; ++n) {
      const double qp = state_posterior_given_summary(mp, n, +1);
      const double qm = state_posterior_given_summary(mp, n, -1);
      CHECK(qp + qm == doctest::Approx(1.0).epsilon(1e-12));
      // flipping the state and the summary together changes nothing
      CHECK(qp == doctest::Approx(state_posterior_given_summary(mp, -n, -1))
                      .epsilon(1e-12));
      CHECK(qp >= 0.0);
      CHECK(qp <= 1.0);
    }
    // extreme summaries saturate without overflow
    CHECK(state_posterior_given_summary(mp, 5000, +1) == doctest::Approx(1.0));
    CHECK(state_posterior_given_summary(mp, -5000, +1) == doctest::Approx(0.0));
    CHECK(std::isfinite(state_posterior_given_summary(mp, 100000, +1)));
  }
}

TEST_CASE("posterior_state mixes the summary posterior") {
  CHECK(posterior_state(kQuarter, SummaryBelief::point(0)) == doctest::Approx(0.5).epsilon(1e-14));
  const auto mix = SummaryBelief::from_weights({{1, 0.3}, {3, 0.7}});
  CHECK(posterior_state(kQuarter, mix) == doctest::Approx(0.9).epsilon(1e-13));
  CHECK(posterior_state(kQuarter, mix.mirrored()) == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("summary belief construction rules") {
  CHECK_THROWS_AS(SummaryBelief::from_weights({{0, 0.5}, {1, 0.5}}),
                  std::invalid_argument);  // mixed parity
  CHECK_THROWS_AS(SummaryBelief::from_weights({}), std::invalid_argument);
  CHECK_THROWS_AS(SummaryBelief::from_weights({{0, -0.2}, {2, 1.2}}),
                  std::invalid_argument);

  // duplicates merge, weights normalize
  const auto b = SummaryBelief::from_weights({{2, 1.0}, {0, 2.0}, {2, 1.0}});
  CHECK(b.at(0) == doctest::Approx(0.5));
  CHECK(b.at(2) == doctest::Approx(0.5));
  CHECK(b.total_mass() == doctest::Approx(1.0).epsilon(1e-12));

  // tiny entries are pruned and the rest renormalized
  const auto pruned =
      SummaryBelief::from_weights({{0, 1.0}, {2, 1e-17}, {4, 1e-16}});
  CHECK(pruned.support_size() == 1);
  CHECK(pruned.at(0) == doctest::Approx(1.0));

  CHECK(SummaryBelief::point(-3).at(-3) == 1.0);
  CHECK(SummaryBelief::point(7).is_point());
}

TEST_CASE("learning set membership, boundaries inclusive") {
  for (double p : {0.05, 0.25, 0.37, 0.45}) {
    const ModelParams mp{p, 0.9};
    CHECK(in_learning_set(mp, SummaryBelief::point(0)));
    CHECK(in_learning_set(mp, SummaryBelief::point(+1)));   // exactly on the edge
    CHECK(in_learning_set(mp, SummaryBelief::point(-1)));
    CHECK_FALSE(in_learning_set(mp, SummaryBelief::point(+2)));
    CHECK_FALSE(in_learning_set(mp, SummaryBelief::point(-2)));
  }
  CHECK_FALSE(in_learning_set(kQuarter, xi4_quarter()));  // posterior ratio 9
  // enormous one-sided summaries must not overflow the comparison
  CHECK_FALSE(in_learning_set(kQuarter, SummaryBelief::point(20000)));
}

TEST_CASE("outside best response follows the likelihood ratio, ties to +1") {
  CHECK(outside_best_response(kQuarter, SummaryBelief::point(0), +1) == +1);
  CHECK(outside_best_response(kQuarter, SummaryBelief::point(0), -1) == -1);
  // a contrarian signal exactly cancels a one-step summary: tie -> +1
  CHECK(outside_best_response(kQuarter, SummaryBelief::point(+1), -1) == +1);
  CHECK(outside_best_response(kQuarter, SummaryBelief::point(-1), +1) == +1);
  // a two-step summary dominates one signal
  CHECK(outside_best_response(kQuarter, SummaryBelief::point(+2), -1) == +1);
  CHECK(outside_best_response(kQuarter, SummaryBelief::point(-2), +1) == -1);
  CHECK(outside_best_response(kQuarter, xi4_quarter(), -1) == +1);
}

TEST_CASE("belief transition: frozen one-step updates at p=1/4") {
  const auto theta_l = theta_learning();
  const auto theta_n = theta_no_switch();

  auto b1 = belief_transition(kQuarter, SummaryBelief::point(0), +1, theta_l);
  CHECK(b1.is_point());
  CHECK(b1.at(+1) == doctest::Approx(1.0));

  auto bm = belief_transition(kQuarter, SummaryBelief::point(0), -1, theta_l);
  CHECK(bm.at(-1) == doctest::Approx(1.0));

  // from the point mass at 2 under the no-switch rule, conditioning on +1
  auto b2 = belief_transition(kQuarter, SummaryBelief::point(2), +1, theta_n);
  CHECK(b2.support_size() == 2);
  CHECK(b2.at(1) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(b2.at(3) == doctest::Approx(0.7).epsilon(1e-12));

  // iterating once more lands on the frozen three-point state
  auto b3 = belief_transition(kQuarter, b2, +1, theta_n);
  CHECK(b3.max_abs_diff(xi4_quarter()) < 1e-12);

  // a contrary action from that state collapses to the point mass at -1
  auto b4 = belief_transition(kQuarter, xi4_quarter(), -1, theta_n);
  CHECK(b4.is_point());
  CHECK(b4.at(-1) == doctest::Approx(1.0));
}

TEST_CASE("belief transition rejects unreachable observations") {
  // no-switch at the point mass at 2 recommends +1 for both reports
  CHECK_THROWS_AS(belief_transition(kQuarter, SummaryBelief::point(2), -1,
                                    theta_no_switch()),
                  unreachable_observation);
  CHECK_THROWS_AS(belief_transition(kQuarter, SummaryBelief::point(0), -1,
                                    theta_cascade(+1)),
                  unreachable_observation);
}

TEST_CASE("action probabilities are a distribution and match hand values") {
  const auto theta_l = theta_learning();
  // P(a=+1 | point at 1, learning) = P(y=+1 | n=1) = pb^2 + p^2
  CHECK(action_probability(kQuarter, SummaryBelief::point(1), +1, theta_l) ==
        doctest::Approx(0.625).epsilon(1e-13));
  for (const auto& theta : {theta_learning(), theta_no_switch()}) {
    for (int n : {-2, 0, 2}) {
      const auto b = SummaryBelief::point(n);
      const double s = action_probability(kQuarter, b, +1, theta) +
                       action_probability(kQuarter, b, -1, theta);
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("cost of lying: frozen values") {
  const auto theta_n = theta_no_switch();
  // at the flat prior the report decides the recommendation outright
  CHECK(cost_of_lying(kQuarter, SummaryBelief::point(0), theta_n, +1) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(cost_of_lying(kQuarter, SummaryBelief::point(0), theta_n, -1) ==
        doctest::Approx(0.25).epsilon(1e-12));
  // at the three-point chain state only the summary-0 slice is pivotal
  CHECK(cost_of_lying(kQuarter, xi4_quarter(), theta_n, -1) ==
        doctest::Approx(0.028125).epsilon(1e-12));
  // cascades ignore the report entirely
  CHECK(cost_of_lying(kQuarter, SummaryBelief::point(2), theta_cascade(+1), +1) == 0.0);
  CHECK(cost_of_lying(kQuarter, SummaryBelief::point(2), theta_cascade(+1), -1) == 0.0);
  // signal-revealing inside the learning set is strictly truth-telling
  CHECK(cost_of_lying(kQuarter, SummaryBelief::point(1), theta_learning(), +1) ==
        doctest::Approx(0.5).epsilon(1e-12));  // pb^2 - p^2
  CHECK(cost_of_lying(kQuarter, SummaryBelief::point(1), theta_learning(), -1) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(truth_telling_feasible(kQuarter, SummaryBelief::point(0), theta_n));
  CHECK(truth_telling_feasible(kQuarter, xi4_quarter(), theta_n));
}

TEST_CASE("tax: zero where obedience is free, frozen value on the chain") {
  CHECK(tax(kQuarter, SummaryBelief::point(0), theta_learning()) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(tax(kQuarter, SummaryBelief::point(1), theta_learning()) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(tax(kQuarter, SummaryBelief::point(2), theta_cascade(+1)) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(tax(kQuarter, SummaryBelief::point(2), theta_no_switch()) ==
        doctest::Approx(0.0).epsilon(1e-15));
  const double t4 = tax(kQuarter, xi4_quarter(), theta_no_switch());
  CHECK(t4 == doctest::Approx(0.028125).epsilon(1e-12));
  // mirrored state pays the same
  CHECK(tax(kQuarter, xi4_quarter().mirrored(), theta_no_switch()) ==
        doctest::Approx(t4).epsilon(1e-12));
}

TEST_CASE("iterated transitions reproduce exact Bayes conditioning") {
  // Walk every action history up to depth 6 under both mechanisms and
  // compare the library's iterated update against raw enumeration of all
  // signal sequences.
  for (double p : {0.25, 0.37}) {
    const ModelParams mp{p, 0.9};
    for (Mechanism which : {Mechanism::bhw, Mechanism::nsii}) {
      const MechanismPolicy policy = make_policy(mp, which);
      // map prefix -> library belief, built by iterating belief_transition
      std::map<std::vector<int>, SummaryBelief> lib;
      lib[{}] = SummaryBelief::point(0);
      double max_dev = 0, max_prob_dev = 0;
      oracle::walk_action_tree(
          mp, policy, 6,
          [&](const std::vector<int>& prefix, const SummaryBelief& exact,
              double prob_plus) {
            const SummaryBelief& mine = lib.at(prefix);
            max_dev = std::max(max_dev, mine.max_abs_diff(exact));
            const Prescription theta = policy.rule(mine);
            max_prob_dev = std::max(
                max_prob_dev,
                std::abs(action_probability(mp, mine, +1, theta) - prob_plus));
            for (int a : {-1, +1}) {
              if (action_probability(mp, mine, a, theta) <= 0) continue;
              auto nxt = prefix;
              nxt.push_back(a);
              lib[nxt] = belief_transition(mp, mine, a, theta);
            }
          });
      CHECK(max_dev < 1e-10);
      CHECK(max_prob_dev < 1e-10);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((ModelParams{0.5, 0.9}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{0.0, 0.9}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{-0.1, 0.9}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{0.25, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{0.25, 1.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((ModelParams{0.25, 0.9}.validate()));
}
