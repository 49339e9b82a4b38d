#pragma once

#include <cmath>
#include <stdexcept>

namespace seqlearn {

// Model primitives shared by every component.
//
// The world state W is +1 or -1 with even prior odds.  Each agent privately
// observes a binary signal that equals W with probability 1-p and is flipped
// with probability p, where 0 < p < 1/2, and agents discount at rate delta.
struct ModelParams {
  double p = 0.25;     // signal crossover probability, in (0, 1/2)
  double delta = 0.9;  // discount factor, in (0, 1)

  double pbar() const { return 1.0 - p; }

  // log likelihood ratio of one correct signal, log(pbar/p) > 0
  double log_lr() const { return std::log(pbar() / p); }

  void validate() const {
    if (!(p > 0.0 && p < 0.5)) {
      throw std::invalid_argument("ModelParams: p must lie in (0, 0.5)");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
      throw std::invalid_argument("ModelParams: delta must lie in (0, 1)");
    }
  }
};

// P(signal = y | W = w): the binary symmetric channel.
inline double signal_prob(const ModelParams& mp, int y, int w) {
  return (y == w) ? mp.pbar() : mp.p;
}

}  // namespace seqlearn
