#include "seqlearn/belief.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace seqlearn {

SummaryBelief SummaryBelief::point(int n) {
  SummaryBelief b;
  b.mass_ = {{n, 1.0}};
  return b;
}

SummaryBelief SummaryBelief::from_weights(std::vector<Entry> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("SummaryBelief: empty weight list");
  }
  std::map<int, double> merged;
  for (const auto& [n, w] : weights) {
    if (w < 0.0) {
      throw std::invalid_argument("SummaryBelief: negative weight");
    }
    merged[n] += w;
  }
  const int parity = ((merged.begin()->first % 2) + 2) % 2;
  double total = 0.0;
  for (const auto& [n, w] : merged) {
    if (((n % 2) + 2) % 2 != parity) {
      throw std::invalid_argument("SummaryBelief: mixed-parity support");
    }
    total += w;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::invalid_argument("SummaryBelief: weights do not normalize");
  }

  SummaryBelief b;
  b.mass_.reserve(merged.size());
  double kept = 0.0;
  for (const auto& [n, w] : merged) {
    const double q = w / total;
    if (q >= prune_threshold) {
      b.mass_.push_back({n, q});
      kept += q;
    }
  }
  if (b.mass_.empty()) {
    throw std::invalid_argument("SummaryBelief: all mass pruned");
  }
  for (auto& [n, q] : b.mass_) q /= kept;
  return b;
}

double SummaryBelief::at(int n) const {
  const auto it = std::lower_bound(
      mass_.begin(), mass_.end(), n,
      [](const Entry& e, int key) { return e.first < key; });
  return (it != mass_.end() && it->first == n) ? it->second : 0.0;
}

double SummaryBelief::total_mass() const {
  double s = 0.0;
  for (const auto& [n, q] : mass_) s += q;
  return s;
}

double SummaryBelief::max_abs_diff(const SummaryBelief& other) const {
  double worst = 0.0;
  auto a = mass_.begin();
  auto b = other.mass_.begin();
  while (a != mass_.end() || b != other.mass_.end()) {
    if (b == other.mass_.end() || (a != mass_.end() && a->first < b->first)) {
      worst = std::max(worst, a->second);
      ++a;
    } else if (a == mass_.end() || b->first < a->first) {
      worst = std::max(worst, b->second);
      ++b;
    } else {
      worst = std::max(worst, std::abs(a->second - b->second));
      ++a;
      ++b;
    }
  }
  return worst;
}

std::string SummaryBelief::canonical_key() const {
  std::string key;
  key.reserve(mass_.size() * 24);
  char buf[48];
  for (const auto& [n, q] : mass_) {
    // round the mass at 1e-12 so keys are stable under last-bit noise
    const long long rounded = std::llround(q * 1e12);
    std::snprintf(buf, sizeof(buf), "%d:%lld;", n, rounded);
    key += buf;
  }
  return key;
}

SummaryBelief SummaryBelief::mirrored() const {
  SummaryBelief b;
  b.mass_.reserve(mass_.size());
  for (auto it = mass_.rbegin(); it != mass_.rend(); ++it) {
    b.mass_.push_back({-it->first, it->second});
  }
  return b;
}

}  // namespace seqlearn
