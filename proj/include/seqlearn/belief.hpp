#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace seqlearn {

// Sparse public belief over the running report sum ("summary").
//
// After t-1 reports the summary n is the sum of the +/-1 reports sent so
// far, so every value in the support has the same parity; the support is
// kept sorted and the masses sum to one.  Masses below prune_threshold are
// dropped after each update and the rest renormalized.
class SummaryBelief {
 public:
  static constexpr double prune_threshold = 1e-15;
  static constexpr double mass_tolerance = 1e-9;

  using Entry = std::pair<int, double>;  // (summary value, probability)

  SummaryBelief() = default;

  // Point mass at summary n.
  static SummaryBelief point(int n);

  // Builds from (summary, weight) pairs: merges duplicates, normalizes,
  // prunes, and checks the common-parity requirement.
  static SummaryBelief from_weights(std::vector<Entry> weights);

  double at(int n) const;                       // mass at n (0 if absent)
  const std::vector<Entry>& items() const { return mass_; }
  std::size_t support_size() const { return mass_.size(); }
  bool is_point() const { return mass_.size() == 1; }
  int min_support() const { return mass_.front().first; }
  int max_support() const { return mass_.back().first; }
  double total_mass() const;

  // Largest absolute difference in mass against another belief; beliefs on
  // disjoint supports count the stray mass in full.
  double max_abs_diff(const SummaryBelief& other) const;

  // Canonical key: support values plus masses rounded at 1e-12, suitable
  // for hashing and exact-match deduplication.
  std::string canonical_key() const;

  // Mirror image: mass at n moves to -n.
  SummaryBelief mirrored() const;

  bool operator==(const SummaryBelief& other) const {
    return mass_ == other.mass_;
  }

 private:
  std::vector<Entry> mass_;  // sorted by summary value
};

}  // namespace seqlearn
