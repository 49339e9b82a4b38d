#pragma once

#include <functional>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace seqlearn {

class SummaryBelief;

// A prescription maps each (summary n, report m) pair the coordinator can
// face to a distribution over the recommended action {-1, +1}.  Rules cover
// every pair; table-backed prescriptions (used by the finite-horizon
// optimizer) cover an explicit finite domain.
class Prescription {
 public:
  // Returns P(recommend +1 | summary n, report m).
  using Rule = std::function<double(int n, int m)>;

  Prescription() = default;

  static Prescription from_rule(std::string name, Rule rule,
                                bool deterministic);

  // Deterministic table over explicit (n, m) -> action rows.
  struct TableRow {
    int n;
    int m;
    int action;  // -1 or +1
    bool operator==(const TableRow&) const = default;
  };
  static Prescription from_table(std::string name,
                                 std::vector<TableRow> rows);

  // P(recommend a | n, m); validates that the (n, m) row is a distribution.
  double prob(int a, int n, int m) const;

  // Deterministic prescriptions only: the recommended action at (n, m).
  int action(int n, int m) const;

  bool deterministic() const { return deterministic_; }
  const std::string& name() const { return name_; }

  // Non-empty only for table-backed prescriptions, sorted by (n, m).
  const std::vector<TableRow>& table() const { return table_; }

 private:
  std::string name_;
  Rule rule_;
  std::vector<TableRow> table_;
  bool deterministic_ = true;
};

// A mechanism: picks a prescription for each public belief, together with
// the transfer computed by tax().  The rule must be a pure function of the
// belief so results can be cached.
struct MechanismPolicy {
  std::string name;
  std::function<Prescription(const SummaryBelief&)> rule;
};

enum class Mechanism { bhw, nsii };

}  // namespace seqlearn
