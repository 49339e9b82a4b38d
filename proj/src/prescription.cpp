#include "seqlearn/prescription.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqlearn {

Prescription Prescription::from_rule(std::string name, Rule rule,
                                     bool deterministic) {
  Prescription p;
  p.name_ = std::move(name);
  p.rule_ = std::move(rule);
  p.deterministic_ = deterministic;
  return p;
}

Prescription Prescription::from_table(std::string name,
                                      std::vector<TableRow> rows) {
  Prescription p;
  p.name_ = std::move(name);
  std::sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
    return std::tie(a.n, a.m) < std::tie(b.n, b.m);
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].action != -1 && rows[i].action != +1) {
      throw std::invalid_argument("Prescription: table action must be +/-1");
    }
    if (i > 0 && rows[i].n == rows[i - 1].n && rows[i].m == rows[i - 1].m) {
      throw std::invalid_argument("Prescription: duplicate table row");
    }
  }
  const auto tbl =
      std::make_shared<const std::vector<TableRow>>(std::move(rows));
  p.table_ = *tbl;
  p.rule_ = [tbl](int n, int m) -> double {
    const auto it = std::lower_bound(
        tbl->begin(), tbl->end(), std::pair<int, int>{n, m},
        [](const TableRow& row, const std::pair<int, int>& key) {
          return std::pair<int, int>{row.n, row.m} < key;
        });
    if (it == tbl->end() || it->n != n || it->m != m) {
      throw std::out_of_range("Prescription: (n, m) outside the table");
    }
    return it->action > 0 ? 1.0 : 0.0;
  };
  p.deterministic_ = true;
  return p;
}

double Prescription::prob(int a, int n, int m) const {
  if (a != -1 && a != +1) {
    throw std::invalid_argument("Prescription: action must be +/-1");
  }
  if (!rule_) throw std::logic_error("Prescription: empty");
  const double plus = rule_(n, m);
  if (!(plus >= 0.0 && plus <= 1.0)) {
    throw std::logic_error("Prescription: rule value outside [0, 1]");
  }
  return a > 0 ? plus : 1.0 - plus;
}

int Prescription::action(int n, int m) const {
  if (!deterministic_) {
    throw std::logic_error("Prescription: action() on a randomized rule");
  }
  return prob(+1, n, m) >= 0.5 ? +1 : -1;
}

}  // namespace seqlearn
