#include "tarski/oracle.hpp"

namespace tarski {

std::vector<MonotoneViolation> verify_monotone_on_log(const QueryLog& log,
                                                      OrderRelation order) {
  std::vector<MonotoneViolation> bad;
  const auto& e = log.entries;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (i == j) continue;
      if (leq(order, e[i].first, e[j].first) && !leq(order, e[i].second, e[j].second)) {
        bad.push_back({e[i].first, e[i].second, e[j].first, e[j].second});
      }
    }
  }
  return bad;
}

}  // namespace tarski
