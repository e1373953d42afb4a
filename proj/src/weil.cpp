#include "qrap/weil.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace qrap {

CharSumResult char_sum(const ResidueClassifier& c, std::span<const i64> shifts,
                       std::optional<u64> range_end) {
  if (shifts.empty()) throw std::invalid_argument("char_sum: at least one factor required");
  const u64 p = c.prime();
  if (range_end && *range_end > p - 1) throw std::invalid_argument("char_sum: range end beyond p-1");

  CharSumResult r;
  r.p = p;
  r.range_end = range_end;
  r.degree = static_cast<int>(shifts.size());

  std::set<u64> seen;
  for (i64 s : shifts) {
    i64 v = s % static_cast<i64>(p);
    if (v < 0) v += static_cast<i64>(p);
    if (!seen.insert(static_cast<u64>(v)).second) {
      throw std::domain_error("char_sum: shifts must be distinct mod p (repeated root)");
    }
    r.shifts.push_back(static_cast<u64>(v));
  }

  const u64 top = range_end ? *range_end : p - 1;
  i64 sum = 0;
  for (u64 x = 0; x <= top; ++x) {
    int term = 1;
    for (u64 s : r.shifts) {
      u64 v = x + s;
      if (v >= p) v -= p;
      if (v == 0) {
        term = 0;
        break;
      }
      term *= c.chi_unit(v);
    }
    sum += term;
  }
  r.value = sum;

  const double root_p = std::sqrt(static_cast<double>(p));
  r.bound = 2.0 * r.degree * root_p;
  if (range_end) r.bound *= std::log(static_cast<double>(p));
  r.within_bound = std::abs(static_cast<double>(r.value)) <= r.bound;
  return r;
}

}  // namespace qrap
