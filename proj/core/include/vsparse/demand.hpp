#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "vsparse/rational.hpp"

namespace vsp {

// Symmetric demands between terminal indices 0..k-1.
class DemandSet {
 public:
  explicit DemandSet(int k = 0) : k_(k) {}

  int k() const { return k_; }
  void set(int a, int b, const Q& value);
  void add(int a, int b, const Q& value);
  Q get(int a, int b) const;
  // Nonzero pairs with a < b in lexicographic order.
  std::vector<std::tuple<int, int, Q>> pairs() const;
  // Smallest gamma for which the set is gamma-restricted.
  Q restriction() const;
  DemandSet scaled(const Q& factor) const;
  bool empty() const { return d_.empty(); }

 private:
  int k_;
  std::map<std::pair<int, int>, Q> d_;
};

}  // namespace vsp
