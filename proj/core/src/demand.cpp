#include "vsparse/demand.hpp"

#include "vsparse/errors.hpp"

namespace vsp {

namespace {
std::pair<int, int> key(int a, int b, int k) {
  if (a < 0 || b < 0 || a >= k || b >= k) throw InputError("demand on a non-terminal");
  if (a == b) throw InputError("demand from a terminal to itself");
  return a < b ? std::pair{a, b} : std::pair{b, a};
}
}  // namespace

void DemandSet::set(int a, int b, const Q& in) {
  Q value = in;
  value.canonicalize();
  if (value < 0) throw InputError("negative demand");
  auto kk = key(a, b, k_);
  if (value == 0)
    d_.erase(kk);
  else
    d_[kk] = value;
}

void DemandSet::add(int a, int b, const Q& value) { set(a, b, get(a, b) + value); }

Q DemandSet::get(int a, int b) const {
  auto it = d_.find(key(a, b, k_));
  return it == d_.end() ? Q(0) : it->second;
}

std::vector<std::tuple<int, int, Q>> DemandSet::pairs() const {
  std::vector<std::tuple<int, int, Q>> out;
  for (const auto& [kk, v] : d_) out.emplace_back(kk.first, kk.second, v);
  return out;
}

Q DemandSet::restriction() const {
  std::vector<Q> tot(k_, 0);
  for (const auto& [kk, v] : d_) {
    tot[kk.first] += v;
    tot[kk.second] += v;
  }
  Q best = 0;
  for (const Q& t : tot) best = std::max(best, t);
  return best;
}

DemandSet DemandSet::scaled(const Q& factor) const {
  DemandSet out(k_);
  for (const auto& [kk, v] : d_) out.set(kk.first, kk.second, v * factor);
  return out;
}

}  // namespace vsp
