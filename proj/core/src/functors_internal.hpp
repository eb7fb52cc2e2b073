#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "widecount/functors.hpp"

namespace widecount::detail {

void for_each_injection(int m, int n, const std::function<void(const std::vector<int>&)>& f);
std::string pair_to_string(const Pair& p, int k);

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const;
};

class PairIndex {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  explicit PairIndex(const std::vector<Pair>& pairs);
  std::size_t find(const Pair& p) const;

 private:
  std::unordered_map<std::vector<int>, std::size_t, VectorHash> index_;
};

}  // namespace widecount::detail
