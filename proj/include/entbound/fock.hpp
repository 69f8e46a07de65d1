#pragma once

#include "entbound/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace entbound {

std::uint64_t binomial(int n, int k);

// Occupation-number basis of `modes` bosonic modes at fixed total particle
// number. States are enumerated in lexicographically increasing tuple order,
// e.g. (3 modes, 1 particle) -> (0,0,1), (0,1,0), (1,0,0).
class FockBasis {
 public:
  FockBasis(int modes, int particles);

  int modes() const { return modes_; }
  int particles() const { return particles_; }
  Index size() const { return static_cast<Index>(states_.size()); }

  const std::vector<std::vector<int>>& states() const { return states_; }
  const std::vector<int>& occupation(Index i) const { return states_.at(i); }
  Index index_of(const std::vector<int>& occupation) const;  // throws out_of_range
  std::string label(Index i) const;                          // "(n1,n2,...)"

 private:
  int modes_;
  int particles_;
  std::vector<std::vector<int>> states_;
  std::map<std::vector<int>, Index> index_;
};

std::string occupation_label(const std::vector<int>& occupation);

}  // namespace entbound
