#include "entbound/fock.hpp"

#include <stdexcept>

namespace entbound {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

namespace {

void enumerate(int modes, int particles, std::vector<int>& current,
               std::vector<std::vector<int>>& out) {
  if (modes == 1) {
    current.push_back(particles);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int n = 0; n <= particles; ++n) {
    current.push_back(n);
    enumerate(modes - 1, particles - n, current, out);
    current.pop_back();
  }
}

}  // namespace

FockBasis::FockBasis(int modes, int particles) : modes_(modes), particles_(particles) {
  if (modes < 1) throw std::invalid_argument("FockBasis: need at least one mode");
  if (particles < 0) throw std::invalid_argument("FockBasis: negative particle number");
  states_.reserve(binomial(particles + modes - 1, modes - 1));
  std::vector<int> current;
  enumerate(modes, particles, current, states_);
  for (Index i = 0; i < size(); ++i) index_[states_[i]] = i;
}

Index FockBasis::index_of(const std::vector<int>& occupation) const {
  auto it = index_.find(occupation);
  if (it == index_.end())
    throw std::out_of_range("FockBasis: occupation tuple not in basis");
  return it->second;
}

std::string FockBasis::label(Index i) const { return occupation_label(states_.at(i)); }

std::string occupation_label(const std::vector<int>& occupation) {
  std::string s = "(";
  for (std::size_t i = 0; i < occupation.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(occupation[i]);
  }
  s += ')';
  return s;
}

}  // namespace entbound
