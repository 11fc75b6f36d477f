#pragma once

#include <string>
#include <vector>

#include "mcm/module.hpp"

namespace testing_helpers {

using namespace mcm;

inline RingPtr ring(std::uint32_t p, std::vector<std::string> vars, std::vector<int> w,
                    std::vector<std::string> rels) {
  return QuotientRing::make(PrimeField(p), std::move(vars), std::move(w), rels);
}

inline FreeMap matrix_from(const RingPtr& A, std::vector<int> target, std::vector<int> source,
                           const std::vector<std::vector<std::string>>& entries) {
  FreeMap p(A, target, source);
  for (std::size_t i = 0; i < target.size(); ++i)
    for (std::size_t j = 0; j < source.size(); ++j) p.at(i, j) = A->element(entries[i][j]);
  return p;
}

inline GradedModule module_from(const RingPtr& A, std::vector<int> gens, std::vector<int> rels,
                                const std::vector<std::vector<std::string>>& entries) {
  return GradedModule(matrix_from(A, std::move(gens), std::move(rels), entries));
}

inline Bounds small() {
  Bounds b;
  b.degree_cap = 30;
  return b;
}

// Every entry of a matrix is zero.
inline bool is_zero_map(const FreeMap& f) {
  for (const auto& e : f.entries)
    if (!e.is_zero()) return false;
  return true;
}

}  // namespace testing_helpers
