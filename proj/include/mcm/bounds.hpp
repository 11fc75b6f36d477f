#pragma once

#include <cstdint>

namespace mcm {

/// Search budgets shared by all bounded computations.
struct Bounds {
  int degree_cap = 24;       // largest internal degree any scan may visit
  int hom_bound = 12;        // homological length of resolutions
  int period_max = 4;        // largest period tried by period detection
  int period_start_max = 4;  // latest start index tried by period detection
  int t_degree_max = 3;      // largest operator degree in support windows
  int hs_order_max = 30;     // largest power of the maximal ideal in Hilbert-Samuel fits
  int iso_samples = 64;      // random draws before exhaustive unit search
  std::uint64_t exhaustive_limit = 1u << 20;
  std::uint64_t seed = 20240601;
};

}  // namespace mcm
