#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcm/module.hpp"

namespace mcm {

/// Window F_0 <- F_1 <- ... <- F_len of a minimal graded free resolution.
struct FreeResolution {
  GradedModule module;
  std::vector<std::vector<int>> degrees;  // generator degrees of F_0..F_len
  std::vector<FreeMap> maps;              // maps[i] is the differential F_{i+1} -> F_i
  bool finite = false;                    // the resolution ended inside the window
  int bound = 0;

  int length() const noexcept { return static_cast<int>(degrees.size()) - 1; }
  std::vector<std::size_t> betti() const;
  /// The differential F_i -> F_{i-1}, i >= 1.
  const FreeMap& differential(int i) const { return maps.at(static_cast<std::size_t>(i - 1)); }
};

/// Resolves M through F_steps (fewer if the resolution stops).
FreeResolution resolve(const GradedModule& m, int steps, const Bounds& bounds);
/// Continues the resolution through F_steps.
void extend(FreeResolution& res, int steps, const Bounds& bounds);
/// Syz_n from a resolution that reaches F_{n+1} or has ended.
GradedModule syzygy_from(const FreeResolution& res, int n);
GradedModule syzygy(const GradedModule& m, int n, const Bounds& bounds);

/// Krull dimension of the ring, from its Hilbert-Samuel function.
int krull_dimension(const RingPtr& ring, const Bounds& bounds);

/// Ext^i(M, A) = 0 for 1 <= i <= dim A.
bool mcm_test(const GradedModule& m, const Bounds& bounds);

struct Period {
  int start = 0;
  int period = 0;
};

/// Smallest period p <= p_max (then smallest start n0 <= n_max) with
/// Syz_{n0+p}(M) isomorphic to Syz_{n0}(M) up to shift.
std::optional<Period> detect_period(const GradedModule& m, int p_max, int n_max, const Bounds& bounds);

struct GrowthReport {
  std::vector<std::size_t> betti;
  bool finite_pd = false;
  std::optional<int> cx;  // nothing when no polynomial growth is visible
  bool cx_confident = false;
  double curv = 0.0;
  bool curv_confident = false;
  double tail_ratio = 0.0;
  bool extremal_cx = false;
  bool extremal_curv = false;
};

/// Growth of the Betti numbers of M over H steps; the extremal flags compare
/// with the residue field unless compare_with_residue is false.
GrowthReport growth_report(const GradedModule& m, const Bounds& bounds, bool compare_with_residue = true);
GrowthReport growth_from_betti(const std::vector<std::size_t>& betti, bool finite_pd);

/// Rows "i,beta_i,degrees" with a header line.
std::string betti_csv(const FreeResolution& res);

}  // namespace mcm
