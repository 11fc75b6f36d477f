#include "mcm/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mcm/errors.hpp"

namespace mcm {

std::vector<std::size_t> FreeResolution::betti() const {
  std::vector<std::size_t> b;
  for (const auto& d : degrees) b.push_back(d.size());
  return b;
}

FreeResolution resolve(const GradedModule& m, int steps, const Bounds& bounds) {
  if (steps < 0) throw UsageError("negative homological bound");
  FreeResolution res;
  res.module = minimal_presentation(m);
  res.degrees.push_back(res.module.gen_degrees());
  res.finite = res.module.num_generators() == 0;
  extend(res, steps, bounds);
  return res;
}

void extend(FreeResolution& res, int steps, const Bounds& bounds) {
  while (!res.finite && res.length() < steps) {
    FreeMap next = res.maps.empty() ? res.module.presentation() : kernel_generators(res.maps.back(), bounds);
    if (next.cols() == 0) {
      res.finite = true;
      break;
    }
    res.degrees.push_back(next.source);
    res.maps.push_back(std::move(next));
  }
  res.bound = std::max(res.bound, steps);
}

GradedModule syzygy_from(const FreeResolution& res, int n) {
  if (n < 0) throw UsageError("negative syzygy index");
  const auto& ring = res.module.ring();
  if (n == 0) return res.module;
  if (n > res.length()) {
    if (res.finite) return GradedModule::zero(ring);
    throw UsageError("resolution window too short for the requested syzygy");
  }
  if (n < static_cast<int>(res.maps.size())) return GradedModule(res.maps[static_cast<std::size_t>(n)]);
  if (res.finite) return GradedModule::free(ring, res.degrees[static_cast<std::size_t>(n)]);
  throw UsageError("resolution window too short for the requested syzygy");
}

GradedModule syzygy(const GradedModule& m, int n, const Bounds& bounds) {
  if (n < 0) throw UsageError("negative syzygy index");
  auto res = resolve(m, n + 1, bounds);
  return syzygy_from(res, n);
}

int krull_dimension(const RingPtr& ring, const Bounds& bounds) {
  return hilbert_samuel(GradedModule::free(ring, {0}), bounds).dim;
}

namespace {

// Every kernel generator of d_{i+1}^* lies in the image of d_i^*.
bool cohomology_vanishes(const FreeResolution& res, int i, const Bounds& bounds) {
  const auto& A = *res.module.ring();
  if (i > res.length()) return true;
  const auto& Fi = res.degrees[static_cast<std::size_t>(i)];
  if (Fi.empty()) return true;
  std::vector<int> dual_fi;
  for (int d : Fi) dual_fi.push_back(-d);
  std::vector<std::pair<int, Vec>> cycles;
  if (i + 1 <= res.length()) {
    auto gens = kernel_generators(dual_map(res.differential(i + 1)), bounds);
    for (std::size_t j = 0; j < gens.cols(); ++j) {
      std::vector<RingElement> comps;
      for (std::size_t r = 0; r < gens.rows(); ++r) comps.push_back(gens.at(r, j));
      cycles.emplace_back(gens.source[j], join_vector(A, dual_fi, gens.source[j], comps));
    }
  } else {
    // F_{i+1} = 0: the whole of F_i^* consists of cycles.
    for (std::size_t j = 0; j < Fi.size(); ++j) {
      int e = -Fi[j];
      auto layout = free_layout(A, dual_fi, e);
      Vec v(layout.total, 0);
      v[layout.offsets[j]] = 1;
      cycles.emplace_back(e, std::move(v));
    }
  }
  auto boundary = dual_map(res.differential(i));
  for (const auto& [e, v] : cycles)
    if (!solve(degree_matrix(boundary, e), v)) return false;
  return true;
}

}  // namespace

bool mcm_test(const GradedModule& m, const Bounds& bounds) {
  int d = krull_dimension(m.ring(), bounds);
  auto res = resolve(m, d + 1, bounds);
  if (res.finite && res.length() == 0) return true;
  for (int i = 1; i <= d; ++i)
    if (!cohomology_vanishes(res, i, bounds)) return false;
  return true;
}

std::optional<Period> detect_period(const GradedModule& m, int p_max, int n_max, const Bounds& bounds) {
  if (p_max < 1 || n_max < 0) throw UsageError("period bounds must be positive");
  auto res = resolve(m, n_max + p_max + 1, bounds);
  if (res.finite) return std::nullopt;
  auto betti = res.betti();
  std::vector<std::optional<GradedModule>> syz(static_cast<std::size_t>(n_max + p_max + 1));
  auto get = [&](int n) -> const GradedModule& {
    auto& slot = syz[static_cast<std::size_t>(n)];
    if (!slot) slot = syzygy_from(res, n);
    return *slot;
  };
  for (int p = 1; p <= p_max; ++p) {
    for (int n0 = 0; n0 <= n_max; ++n0) {
      // Betti numbers from n0 on must repeat with period p.
      bool plausible = true;
      for (std::size_t k = static_cast<std::size_t>(n0); k + p < betti.size(); ++k)
        if (betti[k] != betti[k + p]) plausible = false;
      if (!plausible) continue;
      if (find_shift_isomorphism(get(n0), get(n0 + p), bounds)) return Period{n0, p};
    }
  }
  return std::nullopt;
}

namespace {

// Smallest r with the r-th differences constant on the last three values.
std::optional<int> polynomial_order(const std::vector<double>& seq, int max_order) {
  std::vector<double> diff = seq;
  for (int r = 0; r <= max_order; ++r) {
    if (diff.size() < 3) return std::nullopt;
    std::size_t n = diff.size();
    if (diff[n - 1] == diff[n - 2] && diff[n - 2] == diff[n - 3]) return r;
    std::vector<double> next;
    for (std::size_t k = 1; k < diff.size(); ++k) next.push_back(diff[k] - diff[k - 1]);
    diff = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

GrowthReport growth_from_betti(const std::vector<std::size_t>& betti, bool finite_pd) {
  GrowthReport g;
  g.betti = betti;
  g.finite_pd = finite_pd;
  if (finite_pd) {
    g.cx = 0;
    g.cx_confident = true;
    g.curv = 0.0;
    g.curv_confident = true;
    return g;
  }
  int H = static_cast<int>(betti.size()) - 1;
  // Even and odd subsequences separately: quasi-polynomial growth of period 2.
  std::vector<double> even, odd;
  for (int n = 1; n <= H; ++n) (n % 2 ? odd : even).push_back(static_cast<double>(betti[n]));
  auto re = polynomial_order(even, 4);
  auto ro = polynomial_order(odd, 4);
  int w = std::max(1, (H + 2) / 3);
  if (H >= 1) {
    int from = std::max(1, H - w);
    if (betti[from] > 0)
      g.tail_ratio = std::pow(static_cast<double>(betti[H]) / static_cast<double>(betti[from]),
                              1.0 / static_cast<double>(H - from));
  }
  if (re && ro) {
    g.cx = std::max(*re, *ro) + 1;
    g.cx_confident = true;
    g.curv = 1.0;
    g.curv_confident = true;
    return g;
  }
  double root = 0.0;
  for (int n = std::max(1, H - w + 1); n <= H; ++n)
    root = std::max(root, std::pow(static_cast<double>(betti[n]), 1.0 / n));
  if (g.tail_ratio > 1.05) {
    g.cx.reset();
    g.curv = std::max({1.0, root, g.tail_ratio});
  } else {
    // Slow growth without an exact fit: log-log slope, low confidence.
    double x0 = std::log(static_cast<double>(std::max(1, H - w))), x1 = std::log(static_cast<double>(H));
    double y0 = std::log(static_cast<double>(std::max<std::size_t>(1, betti[std::max(1, H - w)])));
    double y1 = std::log(static_cast<double>(std::max<std::size_t>(1, betti[H])));
    double slope = x1 > x0 ? (y1 - y0) / (x1 - x0) : 0.0;
    g.cx = std::max(1, static_cast<int>(std::lround(slope)) + 1);
    g.curv = 1.0;
  }
  return g;
}

GrowthReport growth_report(const GradedModule& m, const Bounds& bounds, bool compare_with_residue) {
  auto res = resolve(m, bounds.hom_bound, bounds);
  auto g = growth_from_betti(res.betti(), res.finite);
  if (!compare_with_residue) return g;
  auto kres = resolve(GradedModule::residue_field(m.ring()), bounds.hom_bound, bounds);
  auto k = growth_from_betti(kres.betti(), kres.finite);
  g.extremal_cx = !g.finite_pd && g.cx == k.cx;
  g.extremal_curv = !g.finite_pd && k.curv > 1.0 + 1e-9 && g.curv >= k.curv * (1.0 - 0.01);
  return g;
}

std::string betti_csv(const FreeResolution& res) {
  std::ostringstream out;
  out << "i,beta,degrees\n";
  for (std::size_t i = 0; i < res.degrees.size(); ++i) {
    out << i << ',' << res.degrees[i].size() << ",\"";
    for (std::size_t j = 0; j < res.degrees[i].size(); ++j) out << (j ? " " : "") << res.degrees[i][j];
    out << "\"\n";
  }
  return out.str();
}

}  // namespace mcm
