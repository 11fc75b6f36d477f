#pragma once

#include "mcm/resolution.hpp"

namespace mcm {

/// M with its free summands removed.
struct StableModule {
  GradedModule module;
  std::vector<int> free_degrees;  // generator degrees of the stripped free part

  bool stripped() const noexcept { return !free_degrees.empty(); }
};

StableModule stable_part(const GradedModule& m, const Bounds& bounds);

/// M* = Hom(M, A). With check set, non-MCM input raises InputError.
GradedModule dual(const GradedModule& m, const Bounds& bounds, bool check = true);
/// Tr M: cokernel of the dual of the minimal presentation.
GradedModule transpose(const GradedModule& m);
/// lambda(M) = Syz_1(Tr M) after stripping free summands.
GradedModule link(const GradedModule& m, const Bounds& bounds);
/// Syz_{-n}(M) = D(Syz_n(D(M))).
GradedModule cosyzygy(const GradedModule& m, int n, const Bounds& bounds);
/// Syz_n for n >= 0 and Syz_{-n} for negative n.
GradedModule syzygy_signed(const GradedModule& m, int n, const Bounds& bounds);
/// Auslander-Reiten translate Syz_{2-d}(M) on stable MCM modules.
GradedModule ar_translate(const GradedModule& m, const Bounds& bounds);

/// Ext^n(M, A) as a graded module.
GradedModule ext_module(const GradedModule& m, int n, const Bounds& bounds);
/// Codimension dim A - dim M from Hilbert-Samuel fits.
int codimension(const GradedModule& m, const Bounds& bounds);
/// MCM approximation: (Syz_n(Ext^n(M, A)))* for a Cohen-Macaulay module of
/// codimension n, otherwise mcm_approx_via_syzygies.
GradedModule mcm_approx(const GradedModule& m, const Bounds& bounds);
/// Same approximation in the stable category via Syz_{-d}(Syz_d(M)).
GradedModule mcm_approx_via_syzygies(const GradedModule& m, const Bounds& bounds);

/// A map f: M -> N carried to the first syzygies of the given presentations.
struct LiftedMap {
  GradedModule source;  // Syz_1(M), generated by the relations of M
  GradedModule target;  // Syz_1(N)
  Vec map;              // coordinates in HomSpace(source, target)
};

LiftedMap lift_map(const HomSpace& space, const Vec& f, const Bounds& bounds);

struct StableHom {
  std::size_t hom_dim = 0;
  std::size_t beta_dim = 0;
  std::size_t dim() const noexcept { return hom_dim - beta_dim; }
};

/// Hom(M, N) modulo the maps factoring through a free module.
StableHom stable_hom(const GradedModule& m, const GradedModule& n);

}  // namespace mcm
