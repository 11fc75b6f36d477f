#include "mcm/functors.hpp"

#include <algorithm>
#include <set>

#include "mcm/errors.hpp"

namespace mcm {

StableModule stable_part(const GradedModule& m, const Bounds& /*bounds*/) {
  StableModule out;
  auto M = minimal_presentation(m);
  const auto& A = M.ring();
  bool found = true;
  while (found && M.num_generators() > 0) {
    found = false;
    std::set<int> degs(M.gen_degrees().begin(), M.gen_degrees().end());
    for (int a : degs) {
      // A surjection M -> A(-a) has a constant entry in its top row.
      HomSpace H(M, GradedModule::free(A, {a}));
      for (const auto& h : H.basis()) {
        auto top = top_matrix(H, h);
        std::size_t i = 0;
        while (i < top.cols() && top(0, i) == 0) ++i;
        if (i == top.cols()) continue;
        // Generator i spans a free summand; the quotient is its complement.
        const auto& p = M.piece(a);
        Vec e(p.layout.total, 0);
        e[p.layout.offsets[i]] = 1;
        M = minimal_presentation(quotient_by(M, {{a, e}}));
        out.free_degrees.push_back(a);
        found = true;
        break;
      }
      if (found) break;
    }
  }
  std::sort(out.free_degrees.begin(), out.free_degrees.end());
  out.module = M;
  return out;
}

GradedModule dual(const GradedModule& m, const Bounds& bounds, bool check) {
  if (check && !mcm_test(m, bounds)) throw InputError("dual requires a maximal Cohen-Macaulay module");
  auto M = minimal_presentation(m);
  const auto& P = M.presentation();
  if (M.num_generators() == 0) return M;
  auto dp = dual_map(P);
  FreeMap cycles;
  if (P.cols() == 0) {
    // Free module: every element of F0* is a cycle.
    cycles = FreeMap(P.ring, dp.source, dp.source);
    for (std::size_t i = 0; i < dp.source.size(); ++i) cycles.at(i, i) = P.ring->one();
  } else {
    cycles = kernel_generators(dp, bounds);
  }
  return image_module(cycles, bounds);
}

GradedModule transpose(const GradedModule& m) {
  auto M = minimal_presentation(m);
  const auto& P = M.presentation();
  return minimal_presentation(GradedModule(dual_map(P)));
}

GradedModule link(const GradedModule& m, const Bounds& bounds) {
  auto s = stable_part(m, bounds);
  return minimal_presentation(syzygy(transpose(s.module), 1, bounds));
}

GradedModule cosyzygy(const GradedModule& m, int n, const Bounds& bounds) {
  if (n < 0) throw UsageError("negative cosyzygy index");
  auto d = dual(m, bounds, false);
  return dual(syzygy(d, n, bounds), bounds, false);
}

GradedModule syzygy_signed(const GradedModule& m, int n, const Bounds& bounds) {
  if (n >= 0) return minimal_presentation(syzygy(m, n, bounds));
  return cosyzygy(m, -n, bounds);
}

GradedModule ar_translate(const GradedModule& m, const Bounds& bounds) {
  int d = krull_dimension(m.ring(), bounds);
  return syzygy_signed(stable_part(m, bounds).module, 2 - d, bounds);
}

namespace {

FreeMap concat_columns(const FreeMap& a, const FreeMap& b) {
  if (a.target != b.target) throw UsageError("concatenating maps with different targets");
  std::vector<int> src = a.source;
  src.insert(src.end(), b.source.begin(), b.source.end());
  FreeMap out(a.ring, a.target, src);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
  }
  return out;
}

FreeMap identity_map(const RingPtr& ring, const std::vector<int>& degs) {
  FreeMap id(ring, degs, degs);
  for (std::size_t i = 0; i < degs.size(); ++i) id.at(i, i) = ring->one();
  return id;
}

std::vector<int> negated(const std::vector<int>& v) {
  std::vector<int> out;
  for (int d : v) out.push_back(-d);
  return out;
}

}  // namespace

GradedModule ext_module(const GradedModule& m, int n, const Bounds& bounds) {
  if (n < 0) throw UsageError("negative Ext index");
  const auto& ring = m.ring();
  auto res = resolve(m, n + 1, bounds);
  if (n > res.length()) return GradedModule::zero(ring);
  const auto& Fn = res.degrees[static_cast<std::size_t>(n)];
  if (Fn.empty()) return GradedModule::zero(ring);
  auto dual_fn = negated(Fn);
  FreeMap cycles = n + 1 <= res.length() ? kernel_generators(dual_map(res.differential(n + 1)), bounds)
                                         : identity_map(ring, dual_fn);
  if (cycles.cols() == 0) return GradedModule::zero(ring);
  FreeMap boundaries = n >= 1 ? dual_map(res.differential(n)) : FreeMap(ring, dual_fn, {});
  // Relations among the cycle generators: first block of ker [cycles | boundaries].
  auto rel = kernel_generators(concat_columns(cycles, boundaries), bounds);
  FreeMap pres(ring, cycles.source, rel.source);
  for (std::size_t i = 0; i < cycles.cols(); ++i)
    for (std::size_t j = 0; j < rel.cols(); ++j) pres.at(i, j) = rel.at(i, j);
  return minimal_presentation(GradedModule(pres));
}

int codimension(const GradedModule& m, const Bounds& bounds) {
  auto hm = hilbert_samuel(m, bounds);
  if (hm.dim < 0) throw InputError("codimension of the zero module");
  return krull_dimension(m.ring(), bounds) - hm.dim;
}

GradedModule mcm_approx(const GradedModule& m, const Bounds& bounds) {
  auto M = minimal_presentation(m);
  if (M.num_generators() == 0) return M;
  int n = codimension(M, bounds);
  int d = krull_dimension(M.ring(), bounds);
  // Over a Gorenstein ring M is Cohen-Macaulay of codimension n exactly when
  // Ext^i(M, A) vanishes for i != n.
  for (int i = 0; i <= d; ++i)
    if (i != n && !ext_module(M, i, bounds).is_zero_module()) return mcm_approx_via_syzygies(M, bounds);
  if (n == 0) return M;
  auto dual_module = ext_module(M, n, bounds);
  auto res = resolve(dual_module, n + 1, bounds);
  return dual(syzygy_from(res, n), bounds, false);
}

GradedModule mcm_approx_via_syzygies(const GradedModule& m, const Bounds& bounds) {
  int d = krull_dimension(m.ring(), bounds);
  return cosyzygy(minimal_presentation(syzygy(m, d, bounds)), d, bounds);
}

LiftedMap lift_map(const HomSpace& space, const Vec& f, const Bounds& bounds) {
  const auto& M = space.source();
  const auto& N = space.target();
  const auto& A = *M.ring();
  const auto& PM = M.presentation();
  const auto& PN = N.presentation();
  LiftedMap out{GradedModule(kernel_generators(PM, bounds)), GradedModule(kernel_generators(PN, bounds)), {}};
  std::vector<Vec> lifts;
  for (std::size_t i = 0; i < M.num_generators(); ++i)
    lifts.push_back(N.piece(M.gen_degrees()[i]).lift(space.image(f, i)));
  for (std::size_t j = 0; j < PM.cols(); ++j) {
    int s = PM.source[j];
    // f0 applied to the relation column j lies in the image of PN.
    auto layout = free_layout(A, N.gen_degrees(), s);
    Vec img(layout.total, 0);
    for (std::size_t i = 0; i < PM.rows(); ++i) {
      if (PM.at(i, j).is_zero()) continue;
      free_scale_accumulate(A, N.gen_degrees(), M.gen_degrees()[i], lifts[i], PM.at(i, j), img);
    }
    Vec x;
    if (PN.cols() == 0) {
      if (!is_zero_vec(img)) throw UsageError("lift_map: input is not a homomorphism");
    } else {
      auto sol = solve(degree_matrix(PN, s), img);
      if (!sol) throw UsageError("lift_map: input is not a homomorphism");
      x = std::move(*sol);
    }
    const auto& piece = out.target.piece(s);
    Vec nf = PN.cols() == 0 ? Vec{} : piece.normal_form(std::move(x));
    out.map.insert(out.map.end(), nf.begin(), nf.end());
  }
  return out;
}

StableHom stable_hom(const GradedModule& m, const GradedModule& n) {
  HomSpace H(m, n);
  return StableHom{H.dim(), beta_basis(H).size()};
}

}  // namespace mcm
