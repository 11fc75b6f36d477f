#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "mcm/bounds.hpp"
#include "mcm/linalg.hpp"
#include "mcm/ring.hpp"

namespace mcm {

/// Block layout of the degree-d piece of a graded free module.
struct FreeLayout {
  int degree = 0;
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> dims;
  std::size_t total = 0;
};

FreeLayout free_layout(const QuotientRing& ring, std::span<const int> degs, int d);

/// Homogeneous matrix between graded free modules. Column j is the image
/// of source generator j; entry (i, j) has degree source[j] - target[i].
struct FreeMap {
  RingPtr ring;
  std::vector<int> target;
  std::vector<int> source;
  std::vector<RingElement> entries;

  FreeMap() = default;
  FreeMap(RingPtr ring, std::vector<int> target, std::vector<int> source);

  std::size_t rows() const noexcept { return target.size(); }
  std::size_t cols() const noexcept { return source.size(); }
  RingElement& at(std::size_t i, std::size_t j) { return entries[i * source.size() + j]; }
  const RingElement& at(std::size_t i, std::size_t j) const { return entries[i * source.size() + j]; }
  int entry_degree(std::size_t i, std::size_t j) const { return source[j] - target[i]; }
  int max_entry_degree() const;
  /// Throws InputError if some nonzero entry has the wrong degree.
  void check_degrees() const;
  /// Keeps only the listed columns.
  FreeMap select_columns(const std::vector<std::size_t>& cols) const;
  /// The matrix with both degree lists moved by -s.
  FreeMap shifted(int s) const;
};

Matrix degree_matrix(const FreeMap& phi, int d);
Vec apply_free_map(const FreeMap& phi, int d, std::span<const PrimeField::Element> v);
/// out += c * v, with v in F_d and out in F_{d + deg c}.
void free_scale_accumulate(const QuotientRing& ring, std::span<const int> degs, int d,
                           std::span<const PrimeField::Element> v, const RingElement& c,
                           std::span<PrimeField::Element> out);
std::vector<RingElement> split_vector(const QuotientRing& ring, std::span<const int> degs, int d,
                                      std::span<const PrimeField::Element> v);
Vec join_vector(const QuotientRing& ring, std::span<const int> degs, int d,
                const std::vector<RingElement>& comps);
FreeMap compose(const FreeMap& a, const FreeMap& b);
/// Hom(-, A) of a free map: transpose with negated degrees.
FreeMap dual_map(const FreeMap& phi);
FreeMap direct_sum(const FreeMap& a, const FreeMap& b);
/// Columns for a minimal homogeneous generating set of ker(phi).
FreeMap kernel_generators(const FreeMap& phi, const Bounds& bounds);
/// Drops columns already generated by the others (graded Nakayama).
FreeMap prune_columns(const FreeMap& gens);

/// Degree-d piece of a cokernel: the free piece modulo relation images.
struct ModulePiece {
  FreeLayout layout;
  EchelonBasis<PrimeField> relations;
  std::vector<std::uint32_t> basis_coords;
  std::vector<std::int32_t> coord_index;

  std::size_t dim() const noexcept { return basis_coords.size(); }
  Vec normal_form(Vec ambient) const;
  Vec lift(std::span<const PrimeField::Element> q) const;
};

/// Finitely presented graded module coker(F1 -> F0).
class GradedModule {
 public:
  GradedModule() = default;
  explicit GradedModule(FreeMap presentation);

  static GradedModule free(RingPtr ring, std::vector<int> degs);
  static GradedModule zero(RingPtr ring);
  static GradedModule residue_field(RingPtr ring, int degree = 0);
  /// A / (gens) with the generator in degree 0.
  static GradedModule cyclic(RingPtr ring, const std::vector<RingElement>& gens);

  const RingPtr& ring() const noexcept { return pres_.ring; }
  const FreeMap& presentation() const noexcept { return pres_; }
  const std::vector<int>& gen_degrees() const noexcept { return pres_.target; }
  const std::vector<int>& rel_degrees() const noexcept { return pres_.source; }
  std::size_t num_generators() const noexcept { return pres_.target.size(); }
  std::size_t num_relations() const noexcept { return pres_.source.size(); }
  int shift() const noexcept { return shift_; }

  /// M(s): same module with every degree lowered by s.
  GradedModule shifted(int s) const;
  const ModulePiece& piece(int d) const;
  std::size_t dim(int d) const { return piece(d).dim(); }
  bool is_free() const noexcept { return pres_.source.empty(); }
  bool same_ring(const GradedModule& o) const noexcept { return ring().get() == o.ring().get(); }
  int min_gen_degree() const;
  int max_gen_degree() const;
  bool is_zero_module() const noexcept { return pres_.target.empty(); }

 private:
  struct Cache {
    FreeMap base;
    std::mutex mutex;
    std::map<int, std::unique_ptr<ModulePiece>> pieces;
  };
  std::shared_ptr<Cache> cache_;
  FreeMap pres_;
  int shift_ = 0;
};

GradedModule direct_sum(const GradedModule& a, const GradedModule& b);
/// M modulo the submodule generated by elements of F0 (given as F0 pieces).
GradedModule quotient_by(const GradedModule& m, const std::vector<std::pair<int, Vec>>& elements);
/// Same module, presented without unit entries or redundant relations.
GradedModule minimal_presentation(const GradedModule& m);
/// The image of phi, presented by the kernel of phi.
GradedModule image_module(const FreeMap& phi, const Bounds& bounds);
/// The ideal generated by homogeneous elements, as a module.
GradedModule ideal_module(const RingPtr& ring, const std::vector<RingElement>& gens, const Bounds& bounds);
/// The maximal homogeneous ideal as a module.
GradedModule maximal_ideal(const RingPtr& ring, const Bounds& bounds);
/// Minimal number of generators.
std::size_t mu(const GradedModule& m);

/// Degree-0 homomorphisms M -> N. A hom is stored by the images of the
/// generators of M, concatenated in quotient coordinates of N.
class HomSpace {
 public:
  HomSpace(const GradedModule& source, const GradedModule& target);

  const GradedModule& source() const noexcept { return source_; }
  const GradedModule& target() const noexcept { return target_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t coord_dim() const noexcept { return total_; }
  const std::vector<Vec>& basis() const noexcept { return basis_; }
  std::size_t block_offset(std::size_t i) const { return offsets_[i]; }
  std::size_t block_dim(std::size_t i) const { return dims_[i]; }
  std::span<const PrimeField::Element> image(const Vec& h, std::size_t i) const {
    return {h.data() + offsets_[i], dims_[i]};
  }
  /// Linear combination of the basis.
  Vec combine(std::span<const PrimeField::Element> coeffs) const;
  /// Coefficients of h in the basis; nothing if h is not a hom.
  std::optional<Vec> coefficients(const Vec& h) const;
  Vec identity() const;

 private:
  GradedModule source_;
  GradedModule target_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> dims_;
  std::size_t total_ = 0;
  std::vector<Vec> basis_;
  mutable std::unique_ptr<EchelonBasis<PrimeField>> echelon_;
  mutable std::vector<Vec> echelon_coeffs_;
};

/// Matrix of h on degree-d pieces, dim N_d x dim M_d.
Matrix action_matrix(const HomSpace& space, const Vec& h, int d);
/// g o f, where f lies in (M, N) and g in (N, L); coordinates in (M, L).
/// The g side may use N(u) and L(u) for a common shift u; the result is
/// then read in (M, L(-u)), whose coordinates agree with (M, L) up to the shift.
Vec compose(const HomSpace& gspace, const Vec& g, const HomSpace& fspace, const Vec& f);
/// Induced map on M/mM -> N/mN, mu(N) x mu(M); both modules minimal.
Matrix top_matrix(const HomSpace& space, const Vec& h);
/// Basis of the maps that factor through a free module.
std::vector<Vec> beta_basis(const HomSpace& space);

/// Shift s with M isomorphic to N(s), if one exists. Decomposable modules
/// whose summands need different shifts are not matched here.
std::optional<int> find_shift_isomorphism(const GradedModule& m, const GradedModule& n,
                                          const Bounds& bounds);
/// Graded isomorphism M = N in degree 0.
bool is_isomorphic(const GradedModule& m, const GradedModule& n, const Bounds& bounds);
/// Isomorphism after forgetting the grading: summands may be shifted
/// independently.
bool is_isomorphic_ungraded(const GradedModule& m, const GradedModule& n, const Bounds& bounds);

/// Nilpotent ideal of End_0(M) with a field as quotient.
struct LocalEndomorphisms {
  std::vector<Vec> radical;  // hom coordinates spanning rad End
  int residue_dim = 1;       // dim_k End/rad
};

/// Certifies that End_0(M) is local; nothing if it is not.
std::optional<LocalEndomorphisms> local_endomorphism_ring(const HomSpace& end, const Bounds& bounds);

struct Summand {
  GradedModule module;
  int multiplicity = 1;
  int residue_dim = 1;
};

struct Decomposition {
  std::vector<Summand> summands;
  std::size_t count() const {
    std::size_t c = 0;
    for (const auto& s : summands) c += s.multiplicity;
    return c;
  }
  bool residue_flag() const {
    for (const auto& s : summands)
      if (s.residue_dim > 1) return true;
    return false;
  }
};

/// Krull-Schmidt decomposition; summands grouped up to isomorphism and shift.
Decomposition decompose(const GradedModule& m, const Bounds& bounds);
/// Splits M once; nothing when End_0(M) is local.
std::optional<std::pair<GradedModule, GradedModule>> split_once(const GradedModule& m,
                                                               const Bounds& bounds);
bool is_indecomposable(const GradedModule& m, const Bounds& bounds);

struct HilbertSamuel {
  std::vector<std::size_t> lengths;  // l(M / m^s M) for s = 1..
  int dim = -1;
  std::size_t multiplicity = 0;
};

HilbertSamuel hilbert_samuel(const GradedModule& m, const Bounds& bounds);
std::size_t multiplicity(const GradedModule& m, const Bounds& bounds);

struct ModuleInvariants {
  std::size_t mu = 0;
  std::vector<std::pair<int, std::size_t>> hilbert_window;
  std::optional<std::size_t> length;
  std::size_t multiplicity = 0;
  int dim = -1;
  std::size_t rank_num = 0;
  std::size_t rank_den = 1;
  bool rank_integral = true;
};

ModuleInvariants invariants(const GradedModule& m, const Bounds& bounds);
bool ulrich_test(const GradedModule& m, const Bounds& bounds);

std::vector<std::size_t> hilbert_values(const GradedModule& m, int from, int to);

}  // namespace mcm
