#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mcm/functors.hpp"
#include "mcm/mf.hpp"

namespace mcm {

struct NamedModule {
  std::string name;
  GradedModule module;
};

/// The non-free catalog entries as cokernels, named M1, M2, ... and N+, N-.
std::vector<NamedModule> catalog_modules(const Catalog& catalog);

/// One graded layer of the radical filtration: maps M -> N(t).
struct FiltrationLayer {
  int shift = 0;
  std::size_t hom_dim = 0;
  std::size_t rad1_dim = 0;
  std::size_t rad2_dim = 0;
  std::size_t irr() const noexcept { return rad1_dim - rad2_dim; }
};

/// (M, N)_1 and (M, N)_2 for the members of a catalog of indecomposable
/// modules, pairwise non-isomorphic up to shift. (M, N)_2 composes through
/// every catalog member X and every shift X(u).
class RadicalFiltration {
 public:
  RadicalFiltration(std::vector<GradedModule> catalog, Bounds bounds);

  const std::vector<GradedModule>& catalog() const noexcept { return catalog_; }
  const Bounds& bounds() const noexcept { return bounds_; }

  /// HomSpace(cat_i, cat_j(t)).
  const HomSpace& hom(std::size_t i, std::size_t j, int t);
  /// Basis of (cat_i, cat_j(t))_1.
  const std::vector<Vec>& rad1(std::size_t i, std::size_t j, int t);
  /// Basis of (cat_i, cat_j(t))_2.
  std::vector<Vec> rad2(std::size_t i, std::size_t j, int t);
  FiltrationLayer layer(std::size_t i, std::size_t j, int t);
  /// Shifts t where (cat_i, cat_j(t))_1 / (cat_i, cat_j(t))_2 can be nonzero:
  /// generator degrees of the Hom module, plus variable weights when i = j.
  const std::vector<int>& candidate_shifts(std::size_t i, std::size_t j);
  /// Layers with a nonzero quotient.
  std::vector<FiltrationLayer> irreducible_layers(std::size_t i, std::size_t j);
  std::size_t irr(std::size_t i, std::size_t j);
  /// Irreducible maps cat_i -> cat_j(t): rad1 vectors completing a basis of rad2.
  std::vector<Vec> irreducible_maps(std::size_t i, std::size_t j, int t);

  /// The same filtration for arbitrary modules P, Q isomorphic to catalog
  /// members up to shift; H = HomSpace(P, Q).
  std::vector<Vec> rad1(const HomSpace& H);
  std::vector<Vec> rad2(const HomSpace& H);

 private:
  struct Entry {
    std::unique_ptr<HomSpace> space;
    std::vector<Vec> rad1;
  };
  std::vector<GradedModule> catalog_;
  Bounds bounds_;
  std::vector<std::vector<Vec>> end_radicals_;
  std::map<std::tuple<std::size_t, std::size_t, int>, Entry> cache_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<int>> candidates_;

  void check_cap(const GradedModule& src, const GradedModule& tgt) const;
};

struct QuiverVertex {
  std::string name;
  GradedModule module;
  bool free = false;
  int residue_dim = 1;
  std::size_t mu = 0;
  std::size_t multiplicity = 0;
};

struct Arrow {
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t irr = 0;
  std::vector<FiltrationLayer> layers;  // the shifts carrying irreducible maps
};

struct ARQuiver {
  RingPtr ring;
  int dim = 0;
  std::vector<QuiverVertex> vertices;
  std::vector<Arrow> arrows;                    // positive multiplicities only
  std::vector<std::optional<std::size_t>> tau;  // vertex of tau(M); none for [A]
  std::shared_ptr<RadicalFiltration> filtration;  // catalog index = vertex index

  std::size_t irr(std::size_t from, std::size_t to) const;
  std::optional<std::size_t> free_vertex() const;
  /// Vertices of the stable quiver grouped into connected components.
  std::vector<std::vector<std::size_t>> stable_components() const;
  /// Vertex isomorphic to M up to shift.
  std::optional<std::size_t> find_vertex(const GradedModule& m, const Bounds& bounds) const;
  bool residue_flag() const;
};

/// Builds the quiver from the non-free indecomposables; [A] is added when
/// absent. Throws InputError if the catalog is not closed under tau or the
/// middle terms miss multiplicity.
ARQuiver build_quiver(const RingPtr& ring, const std::vector<NamedModule>& catalog, const Bounds& bounds);

/// tau(M) = Syz_{2-d}(M).
GradedModule tau(const GradedModule& m, const Bounds& bounds);

struct ARSequenceData {
  std::size_t vertex = 0;
  std::size_t tau = 0;
  std::vector<std::pair<std::size_t, std::size_t>> middle;  // (vertex, multiplicity)
  std::size_t middle_free_rank = 0;
  std::size_t middle_mu = 0;
  std::size_t middle_multiplicity = 0;
  bool touches_free = false;  // some arrow into M or out of tau(M) involves [A]

  /// mu(E_M) = mu(M) + mu(tau M), asserted only without free arrows.
  bool mu_identity_applies() const noexcept { return middle_free_rank == 0 && !touches_free; }
};

/// E_M assembled from the arrows ending at M.
ARSequenceData middle_term(const ARQuiver& q, std::size_t vertex);
/// The same middle term read from the arrows leaving tau(M).
std::vector<std::pair<std::size_t, std::size_t>> middle_from_tau(const ARQuiver& q, std::size_t vertex);

enum class QuiverFunctor { Dual, Link };

struct ReverseCheck {
  bool ok = false;
  std::vector<std::size_t> bijection;  // indexed by vertex; [A] maps to itself
  std::string detail;
};

/// Applies D or lambda to every stable vertex and tests whether the induced
/// map reverses all arrows with their multiplicities.
ReverseCheck reverse_iso_check(const ARQuiver& q, QuiverFunctor functor, const Bounds& bounds);

struct OrbitIdeal {
  std::vector<std::optional<int>> per_vertex;  // smallest n, aligned with the component
  std::optional<int> generator;                // common value when constant
  bool constant = false;
};

/// Smallest n in 1..n_max with Syz_n(M) in the component of M.
OrbitIdeal syzygy_orbit_ideal(const ARQuiver& q, const std::vector<std::size_t>& component, int n_max,
                              const Bounds& bounds);

struct VertexProperty {
  enum Kind { Periodic, BoundedNonperiodic, Ulrich, CxEquals, CurvLeq } kind = Periodic;
  int cx = 0;
  double alpha = 1.0;
  std::string name() const;
};

VertexProperty parse_property(const std::string& text);

struct ComponentReport {
  std::vector<std::size_t> vertices;
  std::vector<std::optional<bool>> flags;  // none when a bound was hit
  std::string verdict;                     // "true", "false", "violation" or "partial"
};

std::vector<ComponentReport> component_classify(const ARQuiver& q, const VertexProperty& property,
                                                const Bounds& bounds);

/// Graphviz rendering with vertices sorted by their invariants.
std::string to_dot(const ARQuiver& q);

}  // namespace mcm
