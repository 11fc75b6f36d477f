#pragma once

#include <string>
#include <vector>

#include "mcm/resolution.hpp"

namespace mcm {

/// A = Q / (f) together with the polynomial ring Q over the same variables.
struct Hypersurface {
  RingPtr poly;      // Q
  RingPtr quotient;  // A
  RingElement f;     // f as an element of Q
  int degree = 0;
};

Hypersurface make_hypersurface(PrimeField field, std::vector<std::string> vars, std::vector<int> weights,
                               const std::string& f);
/// The hypersurface whose quotient is the given ring; throws InputError
/// unless the ring has exactly one relation.
Hypersurface hypersurface_of(const RingPtr& quotient);

/// Same element read in another quotient of the same polynomial ring.
RingElement change_ring(const RingElement& a, const QuotientRing& target);
FreeMap change_ring(const FreeMap& phi, const RingPtr& target);

/// Matrix of homogeneous entries with generator degrees inferred from the
/// entry degrees; the first row of each connected block sits in degree 0.
/// Throws InputError when no consistent twist exists.
FreeMap matrix_from_strings(const RingPtr& ring, const std::vector<std::vector<std::string>>& entries);

/// phi: G1 -> G0 and psi: G0(-deg f) -> G1 over Q with phi psi = psi phi = f.
struct MatrixFactorization {
  Hypersurface hs;
  FreeMap phi;
  FreeMap psi;
  std::string label;

  std::size_t size() const noexcept { return phi.rows(); }
  bool reduced() const;
};

/// Builds the factorization; psi twists follow from phi. Entries are
/// checked for degree consistency, not for the product identity.
MatrixFactorization make_mf(const Hypersurface& hs, const std::vector<std::vector<std::string>>& phi,
                            const std::vector<std::vector<std::string>>& psi);

bool validate(const MatrixFactorization& mf);
/// Strips the trivial blocks (1, f) and (f, 1).
MatrixFactorization mf_reduce(const MatrixFactorization& mf);
/// coker(phi) over A, after stripping trivial blocks.
GradedModule coker_module(const MatrixFactorization& mf);
/// (psi, phi), twisted so that its cokernel is the first syzygy of coker phi.
MatrixFactorization mf_shift(const MatrixFactorization& mf);
/// Transposes, twisted so that its cokernel is Hom(coker phi, A).
MatrixFactorization mf_transpose(const MatrixFactorization& mf);
MatrixFactorization mf_direct_sum(const MatrixFactorization& a, const MatrixFactorization& b);
/// Reads a factorization off the periodic part of the resolution of M.
MatrixFactorization from_resolution_tail(const GradedModule& m, const Bounds& bounds);

struct Catalog {
  std::string family;
  int index = 0;
  int dim = 1;
  Hypersurface hs;
  std::vector<MatrixFactorization> entries;  // non-free indecomposables
  std::string field_constraint;
  int recommended_degree_cap = 24;
};

/// Reduced factorizations of the non-free indecomposable MCM modules of a
/// simple singularity: family "A", curves n <= 8 and surfaces n <= 4.
/// Throws InputError for unsupported data or an incompatible prime.
Catalog ade_catalog(const std::string& family, int n, int dim, std::uint32_t p);

}  // namespace mcm
