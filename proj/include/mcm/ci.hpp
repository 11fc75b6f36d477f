#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcm/quiver.hpp"

namespace mcm {

/// A = Q / (u_1, ..., u_c) with u a homogeneous regular sequence in the
/// polynomial ring Q.
struct CIPresentation {
  RingPtr poly;
  RingPtr quotient;
  std::vector<RingElement> u;  // elements of Q
  int codim() const noexcept { return static_cast<int>(u.size()); }
};

/// Reads the relations of A as the regular sequence. Throws InputError when
/// the Hilbert series is not that of a complete intersection.
CIPresentation ci_presentation(const RingPtr& quotient);

/// Ext^n(M, k) for n <= H with the operators t_1..t_c of degree 2.
struct ExtTModule {
  PrimeField field;
  int window = 0;  // H
  int codim = 0;
  std::vector<std::size_t> dims;               // dims[n] = beta_n(M)
  std::vector<std::vector<int>> degrees;       // internal degrees of F_n
  std::vector<std::vector<Matrix>> ops;        // ops[j][n]: Ext^n -> Ext^{n+2}
  std::vector<FreeMap> lifts;                  // lifts[n] = d_n over Q, n >= 1 (lifts[0] unused)
  std::vector<std::vector<FreeMap>> tilde;     // tilde[j][n]: F_n -> F_{n-2} over Q, n >= 2
  bool finite_pd = false;

  /// Action of the monomial t^a on Ext^n.
  Matrix act(const std::vector<int>& a, int n) const;
};

/// Lifts the minimal resolution of M to Q and solves d~ d~ = sum u_j t~_j.
/// A nonzero perturb seed adds random multiples of u to every lifted
/// differential first; the induced maps on Ext must not change.
ExtTModule eisenbud_operators(const CIPresentation& ci, const GradedModule& m, int window,
                              const Bounds& bounds, std::uint64_t perturb = 0);

/// t_i t_j = t_j t_i on every piece of the window.
bool operators_commute(const ExtTModule& e);

/// Exponent vectors of degree e in c variables, lexicographically descending.
std::vector<std::vector<int>> t_monomials(int c, int e);

/// A homogeneous polynomial in t_1..t_c, coefficients over t_monomials(c, degree).
struct TForm {
  int degree = 0;
  Vec coeffs;
};

std::string to_string(const PrimeField& field, int c, const TForm& f);

struct SupportVarietyReport {
  int window = 0;
  int t_degree_max = 0;
  int codim = 0;
  std::vector<std::vector<Vec>> ann_by_degree;  // basis of ann_T in each t-degree 0..t_degree_max
  std::vector<TForm> ann_generators;            // minimal generators within the window
  std::optional<int> dim;                       // projective dimension of V*(M); -1 when empty
  std::optional<int> cx_from_variety;
  std::optional<int> cx_from_growth;
  bool is_point = false;
  bool stable = false;  // window deep enough and both estimates agree

  std::vector<std::string> ann_strings(const PrimeField& field) const;
};

SupportVarietyReport support_annihilator_window(const ExtTModule& e, int t_degree_max);

/// ann_T of a direct sum equals the intersection of the annihilators, degree by degree.
bool annihilators_intersect(const SupportVarietyReport& sum, const SupportVarietyReport& a,
                            const SupportVarietyReport& b, const PrimeField& field);

/// Same annihilator windows, degree by degree.
bool same_annihilator(const SupportVarietyReport& a, const SupportVarietyReport& b, const PrimeField& field);

struct VarietyComponentReport {
  std::vector<std::size_t> vertices;
  bool constant = false;
};

/// Compares the annihilator windows of the vertices in each stable component.
std::vector<VarietyComponentReport> variety_component_check(const ARQuiver& q, const CIPresentation& ci,
                                                            int window, int t_degree_max,
                                                            const Bounds& bounds);

}  // namespace mcm
