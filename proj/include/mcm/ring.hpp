#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mcm/field.hpp"
#include "mcm/linalg.hpp"

namespace mcm {

using Exponent = std::vector<int>;

/// Sparse polynomial with integer coefficients, as parsed from text.
using Polynomial = std::map<Exponent, std::int64_t>;

/// Monomials of one weighted degree, listed in descending lex order.
struct MonomialPiece {
  int degree = 0;
  std::vector<Exponent> exps;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
};

/// k[x_1..x_n] with positive integer weights.
class WeightedPolyRing {
 public:
  WeightedPolyRing(PrimeField field, std::vector<std::string> vars, std::vector<int> weights);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t num_vars() const noexcept { return vars_.size(); }
  const std::vector<std::string>& variables() const noexcept { return vars_; }
  const std::vector<int>& weights() const noexcept { return weights_; }
  int max_weight() const noexcept { return max_weight_; }

  const MonomialPiece& monomials(int d) const;
  std::size_t monomial_count(int d) const { return d < 0 ? 0 : monomials(d).exps.size(); }
  /// Position of the monomial in its degree piece; throws if absent.
  std::uint32_t index_of(const Exponent& e) const;
  int degree_of(const Exponent& e) const;
  std::uint64_t key(const Exponent& e) const;

  std::string monomial_string(const Exponent& e) const;
  Polynomial parse(const std::string& text) const;

 private:
  PrimeField field_;
  std::vector<std::string> vars_;
  std::vector<int> weights_;
  int max_weight_ = 1;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<MonomialPiece>> cache_;
};

struct SparseEntry {
  std::uint32_t index;
  PrimeField::Element value;
};
using SparseVec = std::vector<SparseEntry>;

/// Degree piece of a quotient ring: which ambient monomials stay as basis
/// elements and how every ambient monomial reduces.
struct RingPiece {
  int degree = 0;
  std::vector<std::uint32_t> standard;      // basis position -> ambient monomial
  std::vector<std::int32_t> ambient_to_std;  // ambient monomial -> basis position or -1
  std::vector<SparseVec> normal_form;        // ambient monomial -> basis coordinates
  std::size_t dim() const noexcept { return standard.size(); }
};

class QuotientRing;

/// Homogeneous element stored by its normal-form coordinates. Negative
/// degrees and empty coordinate lists represent zero.
struct RingElement {
  const QuotientRing* ring = nullptr;
  int degree = 0;
  Vec coords;

  bool is_zero() const noexcept { return is_zero_vec(coords); }
};

/// S/I for a homogeneous ideal I of a weighted polynomial ring S. With no
/// relations this is S itself.
class QuotientRing {
 public:
  QuotientRing(std::shared_ptr<const WeightedPolyRing> ambient, std::vector<Polynomial> relations);

  static std::shared_ptr<QuotientRing> make(PrimeField field, std::vector<std::string> vars,
                                            std::vector<int> weights,
                                            const std::vector<std::string>& relations);

  const WeightedPolyRing& ambient() const noexcept { return *ambient_; }
  std::shared_ptr<const WeightedPolyRing> ambient_ptr() const noexcept { return ambient_; }
  const PrimeField& field() const noexcept { return ambient_->field(); }
  const std::vector<Polynomial>& relations() const noexcept { return relations_; }
  const std::vector<int>& relation_degrees() const noexcept { return relation_degrees_; }
  int max_relation_degree() const noexcept;
  std::size_t num_vars() const noexcept { return ambient_->num_vars(); }
  const std::vector<int>& weights() const noexcept { return ambient_->weights(); }
  int max_weight() const noexcept { return ambient_->max_weight(); }

  const RingPiece& piece(int d) const;
  std::size_t dim(int d) const { return d < 0 ? 0 : piece(d).dim(); }
  std::vector<Exponent> degree_basis(int d) const;

  /// Normal form of an ambient vector of degree d.
  Vec reduce_ambient(int d, std::span<const PrimeField::Element> ambient_coords) const;
  /// Ambient representative of a normal-form vector.
  Vec lift_to_ambient(int d, std::span<const PrimeField::Element> coords) const;

  RingElement zero(int d) const;
  RingElement one() const;
  RingElement variable(std::size_t i) const;
  RingElement element(const Polynomial& p) const;
  RingElement element(const std::string& text) const;
  RingElement from_ambient(int d, std::span<const PrimeField::Element> ambient_coords) const;
  RingElement scalar(PrimeField::Element c) const;

  RingElement multiply(const RingElement& a, const RingElement& b) const;
  RingElement add(const RingElement& a, const RingElement& b) const;
  RingElement sub(const RingElement& a, const RingElement& b) const;
  RingElement neg(const RingElement& a) const;
  RingElement scale(const RingElement& a, PrimeField::Element c) const;
  /// Coefficient of 1 when deg a = 0, otherwise zero.
  PrimeField::Element constant_term(const RingElement& a) const;

  /// out += a * v where v has degree dv and out has degree dv + deg a.
  void multiply_accumulate(const RingElement& a, int dv, std::span<const PrimeField::Element> v,
                           std::span<PrimeField::Element> out) const;
  /// Normal forms of products of basis elements: entry [i * dim(d2) + j].
  const std::vector<const SparseVec*>& product_table(int d1, int d2) const;

  /// Hilbert function values at 0..n.
  std::vector<std::size_t> hilbert_window(int n) const;
  /// Largest d with A_d != 0 when A is Artinian and that degree is at most
  /// cap; -1 otherwise.
  int top_degree(int cap) const;

  /// Degree-e piece of m^s (spanned by monomials with at least s factors).
  const EchelonBasis<PrimeField>& power_of_maximal_ideal(int s, int e) const;

  std::string to_string(const RingElement& a) const;

  void check_owner(const RingElement& a) const;

 private:
  std::shared_ptr<const WeightedPolyRing> ambient_;
  std::vector<Polynomial> relations_;
  std::vector<int> relation_degrees_;
  std::vector<std::pair<int, Vec>> relation_vectors_;

  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<RingPiece>> pieces_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<std::vector<const SparseVec*>>> tables_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<EchelonBasis<PrimeField>>> powers_;

  std::unique_ptr<RingPiece> compute_piece(int d) const;
};

using RingPtr = std::shared_ptr<const QuotientRing>;

/// True when the Hilbert series of A agrees with that of a complete
/// intersection cut out by its relations, checked through degree `bound`.
bool hilbert_matches_complete_intersection(const QuotientRing& ring, int bound);

}  // namespace mcm
