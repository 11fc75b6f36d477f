#include "mcm/module.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>
#include <random>

#include "mcm/upoly.hpp"

namespace mcm {

// ---------------------------------------------------------------- free maps

FreeLayout free_layout(const QuotientRing& ring, std::span<const int> degs, int d) {
  FreeLayout l;
  l.degree = d;
  l.offsets.resize(degs.size());
  l.dims.resize(degs.size());
  for (std::size_t i = 0; i < degs.size(); ++i) {
    l.offsets[i] = l.total;
    l.dims[i] = ring.dim(d - degs[i]);
    l.total += l.dims[i];
  }
  return l;
}

FreeMap::FreeMap(RingPtr r, std::vector<int> t, std::vector<int> s)
    : ring(std::move(r)), target(std::move(t)), source(std::move(s)) {
  entries.resize(target.size() * source.size());
  for (std::size_t i = 0; i < target.size(); ++i)
    for (std::size_t j = 0; j < source.size(); ++j)
      entries[i * source.size() + j] = RingElement{ring.get(), source[j] - target[i], {}};
}

int FreeMap::max_entry_degree() const {
  int m = 0;
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j)
      if (!at(i, j).is_zero()) m = std::max(m, entry_degree(i, j));
  return m;
}

void FreeMap::check_degrees() const {
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) {
      const auto& e = at(i, j);
      if (e.is_zero()) continue;
      if (e.degree != entry_degree(i, j))
        throw InputError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") has degree " +
                         std::to_string(e.degree) + ", expected " +
                         std::to_string(entry_degree(i, j)));
    }
}

FreeMap FreeMap::select_columns(const std::vector<std::size_t>& cols) const {
  std::vector<int> src;
  for (auto c : cols) src.push_back(source[c]);
  FreeMap out(ring, target, src);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < cols.size(); ++k) out.at(i, k) = at(i, cols[k]);
  return out;
}

FreeMap FreeMap::shifted(int s) const {
  FreeMap out = *this;
  for (auto& d : out.target) d -= s;
  for (auto& d : out.source) d -= s;
  return out;
}

Matrix degree_matrix(const FreeMap& phi, int d) {
  const auto& A = *phi.ring;
  const auto& f = A.field();
  auto src = free_layout(A, phi.source, d);
  auto tgt = free_layout(A, phi.target, d);
  Matrix m(f, tgt.total, src.total);
  for (std::size_t j = 0; j < phi.cols(); ++j) {
    int dj = d - phi.source[j];
    std::size_t n2 = src.dims[j];
    if (dj < 0 || n2 == 0) continue;
    for (std::size_t i = 0; i < phi.rows(); ++i) {
      const auto& e = phi.at(i, j);
      if (e.is_zero()) continue;
      const auto& table = A.product_table(e.degree, dj);
      for (std::size_t a = 0; a < e.coords.size(); ++a) {
        if (e.coords[a] == 0) continue;
        for (std::size_t k = 0; k < n2; ++k)
          for (const auto& [idx, x] : *table[a * n2 + k]) {
            auto& cell = m(tgt.offsets[i] + idx, src.offsets[j] + k);
            cell = f.add(cell, f.mul(e.coords[a], x));
          }
      }
    }
  }
  return m;
}

Vec apply_free_map(const FreeMap& phi, int d, std::span<const PrimeField::Element> v) {
  const auto& A = *phi.ring;
  auto src = free_layout(A, phi.source, d);
  auto tgt = free_layout(A, phi.target, d);
  if (v.size() != src.total) throw UsageError("apply_free_map: vector has wrong length");
  Vec out(tgt.total, 0);
  for (std::size_t j = 0; j < phi.cols(); ++j) {
    if (src.dims[j] == 0) continue;
    auto block = v.subspan(src.offsets[j], src.dims[j]);
    if (is_zero_vec(block)) continue;
    for (std::size_t i = 0; i < phi.rows(); ++i) {
      const auto& e = phi.at(i, j);
      if (e.is_zero()) continue;
      A.multiply_accumulate(e, d - phi.source[j], block,
                            std::span<PrimeField::Element>(out).subspan(tgt.offsets[i], tgt.dims[i]));
    }
  }
  return out;
}

void free_scale_accumulate(const QuotientRing& ring, std::span<const int> degs, int d,
                           std::span<const PrimeField::Element> v, const RingElement& c,
                           std::span<PrimeField::Element> out) {
  if (c.is_zero()) return;
  auto in = free_layout(ring, degs, d);
  auto to = free_layout(ring, degs, d + c.degree);
  for (std::size_t i = 0; i < degs.size(); ++i) {
    if (in.dims[i] == 0 || to.dims[i] == 0) continue;
    ring.multiply_accumulate(c, d - degs[i], v.subspan(in.offsets[i], in.dims[i]),
                             out.subspan(to.offsets[i], to.dims[i]));
  }
}

std::vector<RingElement> split_vector(const QuotientRing& ring, std::span<const int> degs, int d,
                                      std::span<const PrimeField::Element> v) {
  auto l = free_layout(ring, degs, d);
  std::vector<RingElement> out;
  for (std::size_t i = 0; i < degs.size(); ++i) {
    auto block = v.subspan(l.offsets[i], l.dims[i]);
    out.push_back(RingElement{&ring, d - degs[i], Vec(block.begin(), block.end())});
  }
  return out;
}

Vec join_vector(const QuotientRing& ring, std::span<const int> degs, int d,
                const std::vector<RingElement>& comps) {
  auto l = free_layout(ring, degs, d);
  Vec out(l.total, 0);
  for (std::size_t i = 0; i < degs.size(); ++i) {
    const auto& c = comps[i];
    if (c.is_zero()) continue;
    if (c.degree != d - degs[i]) throw UsageError("join_vector: component has wrong degree");
    std::copy(c.coords.begin(), c.coords.end(), out.begin() + static_cast<std::ptrdiff_t>(l.offsets[i]));
  }
  return out;
}

namespace {

Vec column_vector(const FreeMap& phi, std::size_t j) {
  std::vector<RingElement> comps;
  for (std::size_t i = 0; i < phi.rows(); ++i) comps.push_back(phi.at(i, j));
  return join_vector(*phi.ring, phi.target, phi.source[j], comps);
}

void set_column(FreeMap& phi, std::size_t j, const Vec& v) {
  auto comps = split_vector(*phi.ring, phi.target, phi.source[j], v);
  for (std::size_t i = 0; i < phi.rows(); ++i) phi.at(i, j) = comps[i];
}

// Inserts A_{d-e} * v into span, where v lies in F_e.
void insert_multiples(EchelonBasis<PrimeField>& span, const QuotientRing& ring,
                      std::span<const int> degs, int e, const Vec& v, int d) {
  if (d < e || is_zero_vec(v)) return;
  std::size_t n = ring.dim(d - e);
  RingElement unit{&ring, d - e, Vec(n, 0)};
  for (std::size_t b = 0; b < n; ++b) {
    if (span.dim() == span.ambient_dim()) return;
    std::fill(unit.coords.begin(), unit.coords.end(), 0);
    unit.coords[b] = 1;
    Vec out(span.ambient_dim(), 0);
    free_scale_accumulate(ring, degs, e, v, unit, out);
    span.insert(std::move(out));
  }
}

void accumulate_product(const QuotientRing& ring, RingElement& out, const RingElement& a,
                        const RingElement& b) {
  if (a.is_zero() || b.is_zero()) return;
  if (out.coords.empty()) out.coords.assign(ring.dim(out.degree), 0);
  ring.multiply_accumulate(a, b.degree, b.coords, out.coords);
}

}  // namespace

FreeMap compose(const FreeMap& a, const FreeMap& b) {
  if (a.source != b.target) throw UsageError("compose: degree lists do not match");
  FreeMap out(a.ring, a.target, b.source);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < b.cols(); ++k)
      for (std::size_t j = 0; j < a.cols(); ++j) accumulate_product(*a.ring, out.at(i, k), a.at(i, j), b.at(j, k));
  return out;
}

FreeMap dual_map(const FreeMap& phi) {
  std::vector<int> t, s;
  for (int d : phi.source) t.push_back(-d);
  for (int d : phi.target) s.push_back(-d);
  FreeMap out(phi.ring, t, s);
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j) out.at(j, i) = phi.at(i, j);
  return out;
}

FreeMap direct_sum(const FreeMap& a, const FreeMap& b) {
  std::vector<int> t = a.target, s = a.source;
  t.insert(t.end(), b.target.begin(), b.target.end());
  s.insert(s.end(), b.source.begin(), b.source.end());
  FreeMap out(a.ring, t, s);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return out;
}

FreeMap kernel_generators(const FreeMap& phi, const Bounds& bounds) {
  const auto& A = *phi.ring;
  FreeMap gens(phi.ring, phi.source, {});
  if (phi.source.empty()) return gens;
  std::vector<std::pair<int, Vec>> found;
  int lo = *std::min_element(phi.source.begin(), phi.source.end());
  int hi = *std::max_element(phi.source.begin(), phi.source.end());
  int margin = std::max(phi.max_entry_degree(), A.max_relation_degree()) + A.max_weight();
  int top = A.top_degree(bounds.degree_cap);
  int hard_stop = top >= 0 ? hi + top : INT_MAX;
  int stop = hi + margin;
  for (int d = lo; d <= std::min(stop, hard_stop); ++d) {
    if (d > bounds.degree_cap)
      throw Inconclusive("degree bound " + std::to_string(bounds.degree_cap) +
                         " reached while computing kernel generators");
    auto layout = free_layout(A, phi.source, d);
    if (layout.total == 0) continue;
    auto kernel = nullspace_vectors(degree_matrix(phi, d));
    if (kernel.empty()) continue;
    EchelonBasis<PrimeField> span(A.field(), layout.total);
    for (const auto& [e, v] : found) insert_multiples(span, A, phi.source, e, v, d);
    if (span.dim() == kernel.size()) continue;
    for (auto& k : kernel) {
      if (span.insert(k)) {
        found.emplace_back(d, k);
        stop = std::max(stop, d + margin);
      }
    }
  }
  std::vector<int> degs;
  for (const auto& [e, v] : found) degs.push_back(e);
  gens = FreeMap(phi.ring, phi.source, degs);
  for (std::size_t j = 0; j < found.size(); ++j) set_column(gens, j, found[j].second);
  return gens;
}

FreeMap prune_columns(const FreeMap& gens) {
  const auto& A = *gens.ring;
  std::vector<std::size_t> order(gens.cols());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return gens.source[a] < gens.source[b]; });
  std::vector<std::size_t> kept;
  std::size_t pos = 0;
  while (pos < order.size()) {
    int d = gens.source[order[pos]];
    auto layout = free_layout(A, gens.target, d);
    EchelonBasis<PrimeField> span(A.field(), layout.total);
    for (auto c : kept) insert_multiples(span, A, gens.target, gens.source[c], column_vector(gens, c), d);
    while (pos < order.size() && gens.source[order[pos]] == d) {
      auto c = order[pos++];
      if (span.insert(column_vector(gens, c))) kept.push_back(c);
    }
  }
  return gens.select_columns(kept);
}

// ------------------------------------------------------------------ modules

Vec ModulePiece::normal_form(Vec ambient) const {
  relations.reduce(ambient);
  Vec q(basis_coords.size());
  for (std::size_t i = 0; i < basis_coords.size(); ++i) q[i] = ambient[basis_coords[i]];
  return q;
}

Vec ModulePiece::lift(std::span<const PrimeField::Element> q) const {
  Vec out(layout.total, 0);
  for (std::size_t i = 0; i < q.size(); ++i) out[basis_coords[i]] = q[i];
  return out;
}

GradedModule::GradedModule(FreeMap presentation) {
  if (!presentation.ring) throw UsageError("module without a ring");
  presentation.check_degrees();
  cache_ = std::make_shared<Cache>();
  cache_->base = presentation;
  pres_ = std::move(presentation);
}

GradedModule GradedModule::free(RingPtr ring, std::vector<int> degs) {
  return GradedModule(FreeMap(std::move(ring), std::move(degs), {}));
}

GradedModule GradedModule::zero(RingPtr ring) { return GradedModule(FreeMap(std::move(ring), {}, {})); }

GradedModule GradedModule::residue_field(RingPtr ring, int degree) {
  std::vector<int> src;
  for (int w : ring->weights()) src.push_back(degree + w);
  FreeMap p(ring, {degree}, src);
  for (std::size_t v = 0; v < src.size(); ++v) p.at(0, v) = ring->variable(v);
  return GradedModule(std::move(p));
}

GradedModule GradedModule::cyclic(RingPtr ring, const std::vector<RingElement>& gens) {
  std::vector<int> src;
  std::vector<RingElement> kept;
  for (const auto& g : gens)
    if (!g.is_zero()) {
      src.push_back(g.degree);
      kept.push_back(g);
    }
  FreeMap p(ring, {0}, src);
  for (std::size_t j = 0; j < kept.size(); ++j) p.at(0, j) = kept[j];
  return GradedModule(std::move(p));
}

GradedModule GradedModule::shifted(int s) const {
  GradedModule out = *this;
  out.shift_ += s;
  out.pres_ = cache_->base.shifted(out.shift_);
  return out;
}

int GradedModule::min_gen_degree() const {
  if (pres_.target.empty()) return 0;
  return *std::min_element(pres_.target.begin(), pres_.target.end());
}

int GradedModule::max_gen_degree() const {
  if (pres_.target.empty()) return 0;
  return *std::max_element(pres_.target.begin(), pres_.target.end());
}

const ModulePiece& GradedModule::piece(int d) const {
  if (!cache_) throw UsageError("uninitialized module");
  int bd = d + shift_;
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->pieces.find(bd);
    if (it != cache_->pieces.end()) return *it->second;
  }
  const auto& base = cache_->base;
  const auto& A = *base.ring;
  auto piece = std::make_unique<ModulePiece>();
  piece->layout = free_layout(A, base.target, bd);
  piece->relations = EchelonBasis<PrimeField>(A.field(), piece->layout.total);
  for (std::size_t j = 0; j < base.cols() && piece->layout.total > 0; ++j) {
    if (base.source[j] > bd) continue;
    insert_multiples(piece->relations, A, base.target, base.source[j], column_vector(base, j), bd);
    if (piece->relations.dim() == piece->layout.total) break;
  }
  piece->coord_index.assign(piece->layout.total, -1);
  for (std::uint32_t c = 0; c < piece->layout.total; ++c)
    if (!piece->relations.is_pivot(c)) {
      piece->coord_index[c] = static_cast<std::int32_t>(piece->basis_coords.size());
      piece->basis_coords.push_back(c);
    }
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->pieces.emplace(bd, std::move(piece));
  return *it->second;
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
  if (!a.same_ring(b)) throw UsageError("direct sum of modules over different rings");
  return GradedModule(direct_sum(a.presentation(), b.presentation()));
}

GradedModule quotient_by(const GradedModule& m, const std::vector<std::pair<int, Vec>>& elements) {
  const auto& P = m.presentation();
  std::vector<int> src = P.source;
  for (const auto& [d, v] : elements) src.push_back(d);
  FreeMap out(P.ring, P.target, src);
  for (std::size_t i = 0; i < P.rows(); ++i)
    for (std::size_t j = 0; j < P.cols(); ++j) out.at(i, j) = P.at(i, j);
  for (std::size_t k = 0; k < elements.size(); ++k) set_column(out, P.cols() + k, elements[k].second);
  return GradedModule(std::move(out));
}

GradedModule minimal_presentation(const GradedModule& m) {
  FreeMap P = m.presentation();
  const auto& A = *P.ring;
  const auto& f = A.field();
  std::size_t g = P.rows(), r = P.cols();
  std::vector<bool> row_alive(g, true), col_alive(r, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < r && !changed; ++j) {
      if (!col_alive[j]) continue;
      for (std::size_t i = 0; i < g && !changed; ++i) {
        if (!row_alive[i] || P.entry_degree(i, j) != 0) continue;
        auto c = A.constant_term(P.at(i, j));
        if (c == 0) continue;
        auto cinv = f.inv(c);
        for (std::size_t k = 0; k < g; ++k) {
          if (k == i || !row_alive[k] || P.at(k, j).is_zero()) continue;
          RingElement factor = A.scale(P.at(k, j), cinv);
          for (std::size_t l = 0; l < r; ++l) {
            if (l == j || !col_alive[l] || P.at(i, l).is_zero()) continue;
            RingElement prod = A.multiply(factor, P.at(i, l));
            P.at(k, l) = A.sub(P.at(k, l).coords.empty() ? A.zero(prod.degree) : P.at(k, l), prod);
          }
        }
        row_alive[i] = false;
        col_alive[j] = false;
        changed = true;
      }
    }
  }
  std::vector<int> t, s;
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < g; ++i)
    if (row_alive[i]) {
      rows.push_back(i);
      t.push_back(P.target[i]);
    }
  for (std::size_t j = 0; j < r; ++j) {
    if (!col_alive[j]) continue;
    bool nonzero = false;
    for (auto i : rows)
      if (!P.at(i, j).is_zero()) nonzero = true;
    if (nonzero) {
      cols.push_back(j);
      s.push_back(P.source[j]);
    }
  }
  FreeMap Q(P.ring, t, s);
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) Q.at(a, b) = P.at(rows[a], cols[b]);
  return GradedModule(prune_columns(Q));
}

GradedModule image_module(const FreeMap& phi, const Bounds& bounds) {
  return minimal_presentation(GradedModule(kernel_generators(phi, bounds)));
}

GradedModule ideal_module(const RingPtr& ring, const std::vector<RingElement>& gens, const Bounds& bounds) {
  std::vector<int> src;
  std::vector<RingElement> kept;
  for (const auto& g : gens)
    if (!g.is_zero()) {
      src.push_back(g.degree);
      kept.push_back(g);
    }
  FreeMap phi(ring, {0}, src);
  for (std::size_t j = 0; j < kept.size(); ++j) phi.at(0, j) = kept[j];
  return image_module(phi, bounds);
}

GradedModule maximal_ideal(const RingPtr& ring, const Bounds& bounds) {
  std::vector<RingElement> vars;
  for (std::size_t v = 0; v < ring->num_vars(); ++v) vars.push_back(ring->variable(v));
  return ideal_module(ring, vars, bounds);
}

std::size_t mu(const GradedModule& m) {
  const auto& P = m.presentation();
  const auto& A = *P.ring;
  Matrix c(A.field(), P.rows(), P.cols());
  for (std::size_t i = 0; i < P.rows(); ++i)
    for (std::size_t j = 0; j < P.cols(); ++j)
      if (P.entry_degree(i, j) == 0) c(i, j) = A.constant_term(P.at(i, j));
  return P.rows() - rank(c);
}

std::vector<std::size_t> hilbert_values(const GradedModule& m, int from, int to) {
  std::vector<std::size_t> out;
  for (int d = from; d <= to; ++d) out.push_back(m.dim(d));
  return out;
}

// --------------------------------------------------------------------- homs

HomSpace::HomSpace(const GradedModule& source, const GradedModule& target)
    : source_(source), target_(target) {
  if (!source.same_ring(target)) throw UsageError("Hom between modules over different rings");
  const auto& A = *source.ring();
  const auto& M = source_.presentation();
  const auto& ndeg = target_.gen_degrees();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    offsets_.push_back(total_);
    dims_.push_back(target_.dim(M.target[i]));
    total_ += dims_.back();
  }
  std::vector<std::size_t> row_off;
  std::size_t nrows = 0;
  for (std::size_t j = 0; j < M.cols(); ++j) {
    row_off.push_back(nrows);
    nrows += target_.dim(M.source[j]);
  }
  if (nrows == 0) {
    for (std::size_t c = 0; c < total_; ++c) {
      Vec v(total_, 0);
      v[c] = 1;
      basis_.push_back(std::move(v));
    }
    return;
  }
  Matrix L(A.field(), nrows, total_);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    int ai = M.target[i];
    const auto& pin = target_.piece(ai);
    for (std::size_t q = 0; q < dims_[i]; ++q) {
      Vec unit(dims_[i], 0);
      unit[q] = 1;
      Vec lifted = pin.lift(unit);
      for (std::size_t j = 0; j < M.cols(); ++j) {
        const auto& e = M.at(i, j);
        if (e.is_zero()) continue;
        const auto& pout = target_.piece(M.source[j]);
        if (pout.dim() == 0) continue;
        Vec amb(pout.layout.total, 0);
        free_scale_accumulate(A, ndeg, ai, lifted, e, amb);
        Vec nf = pout.normal_form(std::move(amb));
        for (std::size_t t = 0; t < nf.size(); ++t) L(row_off[j] + t, offsets_[i] + q) = nf[t];
      }
    }
  }
  basis_ = nullspace_vectors(L);
}

Vec HomSpace::combine(std::span<const PrimeField::Element> coeffs) const {
  const auto& f = source_.ring()->field();
  Vec out(total_, 0);
  for (std::size_t b = 0; b < basis_.size(); ++b) axpy(f, coeffs[b], basis_[b], out);
  return out;
}

std::optional<Vec> HomSpace::coefficients(const Vec& h) const {
  const auto& f = source_.ring()->field();
  if (!echelon_) {
    echelon_ = std::make_unique<EchelonBasis<PrimeField>>(f, total_);
    // Row k of the echelon equals sum_b echelon_coeffs_[k][b] * basis_[b].
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      Vec v = basis_[b];
      Vec combo(basis_.size(), 0);
      combo[b] = 1;
      for (std::size_t k = 0; k < echelon_->dim(); ++k) {
        auto c = v[echelon_->pivots()[k]];
        if (c == 0) continue;
        axpy(f, f.neg(c), echelon_->rows()[k], v);
        axpy(f, f.neg(c), echelon_coeffs_[k], combo);
      }
      std::size_t p = 0;
      while (p < v.size() && v[p] == 0) ++p;
      if (p == v.size()) continue;
      auto inv = f.inv(v[p]);
      for (auto& x : combo) x = f.mul(x, inv);
      echelon_->insert(v);
      echelon_coeffs_.push_back(std::move(combo));
    }
  }
  Vec v = h;
  Vec out(basis_.size(), 0);
  for (std::size_t k = 0; k < echelon_->dim(); ++k) {
    auto c = v[echelon_->pivots()[k]];
    if (c == 0) continue;
    axpy(f, f.neg(c), echelon_->rows()[k], v);
    axpy(f, c, echelon_coeffs_[k], out);
  }
  if (!is_zero_vec(v)) return std::nullopt;
  return out;
}

Vec HomSpace::identity() const {
  if (source_.num_generators() != target_.num_generators())
    throw UsageError("identity requested on a Hom space between different modules");
  Vec out(total_, 0);
  for (std::size_t i = 0; i < source_.num_generators(); ++i) {
    int ai = source_.gen_degrees()[i];
    const auto& p = target_.piece(ai);
    Vec amb(p.layout.total, 0);
    amb[p.layout.offsets[i]] = 1;
    Vec nf = p.normal_form(std::move(amb));
    std::copy(nf.begin(), nf.end(), out.begin() + static_cast<std::ptrdiff_t>(offsets_[i]));
  }
  return out;
}

namespace {

// Lifts of the generator images of h to ambient free pieces of the target.
std::vector<Vec> lifted_images(const HomSpace& space, const Vec& h) {
  std::vector<Vec> out;
  const auto& M = space.source();
  for (std::size_t i = 0; i < M.num_generators(); ++i) {
    const auto& p = space.target().piece(M.gen_degrees()[i]);
    out.push_back(p.lift(space.image(h, i)));
  }
  return out;
}

// Image under h of an element of the free cover of the source in degree d.
Vec apply_to_ambient(const HomSpace& space, const std::vector<Vec>& lifts, int d,
                     std::span<const PrimeField::Element> amb) {
  const auto& A = *space.source().ring();
  const auto& sdeg = space.source().gen_degrees();
  const auto& tdeg = space.target().gen_degrees();
  auto in = free_layout(A, sdeg, d);
  const auto& pout = space.target().piece(d);
  Vec acc(pout.layout.total, 0);
  for (std::size_t i = 0; i < sdeg.size(); ++i) {
    if (in.dims[i] == 0) continue;
    auto block = amb.subspan(in.offsets[i], in.dims[i]);
    if (is_zero_vec(block)) continue;
    RingElement c{&A, d - sdeg[i], Vec(block.begin(), block.end())};
    free_scale_accumulate(A, tdeg, sdeg[i], lifts[i], c, acc);
  }
  return pout.normal_form(std::move(acc));
}

}  // namespace

Matrix action_matrix(const HomSpace& space, const Vec& h, int d) {
  const auto& f = space.source().ring()->field();
  const auto& pin = space.source().piece(d);
  const auto& pout = space.target().piece(d);
  Matrix m(f, pout.dim(), pin.dim());
  auto lifts = lifted_images(space, h);
  for (std::size_t q = 0; q < pin.dim(); ++q) {
    Vec unit(pin.dim(), 0);
    unit[q] = 1;
    Vec img = apply_to_ambient(space, lifts, d, pin.lift(unit));
    for (std::size_t t = 0; t < img.size(); ++t) m(t, q) = img[t];
  }
  return m;
}

Vec compose(const HomSpace& gspace, const Vec& g, const HomSpace& fspace, const Vec& f) {
  const auto& gd = gspace.source().gen_degrees();
  const auto& fd = fspace.target().gen_degrees();
  if (gd.size() != fd.size()) throw UsageError("compose: middle modules differ");
  // The middle module may appear with a uniform shift u on the g side.
  int u = gd.empty() ? 0 : gd[0] - fd[0];
  for (std::size_t k = 0; k < gd.size(); ++k)
    if (gd[k] - fd[k] != u) throw UsageError("compose: middle modules differ");
  const auto& M = fspace.source();
  auto lifts = lifted_images(gspace, g);
  Vec out;
  for (std::size_t i = 0; i < M.num_generators(); ++i) {
    int ai = M.gen_degrees()[i];
    const auto& pmid = fspace.target().piece(ai);
    Vec amb = pmid.lift(fspace.image(f, i));
    Vec img = apply_to_ambient(gspace, lifts, ai + u, amb);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

Matrix top_matrix(const HomSpace& space, const Vec& h) {
  const auto& M = space.source();
  const auto& N = space.target();
  Matrix t(M.ring()->field(), N.num_generators(), M.num_generators());
  for (std::size_t i = 0; i < M.num_generators(); ++i) {
    int ai = M.gen_degrees()[i];
    const auto& p = N.piece(ai);
    Vec amb = p.lift(space.image(h, i));
    for (std::size_t k = 0; k < N.num_generators(); ++k)
      if (N.gen_degrees()[k] == ai) t(k, i) = amb[p.layout.offsets[k]];
  }
  return t;
}

std::vector<Vec> beta_basis(const HomSpace& space) {
  const auto& M = space.source();
  const auto& N = space.target();
  const auto& A = M.ring();
  EchelonBasis<PrimeField> span(A->field(), space.coord_dim());
  for (std::size_t k = 0; k < N.num_generators(); ++k) {
    auto F = GradedModule::free(A, {N.gen_degrees()[k]});
    HomSpace H(M, F);
    for (const auto& u : H.basis()) {
      Vec h;
      for (std::size_t i = 0; i < M.num_generators(); ++i) {
        int ai = M.gen_degrees()[i];
        const auto& p = N.piece(ai);
        Vec amb(p.layout.total, 0);
        auto img = H.image(u, i);
        std::copy(img.begin(), img.end(), amb.begin() + static_cast<std::ptrdiff_t>(p.layout.offsets[k]));
        Vec nf = p.normal_form(std::move(amb));
        h.insert(h.end(), nf.begin(), nf.end());
      }
      span.insert(std::move(h));
    }
  }
  return span.rows();
}

// ---------------------------------------------------------- isomorphisms

namespace {

enum class Search { Found, Absent, Unknown };

std::uint64_t salted(const Bounds& b, std::uint64_t salt) { return b.seed * 0x9E3779B97F4A7C15ULL ^ salt; }

Vec random_vector(const PrimeField& f, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, f.characteristic() - 1);
  Vec v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

Matrix combine_matrices(const PrimeField& f, const std::vector<Matrix>& ms, const Vec& c, std::size_t r,
                        std::size_t cols) {
  Matrix s(f, r, cols);
  for (std::size_t b = 0; b < ms.size(); ++b) {
    if (c[b] == 0) continue;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < cols; ++j) s(i, j) = f.add(s(i, j), f.mul(c[b], ms[b](i, j)));
  }
  return s;
}

// Looks for an invertible matrix in the span of the given n x n matrices.
Search find_invertible(const PrimeField& f, const std::vector<Matrix>& tops, std::size_t n,
                       const Bounds& bounds, std::mt19937_64& rng) {
  if (n == 0) return Search::Found;
  if (tops.empty()) return Search::Absent;
  for (int t = 0; t < bounds.iso_samples; ++t) {
    Vec c = random_vector(f, tops.size(), rng);
    if (rank(combine_matrices(f, tops, c, n, n)) == n) return Search::Found;
  }
  EchelonBasis<PrimeField> span(f, n * n);
  for (const auto& m : tops) {
    Vec v(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v[i * n + j] = m(i, j);
    span.insert(std::move(v));
  }
  std::size_t r = span.dim();
  double space = std::pow(static_cast<double>(f.characteristic()), static_cast<double>(r));
  if (space > static_cast<double>(bounds.exhaustive_limit)) return Search::Unknown;
  std::vector<Matrix> reduced;
  for (const auto& row : span.rows()) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = row[i * n + j];
    reduced.push_back(std::move(m));
  }
  Vec c(r, 0);
  while (true) {
    if (rank(combine_matrices(f, reduced, c, n, n)) == n) return Search::Found;
    std::size_t k = 0;
    while (k < r && ++c[k] == f.characteristic()) c[k++] = 0;
    if (k == r) break;
  }
  return Search::Absent;
}

Search surjection_exists(const GradedModule& m, const GradedModule& n, const Bounds& bounds,
                         std::mt19937_64& rng) {
  HomSpace H(m, n);
  std::vector<Matrix> tops;
  for (const auto& b : H.basis()) tops.push_back(top_matrix(H, b));
  return find_invertible(m.ring()->field(), tops, n.num_generators(), bounds, rng);
}

std::optional<bool> graded_iso_fixed_shift(const GradedModule& mm, const GradedModule& nn,
                                           const Bounds& bounds, std::mt19937_64& rng) {
  if (mm.num_generators() != nn.num_generators()) return false;
  auto ga = mm.gen_degrees(), gb = nn.gen_degrees();
  std::sort(ga.begin(), ga.end());
  std::sort(gb.begin(), gb.end());
  if (ga != gb) return false;
  auto ra = mm.rel_degrees(), rb = nn.rel_degrees();
  std::sort(ra.begin(), ra.end());
  std::sort(rb.begin(), rb.end());
  if (ra != rb) return false;
  if (ga.empty()) return true;
  const auto& A = *mm.ring();
  int lo = ga.front();
  int hi = std::min(bounds.degree_cap, ga.back() + A.max_relation_degree() + 2 * A.max_weight());
  for (int d = lo; d <= hi; ++d)
    if (mm.dim(d) != nn.dim(d)) return false;
  auto s1 = surjection_exists(mm, nn, bounds, rng);
  if (s1 == Search::Absent) return false;
  auto s2 = surjection_exists(nn, mm, bounds, rng);
  if (s2 == Search::Absent) return false;
  if (s1 == Search::Unknown || s2 == Search::Unknown) return std::nullopt;
  return true;
}

}  // namespace

std::optional<int> find_shift_isomorphism(const GradedModule& m, const GradedModule& n,
                                          const Bounds& bounds) {
  if (!m.same_ring(n)) throw UsageError("isomorphism test between modules over different rings");
  auto mm = minimal_presentation(m);
  auto nn = minimal_presentation(n);
  if (mm.num_generators() != nn.num_generators()) return std::nullopt;
  if (mm.num_generators() == 0) return 0;
  int s = nn.min_gen_degree() - mm.min_gen_degree();
  std::mt19937_64 rng(salted(bounds, 0x150));
  auto r = graded_iso_fixed_shift(mm, nn.shifted(s), bounds, rng);
  if (!r) throw Inconclusive("isomorphism search exceeded the exhaustive budget");
  if (*r) return s;
  return std::nullopt;
}

bool is_isomorphic(const GradedModule& m, const GradedModule& n, const Bounds& bounds) {
  if (!m.same_ring(n)) throw UsageError("isomorphism test between modules over different rings");
  auto mm = minimal_presentation(m);
  auto nn = minimal_presentation(n);
  std::mt19937_64 rng(salted(bounds, 0x151));
  auto r = graded_iso_fixed_shift(mm, nn, bounds, rng);
  if (!r) throw Inconclusive("isomorphism search exceeded the exhaustive budget");
  return *r;
}

bool is_isomorphic_ungraded(const GradedModule& m, const GradedModule& n, const Bounds& bounds) {
  if (find_shift_isomorphism(m, n, bounds)) return true;
  auto mm = minimal_presentation(m);
  auto nn = minimal_presentation(n);
  if (mm.num_generators() != nn.num_generators()) return false;
  auto dm = decompose(mm, bounds);
  auto dn = decompose(nn, bounds);
  if (dm.count() == 1 && dn.count() == 1) return false;
  if (dm.count() != dn.count() || dm.summands.size() != dn.summands.size()) return false;
  std::vector<bool> used(dn.summands.size(), false);
  for (const auto& a : dm.summands) {
    bool matched = false;
    for (std::size_t k = 0; k < dn.summands.size() && !matched; ++k) {
      if (used[k] || dn.summands[k].multiplicity != a.multiplicity) continue;
      if (find_shift_isomorphism(a.module, dn.summands[k].module, bounds)) {
        used[k] = true;
        matched = true;
      }
    }
    if (!matched) return false;
  }
  return true;
}

// ------------------------------------------------------------ decomposition

namespace {

Vec flatten(const Matrix& m) {
  Vec v(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  return v;
}

Matrix unflatten(const PrimeField& f, const Vec& v, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

bool is_nilpotent(const Matrix& x) {
  Matrix p = x;
  for (std::size_t k = 1; k < x.rows(); k *= 2) p = p * p;
  return p.is_zero();
}

Vec hom_poly(const HomSpace& end, const upoly::Poly& p, const Vec& f) {
  const auto& fld = end.source().ring()->field();
  Vec id = end.identity();
  Vec acc(end.coord_dim(), 0);
  for (int k = upoly::degree(p); k >= 0; --k) {
    acc = compose(end, acc, end, f);
    axpy(fld, p[k], id, acc);
  }
  return acc;
}

Vec sub_vec(const PrimeField& f, const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = f.sub(a[i], b[i]);
  return c;
}

}  // namespace

std::optional<LocalEndomorphisms> local_endomorphism_ring(const HomSpace& end, const Bounds& bounds) {
  const auto& f = end.source().ring()->field();
  std::size_t n = end.source().num_generators();
  LocalEndomorphisms out;
  if (n == 0) return out;
  std::vector<Matrix> tops;
  for (const auto& b : end.basis()) tops.push_back(top_matrix(end, b));
  EchelonBasis<PrimeField> bspan(f, n * n);
  for (const auto& t : tops) bspan.insert(flatten(t));
  std::vector<Matrix> B;
  for (const auto& r : bspan.rows()) B.push_back(unflatten(f, r, n));

  std::mt19937_64 rng(salted(bounds, 0x10c));
  Matrix gen = Matrix::identity(f, n);
  int r = 1;
  for (int t = 0; t < bounds.iso_samples; ++t) {
    Vec c = random_vector(f, B.size(), rng);
    Matrix x = combine_matrices(f, B, c, n, n);
    auto mp = upoly::minimal_polynomial(x);
    if (upoly::coprime_split(f, mp, rng)) return std::nullopt;
    int deg = upoly::degree(upoly::irreducible_factor(f, mp, rng));
    if (deg > r) {
      r = deg;
      gen = x;
    }
  }
  double space = std::pow(static_cast<double>(f.characteristic()), r);
  if (space > static_cast<double>(bounds.exhaustive_limit))
    throw Inconclusive("residue field search exceeds the exhaustive budget");
  std::vector<Matrix> powers{Matrix::identity(f, n)};
  for (int k = 1; k < r; ++k) powers.push_back(powers.back() * gen);
  // phi(B_i) = coefficients a with B_i - a(gen) nilpotent.
  Matrix phi(f, static_cast<std::size_t>(r), B.size());
  for (std::size_t i = 0; i < B.size(); ++i) {
    Vec a(r, 0);
    bool found = false;
    while (!found) {
      Matrix x = B[i];
      for (int k = 0; k < r; ++k)
        if (a[k] != 0) x = x - scale(powers[k], a[k]);
      if (is_nilpotent(x)) {
        found = true;
        break;
      }
      int k = 0;
      while (k < r && ++a[k] == f.characteristic()) a[k++] = 0;
      if (k == r) break;
    }
    if (!found) return std::nullopt;
    for (int k = 0; k < r; ++k) phi(k, i) = a[k];
  }
  auto jcoeffs = nullspace_vectors(phi);
  if (B.size() - jcoeffs.size() != static_cast<std::size_t>(r)) return std::nullopt;
  std::vector<Matrix> J;
  EchelonBasis<PrimeField> jspan(f, n * n);
  for (const auto& c : jcoeffs) {
    J.push_back(combine_matrices(f, B, c, n, n));
    jspan.insert(flatten(J.back()));
  }
  for (const auto& x : J)
    for (const auto& y : B)
      if (!jspan.contains(flatten(x * y)) || !jspan.contains(flatten(y * x))) return std::nullopt;
  // Nilpotency of J: powers must reach zero.
  std::vector<Matrix> power = J;
  for (std::size_t step = 0; step <= n && !power.empty(); ++step) {
    EchelonBasis<PrimeField> next(f, n * n);
    for (const auto& x : power)
      for (const auto& y : J) next.insert(flatten(x * y));
    power.clear();
    for (const auto& row : next.rows()) power.push_back(unflatten(f, row, n));
  }
  if (!power.empty()) return std::nullopt;
  // Pull J back along the top map.
  Matrix red(f, n * n, tops.size());
  for (std::size_t b = 0; b < tops.size(); ++b) {
    Vec v = flatten(tops[b]);
    jspan.reduce(v);
    for (std::size_t k = 0; k < v.size(); ++k) red(k, b) = v[k];
  }
  for (const auto& c : nullspace_vectors(red)) out.radical.push_back(end.combine(c));
  out.residue_dim = r;
  return out;
}

std::optional<std::pair<GradedModule, GradedModule>> split_once(const GradedModule& m,
                                                               const Bounds& bounds) {
  auto M = minimal_presentation(m);
  std::size_t n = M.num_generators();
  if (n <= 1) return std::nullopt;
  HomSpace end(M, M);
  if (end.dim() <= 1) return std::nullopt;
  const auto& f = M.ring()->field();
  std::vector<Matrix> tops;
  for (const auto& b : end.basis()) tops.push_back(top_matrix(end, b));
  std::mt19937_64 rng(salted(bounds, 0x5e1));
  for (int t = 0; t < bounds.iso_samples; ++t) {
    Vec c = random_vector(f, end.dim(), rng);
    Matrix x = combine_matrices(f, tops, c, n, n);
    auto mp = upoly::minimal_polynomial(x);
    auto split = upoly::coprime_split(f, mp, rng);
    if (!split) continue;
    auto ep = upoly::crt_idempotent(f, split->first, split->second);
    Vec e = hom_poly(end, ep, end.combine(c));
    for (int it = 0; it < 64; ++it) {
      Vec e2 = compose(end, e, end, e);
      if (e2 == e) break;
      Vec e3 = compose(end, e2, end, e);
      Vec next(e.size());
      for (std::size_t k = 0; k < e.size(); ++k)
        next[k] = f.sub(f.mul(3, e2[k]), f.mul(2, e3[k]));
      e = std::move(next);
    }
    if (compose(end, e, end, e) != e) continue;
    Vec one_minus_e = sub_vec(f, end.identity(), e);
    std::vector<std::pair<int, Vec>> kill_e, kill_f;
    for (std::size_t i = 0; i < n; ++i) {
      int ai = M.gen_degrees()[i];
      const auto& p = M.piece(ai);
      kill_e.emplace_back(ai, p.lift(end.image(e, i)));
      kill_f.emplace_back(ai, p.lift(end.image(one_minus_e, i)));
    }
    auto image_e = minimal_presentation(quotient_by(M, kill_f));
    auto image_f = minimal_presentation(quotient_by(M, kill_e));
    if (image_e.num_generators() == 0 || image_f.num_generators() == 0) continue;
    if (image_e.num_generators() + image_f.num_generators() != n)
      throw UsageError("idempotent splitting lost generators");
    return std::make_pair(image_e, image_f);
  }
  return std::nullopt;
}

bool is_indecomposable(const GradedModule& m, const Bounds& bounds) {
  auto M = minimal_presentation(m);
  if (M.num_generators() == 0) return false;
  if (split_once(M, bounds)) return false;
  HomSpace end(M, M);
  if (!local_endomorphism_ring(end, bounds))
    throw Inconclusive("endomorphism ring neither split nor certified local");
  return true;
}

Decomposition decompose(const GradedModule& m, const Bounds& bounds) {
  Decomposition out;
  std::vector<GradedModule> work{minimal_presentation(m)};
  while (!work.empty()) {
    GradedModule x = work.back();
    work.pop_back();
    if (x.num_generators() == 0) continue;
    if (auto s = split_once(x, bounds)) {
      work.push_back(s->first);
      work.push_back(s->second);
      continue;
    }
    HomSpace end(x, x);
    auto local = local_endomorphism_ring(end, bounds);
    if (!local) throw Inconclusive("endomorphism ring neither split nor certified local");
    bool merged = false;
    for (auto& s : out.summands)
      if (find_shift_isomorphism(x, s.module, bounds)) {
        ++s.multiplicity;
        merged = true;
        break;
      }
    if (!merged) out.summands.push_back(Summand{x, 1, local->residue_dim});
  }
  std::stable_sort(out.summands.begin(), out.summands.end(), [](const Summand& a, const Summand& b) {
    if (a.module.num_generators() != b.module.num_generators())
      return a.module.num_generators() < b.module.num_generators();
    return a.module.min_gen_degree() < b.module.min_gen_degree();
  });
  return out;
}

// --------------------------------------------------------------- invariants

HilbertSamuel hilbert_samuel(const GradedModule& m, const Bounds& bounds) {
  const auto& A = *m.ring();
  const auto& f = A.field();
  HilbertSamuel hs;
  if (m.num_generators() == 0) {
    hs.dim = -1;
    return hs;
  }
  const auto& degs = m.gen_degrees();
  int lo = m.min_gen_degree();
  int hi = m.max_gen_degree();
  int maxw = A.max_weight();
  int nvars = static_cast<int>(A.num_vars());
  const int needed = 4;
  for (int s = 1; s <= bounds.hs_order_max; ++s) {
    std::size_t len = 0;
    for (int d = lo; d <= hi + (s - 1) * maxw; ++d) {
      const auto& p = m.piece(d);
      if (p.dim() == 0) continue;
      EchelonBasis<PrimeField> span(f, p.dim());
      for (std::size_t i = 0; i < degs.size(); ++i) {
        int e = d - degs[i];
        if (e < 0 || p.layout.dims[i] == 0) continue;
        const auto& pw = A.power_of_maximal_ideal(s, e);
        for (const auto& row : pw.rows()) {
          Vec amb(p.layout.total, 0);
          std::copy(row.begin(), row.end(), amb.begin() + static_cast<std::ptrdiff_t>(p.layout.offsets[i]));
          span.insert(p.normal_form(std::move(amb)));
          if (span.dim() == p.dim()) break;
        }
        if (span.dim() == p.dim()) break;
      }
      len += p.dim() - span.dim();
    }
    hs.lengths.push_back(len);
    // Look for the smallest order of differences with a constant tail.
    std::vector<std::int64_t> diff(hs.lengths.begin(), hs.lengths.end());
    for (int r = 0; r <= nvars && static_cast<int>(diff.size()) >= needed; ++r) {
      bool constant = true;
      for (int k = 1; k < needed; ++k)
        if (diff[diff.size() - 1 - k] != diff.back()) constant = false;
      if (constant && diff.back() > 0) {
        hs.dim = r;
        hs.multiplicity = static_cast<std::size_t>(diff.back());
        return hs;
      }
      std::vector<std::int64_t> next;
      for (std::size_t k = 1; k < diff.size(); ++k) next.push_back(diff[k] - diff[k - 1]);
      diff = std::move(next);
    }
  }
  throw Inconclusive("Hilbert-Samuel function did not stabilize within " +
                     std::to_string(bounds.hs_order_max) + " powers of the maximal ideal");
}

std::size_t multiplicity(const GradedModule& m, const Bounds& bounds) {
  return hilbert_samuel(m, bounds).multiplicity;
}

ModuleInvariants invariants(const GradedModule& m, const Bounds& bounds) {
  ModuleInvariants inv;
  auto M = minimal_presentation(m);
  inv.mu = M.num_generators();
  if (inv.mu == 0) {
    inv.length = 0;
    return inv;
  }
  const auto& A = *M.ring();
  int lo = M.min_gen_degree();
  int hi = std::min(bounds.degree_cap, M.max_gen_degree() + A.max_relation_degree() + 2 * A.max_weight());
  for (int d = lo; d <= hi; ++d) inv.hilbert_window.emplace_back(d, M.dim(d));
  // Finite length: max_weight consecutive zero pieces past the generators.
  int zeros = 0;
  std::size_t total = 0;
  for (int d = lo; d <= bounds.degree_cap; ++d) {
    std::size_t k = M.dim(d);
    total += k;
    if (k == 0 && d > M.max_gen_degree()) {
      if (++zeros == A.max_weight()) {
        inv.length = total;
        break;
      }
    } else {
      zeros = 0;
    }
  }
  auto hs = hilbert_samuel(M, bounds);
  inv.multiplicity = hs.multiplicity;
  inv.dim = hs.dim;
  auto ahs = hilbert_samuel(GradedModule::free(M.ring(), {0}), bounds);
  if (hs.dim == ahs.dim) {
    std::size_t g = std::gcd(hs.multiplicity, ahs.multiplicity);
    inv.rank_num = hs.multiplicity / g;
    inv.rank_den = ahs.multiplicity / g;
  } else {
    inv.rank_num = 0;
    inv.rank_den = 1;
  }
  inv.rank_integral = inv.rank_den == 1;
  return inv;
}

bool ulrich_test(const GradedModule& m, const Bounds& bounds) {
  auto M = minimal_presentation(m);
  return multiplicity(M, bounds) == M.num_generators();
}

}  // namespace mcm
