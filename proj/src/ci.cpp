#include "mcm/ci.hpp"

#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "mcm/errors.hpp"

namespace mcm {

CIPresentation ci_presentation(const RingPtr& quotient) {
  const auto& A = *quotient;
  if (A.relations().empty()) throw InputError("ring has no relations; nothing to present as a complete intersection");
  int bound = std::accumulate(A.relation_degrees().begin(), A.relation_degrees().end(), 0) +
              std::accumulate(A.weights().begin(), A.weights().end(), 0);
  if (!hilbert_matches_complete_intersection(A, bound))
    throw InputError("relations do not form a regular sequence");
  CIPresentation ci;
  ci.quotient = quotient;
  ci.poly = std::make_shared<QuotientRing>(A.ambient_ptr(), std::vector<Polynomial>{});
  for (const auto& r : A.relations()) ci.u.push_back(ci.poly->element(r));
  return ci;
}

namespace {

// Writes elements of the ideal (u) as sum u_j c_j, one degree at a time.
class IdealSplitter {
 public:
  explicit IdealSplitter(const CIPresentation& ci) : ci_(ci) {}

  std::vector<RingElement> split(const RingElement& e) {
    const auto& Q = *ci_.poly;
    std::vector<RingElement> out;
    for (const auto& u : ci_.u) out.push_back(Q.zero(e.degree - u.degree));
    if (e.is_zero()) return out;
    const auto& sys = system(e.degree);
    Vec rhs = e.coords;
    rhs.resize(Q.dim(e.degree), 0);
    auto sol = sys.columns == 0 ? std::nullopt : solve(sys.matrix, rhs);
    if (!sol) throw InputError("d~ d~ does not lie in (u); the relations are not a complete intersection");
    std::size_t at = 0;
    for (std::size_t j = 0; j < ci_.u.size(); ++j) {
      int d = e.degree - ci_.u[j].degree;
      std::size_t n = Q.dim(d);
      if (n > 0) out[j] = RingElement{&Q, d, Vec(sol->begin() + at, sol->begin() + at + n)};
      at += n;
    }
    return out;
  }

 private:
  struct System {
    Matrix matrix;
    std::size_t columns = 0;
  };
  const CIPresentation& ci_;
  std::map<int, System> systems_;

  const System& system(int D) {
    if (auto it = systems_.find(D); it != systems_.end()) return it->second;
    const auto& Q = *ci_.poly;
    std::vector<Vec> cols;
    for (const auto& u : ci_.u) {
      int d = D - u.degree;
      for (std::size_t b = 0; b < Q.dim(d); ++b) {
        Vec unit(Q.dim(d), 0);
        unit[b] = 1;
        auto prod = Q.multiply(u, RingElement{&Q, d, unit});
        Vec c = prod.coords;
        c.resize(Q.dim(D), 0);
        cols.push_back(std::move(c));
      }
    }
    System s{Matrix(Q.field(), Q.dim(D), cols.size()), cols.size()};
    for (std::size_t k = 0; k < cols.size(); ++k)
      for (std::size_t r = 0; r < Q.dim(D); ++r) s.matrix(r, k) = cols[k][r];
    return systems_.emplace(D, std::move(s)).first->second;
  }
};

bool equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

}  // namespace

ExtTModule eisenbud_operators(const CIPresentation& ci, const GradedModule& m, int window,
                              const Bounds& bounds, std::uint64_t perturb) {
  if (window < 0) throw UsageError("negative window");
  if (m.ring().get() != ci.quotient.get()) throw UsageError("module is not over the complete intersection");
  const auto& Q = *ci.poly;
  const auto& F = Q.field();
  std::size_t c = ci.u.size();
  auto res = resolve(m, window, bounds);
  ExtTModule e;
  e.field = F;
  e.window = window;
  e.codim = static_cast<int>(c);
  e.finite_pd = res.finite;
  for (int n = 0; n <= window; ++n) {
    e.degrees.push_back(n <= res.length() ? res.degrees[static_cast<std::size_t>(n)] : std::vector<int>{});
    e.dims.push_back(e.degrees.back().size());
  }
  std::mt19937_64 rng(perturb);
  std::uniform_int_distribution<std::uint32_t> dist(0, F.characteristic() - 1);
  e.lifts.resize(static_cast<std::size_t>(window) + 1);
  for (int n = 1; n <= window; ++n) {
    const auto& tgt = e.degrees[static_cast<std::size_t>(n - 1)];
    const auto& src = e.degrees[static_cast<std::size_t>(n)];
    FreeMap lift = n <= res.length() ? change_ring(res.differential(n), ci.poly) : FreeMap(ci.poly, tgt, src);
    if (perturb != 0) {
      // Another representative of the same map over A.
      for (std::size_t i = 0; i < lift.rows(); ++i)
        for (std::size_t k = 0; k < lift.cols(); ++k) {
          int D = lift.entry_degree(i, k);
          for (const auto& u : ci.u) {
            int d = D - u.degree;
            if (Q.dim(d) == 0) continue;
            Vec r(Q.dim(d));
            for (auto& x : r) x = dist(rng);
            auto add = Q.multiply(u, RingElement{&Q, d, r});
            lift.at(i, k) = lift.at(i, k).is_zero() ? add : Q.add(lift.at(i, k), add);
          }
        }
    }
    e.lifts[static_cast<std::size_t>(n)] = std::move(lift);
  }
  IdealSplitter splitter(ci);
  e.tilde.assign(c, std::vector<FreeMap>(static_cast<std::size_t>(window) + 1));
  for (int n = 2; n <= window; ++n) {
    auto sq = compose(e.lifts[static_cast<std::size_t>(n - 1)], e.lifts[static_cast<std::size_t>(n)]);
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<int> src;
      for (int a : sq.source) src.push_back(a - ci.u[j].degree);
      e.tilde[j][static_cast<std::size_t>(n)] = FreeMap(ci.poly, sq.target, src);
    }
    for (std::size_t i = 0; i < sq.rows(); ++i)
      for (std::size_t k = 0; k < sq.cols(); ++k) {
        auto parts = splitter.split(sq.at(i, k));
        for (std::size_t j = 0; j < c; ++j) e.tilde[j][static_cast<std::size_t>(n)].at(i, k) = parts[j];
      }
  }
  // On Hom(F, k) only the constant terms of t~ survive; the matrix is transposed.
  e.ops.assign(c, {});
  for (std::size_t j = 0; j < c; ++j)
    for (int n = 0; n + 2 <= window; ++n) {
      const auto& t = e.tilde[j][static_cast<std::size_t>(n + 2)];
      Matrix op(F, e.dims[static_cast<std::size_t>(n + 2)], e.dims[static_cast<std::size_t>(n)]);
      for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t k = 0; k < t.cols(); ++k)
          if (t.entry_degree(i, k) == 0 && !t.at(i, k).is_zero()) op(k, i) = Q.constant_term(t.at(i, k));
      e.ops[j].push_back(std::move(op));
    }
  return e;
}

Matrix ExtTModule::act(const std::vector<int>& a, int n) const {
  const auto& F = field;
  int deg = std::accumulate(a.begin(), a.end(), 0);
  if (n < 0 || n + 2 * deg > window) throw UsageError("operator leaves the Ext window");
  if (deg == 0) return Matrix::identity(F, dims[static_cast<std::size_t>(n)]);
  std::size_t j = 0;
  while (a[j] == 0) ++j;
  auto rest = a;
  --rest[j];
  return ops[j][static_cast<std::size_t>(n + 2 * (deg - 1))] * act(rest, n);
}

bool operators_commute(const ExtTModule& e) {
  for (std::size_t i = 0; i < e.ops.size(); ++i)
    for (std::size_t j = i + 1; j < e.ops.size(); ++j)
      for (int n = 0; n + 4 <= e.window; ++n) {
        auto ij = e.ops[i][static_cast<std::size_t>(n + 2)] * e.ops[j][static_cast<std::size_t>(n)];
        auto ji = e.ops[j][static_cast<std::size_t>(n + 2)] * e.ops[i][static_cast<std::size_t>(n)];
        if (!equal(ij, ji)) return false;
      }
  return true;
}

std::vector<std::vector<int>> t_monomials(int c, int e) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(c), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == c - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[static_cast<std::size_t>(pos)] = k;
      self(self, pos + 1, left - k);
    }
  };
  if (c > 0) rec(rec, 0, e);
  return out;
}

std::string to_string(const PrimeField& field, int c, const TForm& f) {
  auto mons = t_monomials(c, f.degree);
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < mons.size(); ++k) {
    if (f.coeffs[k] == 0) continue;
    auto v = field.to_signed(f.coeffs[k]);
    auto mag = v < 0 ? -v : v;
    if (first) out << (v < 0 ? "-" : "");
    else out << (v < 0 ? " - " : " + ");
    first = false;
    std::ostringstream mono;
    bool any = false;
    for (int j = 0; j < c; ++j) {
      int p = mons[k][static_cast<std::size_t>(j)];
      if (p == 0) continue;
      mono << (any ? "*" : "") << 't' << j + 1;
      if (p > 1) mono << '^' << p;
      any = true;
    }
    if (!any) out << mag;
    else if (mag != 1) out << mag << '*' << mono.str();
    else out << mono.str();
  }
  return first ? "0" : out.str();
}

std::vector<std::string> SupportVarietyReport::ann_strings(const PrimeField& field) const {
  std::vector<std::string> out;
  for (const auto& g : ann_generators) out.push_back(to_string(field, codim, g));
  return out;
}

namespace {

EchelonBasis<PrimeField> span_of(const PrimeField& f, std::size_t n, const std::vector<Vec>& vs) {
  EchelonBasis<PrimeField> s(f, n);
  for (const auto& v : vs) s.insert(v);
  return s;
}

}  // namespace

SupportVarietyReport support_annihilator_window(const ExtTModule& e, int t_degree_max) {
  if (t_degree_max < 1) throw UsageError("t_degree_max must be positive");
  SupportVarietyReport r;
  r.window = e.window;
  r.t_degree_max = t_degree_max;
  r.codim = e.codim;
  int c = e.codim;
  if (e.window < 2) throw UsageError("Ext window too short for the operators");
  const auto& F = e.field;
  bool deep = true;
  for (int deg = 0; deg <= t_degree_max; ++deg) {
    auto mons = t_monomials(c, deg);
    std::vector<Vec> rows;
    int pieces = 0;
    for (int n = 0; n + 2 * deg <= e.window; ++n) {
      std::size_t dn = e.dims[static_cast<std::size_t>(n)], dt = e.dims[static_cast<std::size_t>(n + 2 * deg)];
      ++pieces;
      if (dn == 0 || dt == 0) continue;
      std::vector<Matrix> acts;
      for (const auto& m : mons) acts.push_back(e.act(m, n));
      for (std::size_t a = 0; a < dt; ++a)
        for (std::size_t b = 0; b < dn; ++b) {
          Vec row(mons.size());
          for (std::size_t k = 0; k < mons.size(); ++k) row[k] = acts[k](a, b);
          rows.push_back(std::move(row));
        }
    }
    if (pieces < 3) deep = false;
    std::vector<Vec> basis;
    if (rows.empty()) {
      for (std::size_t k = 0; k < mons.size(); ++k) {
        Vec v(mons.size(), 0);
        v[k] = 1;
        basis.push_back(std::move(v));
      }
    } else {
      Matrix sys(F, rows.size(), mons.size());
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < mons.size(); ++k) sys(i, k) = rows[i][k];
      basis = nullspace_vectors(sys);
    }
    // Generators: the part of ann in this degree not reached from lower degrees.
    EchelonBasis<PrimeField> reached(F, mons.size());
    if (deg > 0) {
      auto lower = t_monomials(c, deg - 1);
      std::map<std::vector<int>, std::size_t> index;
      for (std::size_t k = 0; k < mons.size(); ++k) index[mons[k]] = k;
      for (const auto& g : r.ann_by_degree.back())
        for (int j = 0; j < c; ++j) {
          Vec v(mons.size(), 0);
          for (std::size_t k = 0; k < lower.size(); ++k) {
            if (g[k] == 0) continue;
            auto m = lower[k];
            ++m[static_cast<std::size_t>(j)];
            v[index.at(m)] = g[k];
          }
          reached.insert(std::move(v));
        }
    }
    for (const auto& v : basis) {
      if (reached.contains(v)) continue;
      reached.insert(v);
      Vec g = v;
      std::size_t lead = 0;
      while (g[lead] == 0) ++lead;
      auto inv = F.inv(g[lead]);
      for (auto& x : g) x = F.mul(x, inv);
      r.ann_generators.push_back(TForm{deg, std::move(g)});
    }
    r.ann_by_degree.push_back(std::move(basis));
  }

  bool empty = false, all_zero = true;
  for (int deg = 1; deg <= t_degree_max; ++deg) {
    std::size_t full = t_monomials(c, deg).size();
    const auto& a = r.ann_by_degree[static_cast<std::size_t>(deg)];
    if (a.size() == full) empty = true;
    if (!a.empty()) all_zero = false;
  }
  if (empty) r.dim = -1;
  else if (c == 1) r.dim = 0;
  else if (all_zero) r.dim = c - 1;
  else if (c == 2) r.dim = 0;
  if (r.dim) r.cx_from_variety = *r.dim + 1;
  auto g = growth_from_betti(e.dims, e.finite_pd);
  if (g.cx_confident && g.cx) r.cx_from_growth = *g.cx;
  if (e.finite_pd) r.cx_from_growth = 0;
  bool bounded = r.cx_from_growth == 1;
  if (c == 1) r.is_point = r.dim == 0 && bounded;
  else if (c == 2) r.is_point = !r.ann_by_degree[1].empty() && bounded && r.dim == 0;
  else r.is_point = static_cast<int>(r.ann_by_degree[1].size()) == c - 1 && bounded;
  r.stable = deep && r.cx_from_variety && r.cx_from_growth && *r.cx_from_variety == *r.cx_from_growth;
  return r;
}

bool same_annihilator(const SupportVarietyReport& a, const SupportVarietyReport& b, const PrimeField& field) {
  if (a.ann_by_degree.size() != b.ann_by_degree.size() || a.codim != b.codim) return false;
  for (std::size_t d = 0; d < a.ann_by_degree.size(); ++d) {
    std::size_t n = t_monomials(a.codim, static_cast<int>(d)).size();
    auto sa = span_of(field, n, a.ann_by_degree[d]);
    if (sa.dim() != b.ann_by_degree[d].size()) return false;
    for (const auto& v : b.ann_by_degree[d])
      if (!sa.contains(v)) return false;
  }
  return true;
}

bool annihilators_intersect(const SupportVarietyReport& sum, const SupportVarietyReport& a,
                            const SupportVarietyReport& b, const PrimeField& field) {
  std::size_t D = sum.ann_by_degree.size();
  if (a.ann_by_degree.size() != D || b.ann_by_degree.size() != D) return false;
  for (std::size_t d = 0; d < D; ++d) {
    std::size_t n = t_monomials(sum.codim, static_cast<int>(d)).size();
    auto sa = span_of(field, n, a.ann_by_degree[d]);
    auto sb = span_of(field, n, b.ann_by_degree[d]);
    for (const auto& v : sum.ann_by_degree[d])
      if (!sa.contains(v) || !sb.contains(v)) return false;
    auto both = span_of(field, n, a.ann_by_degree[d]);
    for (const auto& v : b.ann_by_degree[d]) both.insert(v);
    std::size_t meet = sa.dim() + sb.dim() - both.dim();
    if (sum.ann_by_degree[d].size() != meet) return false;
  }
  return true;
}

std::vector<VarietyComponentReport> variety_component_check(const ARQuiver& q, const CIPresentation& ci,
                                                            int window, int t_degree_max,
                                                            const Bounds& bounds) {
  std::vector<VarietyComponentReport> out;
  const auto& F = ci.quotient->field();
  for (const auto& comp : q.stable_components()) {
    VarietyComponentReport r;
    r.vertices = comp;
    r.constant = true;
    std::optional<SupportVarietyReport> first;
    for (std::size_t v : comp) {
      auto rep = support_annihilator_window(eisenbud_operators(ci, q.vertices[v].module, window, bounds),
                                            t_degree_max);
      if (!first) first = std::move(rep);
      else if (!same_annihilator(*first, rep, F)) r.constant = false;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mcm
