#include "mcm/mf.hpp"

#include <deque>
#include <numeric>

#include "mcm/errors.hpp"

namespace mcm {

Hypersurface make_hypersurface(PrimeField field, std::vector<std::string> vars, std::vector<int> weights,
                               const std::string& f) {
  auto q = QuotientRing::make(field, std::move(vars), std::move(weights), {});
  auto a = std::make_shared<QuotientRing>(q->ambient_ptr(), std::vector<Polynomial>{q->ambient().parse(f)});
  Hypersurface hs{q, a, q->element(f), 0};
  if (hs.f.is_zero()) throw InputError("hypersurface equation is zero");
  hs.degree = hs.f.degree;
  return hs;
}

Hypersurface hypersurface_of(const RingPtr& quotient) {
  if (quotient->relations().size() != 1)
    throw InputError("ring is not presented as a hypersurface (needs exactly one relation)");
  auto q = std::make_shared<QuotientRing>(quotient->ambient_ptr(), std::vector<Polynomial>{});
  Hypersurface hs{q, quotient, q->element(quotient->relations()[0]), 0};
  if (hs.f.is_zero()) throw InputError("hypersurface equation is zero");
  hs.degree = hs.f.degree;
  return hs;
}

RingElement change_ring(const RingElement& a, const QuotientRing& target) {
  if (a.coords.empty() || a.is_zero()) return RingElement{&target, a.degree, {}};
  if (a.ring->ambient_ptr() != target.ambient_ptr())
    throw UsageError("change_ring between different polynomial rings");
  return target.from_ambient(a.degree, a.ring->lift_to_ambient(a.degree, a.coords));
}

FreeMap change_ring(const FreeMap& phi, const RingPtr& target) {
  FreeMap out(target, phi.target, phi.source);
  for (std::size_t k = 0; k < phi.entries.size(); ++k)
    if (!phi.entries[k].is_zero()) out.entries[k] = change_ring(phi.entries[k], *target);
  return out;
}

namespace {

struct TwistEdge {
  std::size_t row, col;
  int weight;  // col - row
};

// Row and column degrees with col_j - row_i = weight on every edge.
std::pair<std::vector<int>, std::vector<int>> solve_twists(std::size_t rows, std::size_t cols,
                                                           const std::vector<TwistEdge>& edges) {
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(rows + cols);
  for (const auto& e : edges) {
    adj[e.row].emplace_back(rows + e.col, e.weight);
    adj[rows + e.col].emplace_back(e.row, -e.weight);
  }
  std::vector<int> value(rows + cols, 0);
  std::vector<bool> seen(rows + cols, false);
  for (std::size_t start = 0; start < rows + cols; ++start) {
    if (seen[start]) continue;
    seen[start] = true;
    value[start] = 0;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      for (auto [v, w] : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          value[v] = value[u] + w;
          queue.push_back(v);
        } else if (value[v] != value[u] + w) {
          throw InputError("matrix entries admit no consistent degree twist");
        }
      }
    }
  }
  return {std::vector<int>(value.begin(), value.begin() + static_cast<std::ptrdiff_t>(rows)),
          std::vector<int>(value.begin() + static_cast<std::ptrdiff_t>(rows), value.end())};
}

std::vector<std::vector<RingElement>> parse_entries(const QuotientRing& ring,
                                                    const std::vector<std::vector<std::string>>& text) {
  std::vector<std::vector<RingElement>> out;
  for (const auto& row : text) {
    if (!text.empty() && row.size() != text.front().size()) throw InputError("matrix rows have different lengths");
    std::vector<RingElement> r;
    for (const auto& s : row) r.push_back(ring.element(s));
    out.push_back(std::move(r));
  }
  return out;
}

FreeMap fill(const RingPtr& ring, std::vector<int> target, std::vector<int> source,
             const std::vector<std::vector<RingElement>>& e) {
  FreeMap m(ring, std::move(target), std::move(source));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!e[i][j].is_zero()) m.at(i, j) = e[i][j];
  m.check_degrees();
  return m;
}

}  // namespace

FreeMap matrix_from_strings(const RingPtr& ring, const std::vector<std::vector<std::string>>& entries) {
  auto e = parse_entries(*ring, entries);
  std::size_t rows = e.size(), cols = rows ? e[0].size() : 0;
  std::vector<TwistEdge> edges;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (!e[i][j].is_zero()) edges.push_back({i, j, e[i][j].degree});
  auto [t, s] = solve_twists(rows, cols, edges);
  return fill(ring, t, s, e);
}

bool MatrixFactorization::reduced() const {
  for (const FreeMap* m : {&phi, &psi})
    for (std::size_t i = 0; i < m->rows(); ++i)
      for (std::size_t j = 0; j < m->cols(); ++j)
        if (!m->at(i, j).is_zero() && m->entry_degree(i, j) <= 0) return false;
  return true;
}

MatrixFactorization make_mf(const Hypersurface& hs, const std::vector<std::vector<std::string>>& phi,
                            const std::vector<std::vector<std::string>>& psi) {
  auto a = parse_entries(*hs.poly, phi);
  auto b = parse_entries(*hs.poly, psi);
  std::size_t n = a.size();
  if (b.size() != n || (n && (a[0].size() != n || b[0].size() != n)))
    throw InputError("matrix factorization needs two square matrices of the same size");
  // phi: col_j - row_i = deg phi_ij; psi_ji maps row i (twisted by deg f) to col j.
  std::vector<TwistEdge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!a[i][j].is_zero()) edges.push_back({i, j, a[i][j].degree});
      if (!b[j][i].is_zero()) edges.push_back({i, j, hs.degree - b[j][i].degree});
    }
  auto [g0, g1] = solve_twists(n, n, edges);
  std::vector<int> g0f = g0;
  for (auto& d : g0f) d += hs.degree;
  MatrixFactorization mf{hs, fill(hs.poly, g0, g1, a), fill(hs.poly, g1, g0f, b), ""};
  return mf;
}

namespace {

bool is_scalar_matrix(const FreeMap& m, const RingElement& f) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& e = m.at(i, j);
      if (i != j) {
        if (!e.is_zero()) return false;
      } else if (e.is_zero() || e.degree != f.degree || e.coords != f.coords) {
        return false;
      }
    }
  return true;
}

FreeMap drop(const FreeMap& m, std::size_t row, std::size_t col) {
  std::vector<int> t, s;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (i != row) t.push_back(m.target[i]);
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (j != col) s.push_back(m.source[j]);
  FreeMap out(m.ring, t, s);
  std::size_t oi = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i == row) continue;
    std::size_t oj = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j == col) continue;
      out.at(oi, oj++) = m.at(i, j);
    }
    ++oi;
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> find_unit(const FreeMap& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero() && m.entry_degree(i, j) == 0) return std::make_pair(i, j);
  return std::nullopt;
}

// Clears the unit a(i, j) by row and column operations on a, mirrored on b
// so that ab = ba = f persists, then removes the trivial block.
void eliminate(FreeMap& a, FreeMap& b, std::size_t i, std::size_t j) {
  const auto& R = *a.ring;
  const auto& F = R.field();
  auto uinv = F.inv(R.constant_term(a.at(i, j)));
  for (std::size_t k = 0; k < a.rows(); ++k) {
    if (k == i || a.at(k, j).is_zero()) continue;
    auto c = R.scale(a.at(k, j), uinv);
    for (std::size_t l = 0; l < a.cols(); ++l)
      if (!a.at(i, l).is_zero()) a.at(k, l) = R.sub(a.at(k, l), R.multiply(c, a.at(i, l)));
    for (std::size_t m = 0; m < b.rows(); ++m)
      if (!b.at(m, k).is_zero()) b.at(m, i) = R.add(b.at(m, i), R.multiply(c, b.at(m, k)));
  }
  for (std::size_t l = 0; l < a.cols(); ++l) {
    if (l == j || a.at(i, l).is_zero()) continue;
    auto c = R.scale(a.at(i, l), uinv);
    for (std::size_t m = 0; m < a.rows(); ++m)
      if (!a.at(m, j).is_zero()) a.at(m, l) = R.sub(a.at(m, l), R.multiply(c, a.at(m, j)));
    for (std::size_t m = 0; m < b.cols(); ++m)
      if (!b.at(l, m).is_zero()) b.at(j, m) = R.add(b.at(j, m), R.multiply(c, b.at(l, m)));
  }
  a = drop(a, i, j);
  b = drop(b, j, i);
}

}  // namespace

bool validate(const MatrixFactorization& mf) {
  const auto& phi = mf.phi;
  const auto& psi = mf.psi;
  if (phi.rows() != phi.cols() || psi.rows() != psi.cols() || phi.rows() != psi.rows()) return false;
  auto twisted = phi.target;
  for (auto& d : twisted) d += mf.hs.degree;
  if (psi.target != phi.source || psi.source != twisted)
    throw InputError("matrix factorization twists are inconsistent");
  return is_scalar_matrix(compose(phi, psi), mf.hs.f) &&
         is_scalar_matrix(compose(psi, phi.shifted(-mf.hs.degree)), mf.hs.f);
}

MatrixFactorization mf_reduce(const MatrixFactorization& mf) {
  MatrixFactorization out = mf;
  while (true) {
    if (auto u = find_unit(out.phi)) {
      eliminate(out.phi, out.psi, u->first, u->second);
      continue;
    }
    if (auto u = find_unit(out.psi)) {
      auto partner = out.phi.shifted(-mf.hs.degree);
      eliminate(out.psi, partner, u->first, u->second);
      out.phi = partner.shifted(mf.hs.degree);
      continue;
    }
    return out;
  }
}

GradedModule coker_module(const MatrixFactorization& mf) {
  auto r = mf_reduce(mf);
  if (r.size() == 0) return GradedModule::zero(mf.hs.quotient);
  return minimal_presentation(GradedModule(change_ring(r.phi, mf.hs.quotient)));
}

MatrixFactorization mf_shift(const MatrixFactorization& mf) {
  MatrixFactorization out{mf.hs, mf.psi, mf.phi.shifted(-mf.hs.degree), mf.label.empty() ? "" : mf.label + " shifted"};
  return out;
}

MatrixFactorization mf_transpose(const MatrixFactorization& mf) {
  int df = mf.hs.degree;
  MatrixFactorization out{mf.hs, dual_map(mf.phi).shifted(-df), dual_map(mf.psi).shifted(-2 * df),
                          mf.label.empty() ? "" : mf.label + " transposed"};
  return out;
}

MatrixFactorization mf_direct_sum(const MatrixFactorization& a, const MatrixFactorization& b) {
  if (a.hs.poly != b.hs.poly) throw UsageError("direct sum of factorizations of different rings");
  return MatrixFactorization{a.hs, direct_sum(a.phi, b.phi), direct_sum(a.psi, b.psi), ""};
}

MatrixFactorization from_resolution_tail(const GradedModule& m, const Bounds& bounds) {
  auto hs = hypersurface_of(m.ring());
  auto res = resolve(m, 1, bounds);
  const auto& Q = *hs.poly;
  for (std::size_t n = 0; n < static_cast<std::size_t>(bounds.hom_bound); ++n) {
    extend(res, static_cast<int>(n) + 1, bounds);
    if (res.finite) throw InputError("module has finite projective dimension; no reduced factorization");
    const auto& d = res.maps[n];
    if (d.rows() != d.cols()) continue;
    auto phi = change_ring(d, hs.poly);
    std::vector<int> g0f = phi.target;
    for (auto& x : g0f) x += hs.degree;
    FreeMap psi(hs.poly, phi.source, g0f);
    bool ok = true;
    for (std::size_t i = 0; i < phi.rows() && ok; ++i) {
      int e = g0f[i];
      std::vector<RingElement> comps;
      for (std::size_t r = 0; r < phi.rows(); ++r) comps.push_back(r == i ? hs.f : Q.zero(e - phi.target[r]));
      auto rhs = join_vector(Q, phi.target, e, comps);
      auto sol = solve(degree_matrix(phi, e), rhs);
      if (!sol) {
        ok = false;
        break;
      }
      auto col = split_vector(Q, phi.source, e, *sol);
      for (std::size_t r = 0; r < phi.cols(); ++r) psi.at(r, i) = col[r];
    }
    if (!ok) continue;
    MatrixFactorization mf{hs, phi, psi, "tail at step " + std::to_string(n)};
    if (validate(mf)) return mf;
  }
  throw Inconclusive("no factorization found within " + std::to_string(bounds.hom_bound) + " resolution steps");
}

namespace {

std::string power(const std::string& v, int e) {
  if (e == 0) return "1";
  return e == 1 ? v : v + "^" + std::to_string(e);
}

}  // namespace

Catalog ade_catalog(const std::string& family, int n, int dim, std::uint32_t p) {
  if (family != "A") throw InputError("unsupported family '" + family + "' (only A is shipped)");
  if (dim != 1 && dim != 2) throw InputError("unsupported dimension " + std::to_string(dim));
  if (dim == 1 && (n < 1 || n > 8)) throw InputError("A_n curves are shipped for 1 <= n <= 8");
  if (dim == 2 && (n < 1 || n > 4)) throw InputError("A_n surfaces are shipped for 1 <= n <= 4");
  PrimeField F(p);
  if (p == 2) throw InputError("characteristic 2 is not supported by the A catalog");
  bool needs_i = dim == 2 || n % 2 == 1;
  PrimeField::Element i = 0;
  if (needs_i && !F.sqrt_minus_one(i))
    throw InputError("this catalog entry needs a square root of -1: p must be 1 mod 4");

  Catalog cat;
  cat.family = family;
  cat.index = n;
  cat.dim = dim;
  cat.field_constraint = needs_i ? "p = 1 mod 4" : "p odd";
  int g = std::gcd(n + 1, 2);
  int wx = (n + 1) / g, wy = 2 / g;
  std::string e = std::to_string(n + 1);
  std::string is = std::to_string(i), ms = std::to_string(p - i);
  if (dim == 1) {
    cat.hs = make_hypersurface(F, {"x", "y"}, {wx, wy}, "x^2+y^" + e);
    for (int j = 1; 2 * j <= n; ++j) {
      std::vector<std::vector<std::string>> phi = {{"x", power("y", j)}, {power("y", n + 1 - j), "-x"}};
      auto mf = make_mf(cat.hs, phi, phi);
      mf.label = "A" + std::to_string(n) + " curve j=" + std::to_string(j);
      cat.entries.push_back(std::move(mf));
    }
    if (n % 2 == 1) {
      std::string ym = power("y", (n + 1) / 2);
      std::string plus = "x+" + is + "*" + ym, minus = "x+" + ms + "*" + ym;
      auto a = make_mf(cat.hs, {{plus}}, {{minus}});
      a.label = "A" + std::to_string(n) + " curve N+";
      auto b = make_mf(cat.hs, {{minus}}, {{plus}});
      b.label = "A" + std::to_string(n) + " curve N-";
      cat.entries.push_back(std::move(a));
      cat.entries.push_back(std::move(b));
    }
  } else {
    cat.hs = make_hypersurface(F, {"x", "y", "z"}, {wx, wx, wy}, "x^2+y^2+z^" + e);
    std::string u = "x+" + is + "*y", v = "x+" + ms + "*y";
    for (int j = 1; j <= n; ++j) {
      std::string zj = power("z", j), zk = power("z", n + 1 - j);
      auto mf = make_mf(cat.hs, {{u, zj}, {"-" + zk, v}}, {{v, "-" + zj}, {zk, u}});
      mf.label = "A" + std::to_string(n) + " surface j=" + std::to_string(j);
      cat.entries.push_back(std::move(mf));
    }
  }
  int maxw = std::max(wx, wy);
  cat.recommended_degree_cap = 4 * cat.hs.degree + 2 * maxw;
  return cat;
}

}  // namespace mcm
