#include "mcm/quiver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "mcm/errors.hpp"

namespace mcm {

std::vector<NamedModule> catalog_modules(const Catalog& catalog) {
  std::vector<NamedModule> out;
  for (const auto& e : catalog.entries) {
    std::string name = e.label;
    auto j = name.find("j=");
    if (j != std::string::npos) {
      name = "M" + name.substr(j + 2);
    } else if (auto sp = name.rfind(' '); sp != std::string::npos) {
      name = name.substr(sp + 1);
    }
    out.push_back({name, coker_module(e)});
  }
  return out;
}

// ------------------------------------------------------------ filtration

namespace {

std::uint64_t salted(const Bounds& b, std::uint64_t salt) { return b.seed * 0x9E3779B97F4A7C15ULL ^ salt; }

// x * h for h in (M, N(t - deg x)), read in (M, N(t)).
Vec times_element(const HomSpace& from, const Vec& h, const RingElement& x) {
  const auto& M = from.source();
  const auto& N = from.target();
  const auto& A = *M.ring();
  Vec out;
  for (std::size_t i = 0; i < M.num_generators(); ++i) {
    int a = M.gen_degrees()[i];
    Vec amb = N.piece(a).lift(from.image(h, i));
    auto layout = free_layout(A, N.gen_degrees(), a + x.degree);
    Vec acc(layout.total, 0);
    free_scale_accumulate(A, N.gen_degrees(), a, amb, x, acc);
    Vec nf = N.piece(a + x.degree).normal_form(std::move(acc));
    out.insert(out.end(), nf.begin(), nf.end());
  }
  return out;
}

// An isomorphism in H, found among random combinations of the basis.
Vec find_iso(const HomSpace& H, const Bounds& bounds) {
  const auto& F = H.source().ring()->field();
  std::size_t n = H.target().num_generators();
  std::mt19937_64 rng(salted(bounds, 0x9e0));
  std::uniform_int_distribution<std::uint32_t> dist(0, F.characteristic() - 1);
  for (int t = 0; t < 4 * bounds.iso_samples; ++t) {
    Vec c(H.dim());
    for (auto& x : c) x = dist(rng);
    Vec h = H.combine(c);
    if (rank(top_matrix(H, h)) == n) return h;
  }
  throw Inconclusive("no isomorphism found among random samples");
}

std::vector<Vec> span_rows(const EchelonBasis<PrimeField>& span) {
  std::vector<Vec> out;
  for (const auto& r : span.rows()) out.push_back(r);
  return out;
}

}  // namespace

RadicalFiltration::RadicalFiltration(std::vector<GradedModule> catalog, Bounds bounds)
    : bounds_(bounds) {
  for (auto& m : catalog) {
    auto M = minimal_presentation(m);
    HomSpace end(M, M);
    auto local = local_endomorphism_ring(end, bounds_);
    if (!local) throw InputError("catalog member is decomposable");
    end_radicals_.push_back(local->radical);
    catalog_.push_back(std::move(M));
  }
}

void RadicalFiltration::check_cap(const GradedModule& src, const GradedModule& tgt) const {
  int top = src.max_gen_degree();
  for (int r : src.rel_degrees()) top = std::max(top, r);
  if (top + tgt.shift() > bounds_.degree_cap)
    throw Inconclusive("radical filtration needs degree " + std::to_string(top + tgt.shift()) +
                       " beyond degree_cap " + std::to_string(bounds_.degree_cap));
}

const HomSpace& RadicalFiltration::hom(std::size_t i, std::size_t j, int t) {
  auto key = std::tuple{i, j, t};
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    auto target = catalog_.at(j).shifted(t);
    check_cap(catalog_.at(i), target);
    Entry e;
    e.space = std::make_unique<HomSpace>(catalog_[i], target);
    e.rad1 = (i == j && t == 0) ? end_radicals_[i] : e.space->basis();
    it = cache_.emplace(key, std::move(e)).first;
  }
  return *it->second.space;
}

const std::vector<Vec>& RadicalFiltration::rad1(std::size_t i, std::size_t j, int t) {
  hom(i, j, t);
  return cache_.at(std::tuple{i, j, t}).rad1;
}

std::vector<Vec> RadicalFiltration::rad2(std::size_t i, std::size_t j, int t) {
  const auto& M = catalog_.at(i);
  const auto& N = catalog_.at(j);
  const auto& target = hom(i, j, t);
  EchelonBasis<PrimeField> span(M.ring()->field(), target.coord_dim());
  for (std::size_t x = 0; x < catalog_.size(); ++x) {
    const auto& X = catalog_[x];
    // Outside this window one of the two factors vanishes.
    int ulo = X.min_gen_degree() - M.max_gen_degree();
    int uhi = X.max_gen_degree() + t - N.min_gen_degree();
    for (int u = ulo; u <= uhi; ++u) {
      if (rad1(i, x, u).empty() || rad1(x, j, t - u).empty()) continue;
      const auto& fs = hom(i, x, u);
      const auto& gs = hom(x, j, t - u);
      for (const auto& g : rad1(x, j, t - u))
        for (const auto& f : rad1(i, x, u)) {
          if (span.dim() == target.dim()) return span_rows(span);
          span.insert(compose(gs, g, fs, f));
        }
    }
  }
  return span_rows(span);
}

FiltrationLayer RadicalFiltration::layer(std::size_t i, std::size_t j, int t) {
  FiltrationLayer l;
  l.shift = t;
  l.hom_dim = hom(i, j, t).dim();
  l.rad1_dim = rad1(i, j, t).size();
  l.rad2_dim = l.rad1_dim == 0 ? 0 : rad2(i, j, t).size();
  return l;
}

const std::vector<int>& RadicalFiltration::candidate_shifts(std::size_t i, std::size_t j) {
  auto key = std::pair{i, j};
  if (auto it = candidates_.find(key); it != candidates_.end()) return it->second;
  const auto& M = catalog_.at(i);
  const auto& N = catalog_.at(j);
  const auto& A = *M.ring();
  const auto& F = A.field();
  std::set<int> out;
  if (M.is_zero_module() || N.is_zero_module()) return candidates_[key];
  int lo = N.min_gen_degree() - M.max_gen_degree();
  int margin = std::max({0, M.presentation().max_entry_degree(), N.presentation().max_entry_degree(),
                         A.max_relation_degree()}) +
               A.max_weight();
  int last = lo;
  for (int t = lo; t <= last + margin; ++t) {
    const auto& H = hom(i, j, t);
    if (H.dim() == 0) continue;
    // Generators of the Hom module in degree t: H_t modulo m * H.
    EchelonBasis<PrimeField> span(F, H.coord_dim());
    for (std::size_t v = 0; v < A.num_vars(); ++v) {
      int w = A.weights()[v];
      if (t - w < lo) continue;
      const auto& Hp = hom(i, j, t - w);
      auto x = A.variable(v);
      for (const auto& h : Hp.basis()) span.insert(times_element(Hp, h, x));
    }
    if (span.dim() < H.dim()) {
      out.insert(t);
      last = t;
    }
  }
  if (i == j)
    for (int w : A.weights()) out.insert(w);
  return candidates_[key] = std::vector<int>(out.begin(), out.end());
}

std::vector<FiltrationLayer> RadicalFiltration::irreducible_layers(std::size_t i, std::size_t j) {
  std::vector<FiltrationLayer> out;
  for (int t : candidate_shifts(i, j)) {
    auto l = layer(i, j, t);
    if (l.irr() > 0) out.push_back(l);
  }
  return out;
}

std::size_t RadicalFiltration::irr(std::size_t i, std::size_t j) {
  std::size_t s = 0;
  for (const auto& l : irreducible_layers(i, j)) s += l.irr();
  return s;
}

std::vector<Vec> RadicalFiltration::irreducible_maps(std::size_t i, std::size_t j, int t) {
  const auto& H = hom(i, j, t);
  EchelonBasis<PrimeField> span(catalog_.at(i).ring()->field(), H.coord_dim());
  for (auto& v : rad2(i, j, t)) span.insert(std::move(v));
  std::vector<Vec> out;
  for (const auto& v : rad1(i, j, t)) {
    if (span.contains(v)) continue;
    span.insert(v);
    out.push_back(v);
  }
  return out;
}

std::vector<Vec> RadicalFiltration::rad1(const HomSpace& H) {
  const auto& P = H.source();
  const auto& Q = H.target();
  auto s = find_shift_isomorphism(P, Q, bounds_);
  if (!s || *s != 0) return H.basis();
  HomSpace end(P, P);
  auto local = local_endomorphism_ring(end, bounds_);
  if (!local) throw UsageError("radical of a decomposable module");
  Vec phi = find_iso(H, bounds_);
  std::vector<Vec> out;
  for (const auto& r : local->radical) out.push_back(compose(H, phi, end, r));
  return out;
}

std::vector<Vec> RadicalFiltration::rad2(const HomSpace& H) {
  const auto& P = H.source();
  const auto& Q = H.target();
  EchelonBasis<PrimeField> span(P.ring()->field(), H.coord_dim());
  for (const auto& X : catalog_) {
    int ulo = X.min_gen_degree() - P.max_gen_degree();
    int uhi = X.max_gen_degree() - Q.min_gen_degree();
    for (int u = ulo; u <= uhi; ++u) {
      auto Xu = X.shifted(u);
      check_cap(P, Xu);
      check_cap(Xu, Q);
      HomSpace fs(P, Xu), gs(Xu, Q);
      if (fs.dim() == 0 || gs.dim() == 0) continue;
      auto f1 = rad1(fs);
      if (f1.empty()) continue;
      auto g1 = rad1(gs);
      for (const auto& g : g1)
        for (const auto& f : f1) span.insert(compose(gs, g, fs, f));
    }
  }
  return span_rows(span);
}

// ---------------------------------------------------------------- quiver

std::size_t ARQuiver::irr(std::size_t from, std::size_t to) const {
  for (const auto& a : arrows)
    if (a.source == from && a.target == to) return a.irr;
  return 0;
}

std::optional<std::size_t> ARQuiver::free_vertex() const {
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (vertices[v].free) return v;
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> ARQuiver::stable_components() const {
  std::size_t n = vertices.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& a : arrows) {
    if (vertices[a.source].free || vertices[a.target].free) continue;
    parent[find(a.source)] = find(a.target);
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < n; ++v)
    if (!vertices[v].free) groups[find(v)].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> ARQuiver::find_vertex(const GradedModule& m, const Bounds& bounds) const {
  auto M = minimal_presentation(m);
  if (M.is_zero_module()) return std::nullopt;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (vertices[v].mu != M.num_generators()) continue;
    if (find_shift_isomorphism(M, vertices[v].module, bounds)) return v;
  }
  return std::nullopt;
}

bool ARQuiver::residue_flag() const {
  return std::any_of(vertices.begin(), vertices.end(), [](const auto& v) { return v.residue_dim > 1; });
}

GradedModule tau(const GradedModule& m, const Bounds& bounds) { return ar_translate(m, bounds); }

namespace {

std::string describe(const GradedModule& m, const Bounds& bounds) {
  std::ostringstream out;
  out << "mu=" << mu(m) << ", e=" << multiplicity(m, bounds) << ", generator degrees";
  for (int d : minimal_presentation(m).gen_degrees()) out << ' ' << d;
  return out.str();
}

}  // namespace

ARQuiver build_quiver(const RingPtr& ring, const std::vector<NamedModule>& catalog, const Bounds& bounds) {
  ARQuiver q;
  q.ring = ring;
  q.dim = krull_dimension(ring, bounds);
  for (const auto& entry : catalog) {
    if (entry.module.ring().get() != ring.get()) throw UsageError("catalog member over a different ring");
    QuiverVertex v;
    v.name = entry.name;
    v.module = minimal_presentation(entry.module);
    if (v.module.is_zero_module()) throw InputError("catalog member " + entry.name + " is zero");
    v.free = v.module.is_free();
    if (v.free && v.module.num_generators() != 1) throw InputError("catalog member " + entry.name + " is decomposable");
    HomSpace end(v.module, v.module);
    auto local = local_endomorphism_ring(end, bounds);
    if (!local) throw InputError("catalog member " + entry.name + " is decomposable");
    v.residue_dim = local->residue_dim;
    q.vertices.push_back(std::move(v));
  }
  if (!q.free_vertex()) {
    QuiverVertex a;
    a.name = "A";
    a.module = GradedModule::free(ring, {0});
    a.free = true;
    q.vertices.push_back(std::move(a));
  }
  for (auto& v : q.vertices) {
    v.mu = v.module.num_generators();
    v.multiplicity = multiplicity(v.module, bounds);
  }
  for (std::size_t a = 0; a < q.vertices.size(); ++a)
    for (std::size_t b = a + 1; b < q.vertices.size(); ++b)
      if (q.vertices[a].mu == q.vertices[b].mu &&
          find_shift_isomorphism(q.vertices[a].module, q.vertices[b].module, bounds))
        throw InputError("catalog members " + q.vertices[a].name + " and " + q.vertices[b].name +
                         " are isomorphic up to shift");
  std::stable_sort(q.vertices.begin(), q.vertices.end(), [](const auto& x, const auto& y) {
    return std::tuple{!x.free, x.mu, x.multiplicity, x.name} < std::tuple{!y.free, y.mu, y.multiplicity, y.name};
  });

  std::vector<GradedModule> modules;
  for (const auto& v : q.vertices) modules.push_back(v.module);
  q.filtration = std::make_shared<RadicalFiltration>(modules, bounds);
  for (std::size_t i = 0; i < q.vertices.size(); ++i)
    for (std::size_t j = 0; j < q.vertices.size(); ++j) {
      auto layers = q.filtration->irreducible_layers(i, j);
      std::size_t total = 0;
      for (const auto& l : layers) total += l.irr();
      if (total > 0) q.arrows.push_back(Arrow{i, j, total, std::move(layers)});
    }

  q.tau.assign(q.vertices.size(), std::nullopt);
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    if (q.vertices[v].free) continue;
    auto t = tau(q.vertices[v].module, bounds);
    auto idx = q.find_vertex(t, bounds);
    if (!idx)
      throw InputError("catalog incomplete: tau(" + q.vertices[v].name + ") is missing (" + describe(t, bounds) + ")");
    q.tau[v] = idx;
  }
  // Additivity of multiplicity on each AR sequence detects missing summands.
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    if (q.vertices[v].free) continue;
    auto data = middle_term(q, v);
    std::size_t expected = q.vertices[v].multiplicity + q.vertices[data.tau].multiplicity;
    if (data.middle_multiplicity != expected)
      throw InputError("catalog incomplete: middle term of " + q.vertices[v].name + " has e=" +
                       std::to_string(data.middle_multiplicity) + ", expected " + std::to_string(expected) +
                       " (" + describe(q.vertices[v].module, bounds) + ")");
  }
  return q;
}

ARSequenceData middle_term(const ARQuiver& q, std::size_t vertex) {
  if (vertex >= q.vertices.size() || !q.tau.at(vertex)) throw UsageError("middle term of the free vertex");
  ARSequenceData out;
  out.vertex = vertex;
  out.tau = *q.tau[vertex];
  for (std::size_t n = 0; n < q.vertices.size(); ++n) {
    std::size_t k = q.irr(n, vertex) / static_cast<std::size_t>(q.vertices[n].residue_dim);
    if (k == 0) continue;
    out.middle.emplace_back(n, k);
    if (q.vertices[n].free) out.middle_free_rank += k;
    out.middle_mu += k * q.vertices[n].mu;
    out.middle_multiplicity += k * q.vertices[n].multiplicity;
  }
  if (auto f = q.free_vertex()) out.touches_free = q.irr(*f, vertex) > 0 || q.irr(out.tau, *f) > 0;
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> middle_from_tau(const ARQuiver& q, std::size_t vertex) {
  if (vertex >= q.vertices.size() || !q.tau.at(vertex)) throw UsageError("middle term of the free vertex");
  std::size_t t = *q.tau[vertex];
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t n = 0; n < q.vertices.size(); ++n) {
    std::size_t k = q.irr(t, n) / static_cast<std::size_t>(q.vertices[t].residue_dim);
    if (k > 0) out.emplace_back(n, k);
  }
  return out;
}

ReverseCheck reverse_iso_check(const ARQuiver& q, QuiverFunctor functor, const Bounds& bounds) {
  ReverseCheck out;
  std::size_t n = q.vertices.size();
  out.bijection.assign(n, n);
  std::vector<bool> hit(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (q.vertices[v].free) {
      out.bijection[v] = v;
      hit[v] = true;
      continue;
    }
    const auto& M = q.vertices[v].module;
    auto image = functor == QuiverFunctor::Dual ? dual(M, bounds) : link(M, bounds);
    auto idx = q.find_vertex(image, bounds);
    if (!idx)
      throw InputError("catalog incomplete: image of " + q.vertices[v].name + " is missing (" +
                       describe(image, bounds) + ")");
    if (q.vertices[*idx].free || hit[*idx]) {
      out.detail = "vertex map is not a bijection of the stable quiver at " + q.vertices[v].name;
      return out;
    }
    out.bijection[v] = *idx;
    hit[*idx] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (q.vertices[i].free || q.vertices[j].free) continue;
      if (q.irr(i, j) != q.irr(out.bijection[j], out.bijection[i])) {
        out.detail = "arrow " + q.vertices[i].name + " -> " + q.vertices[j].name + " is not reversed";
        return out;
      }
    }
  out.ok = true;
  return out;
}

OrbitIdeal syzygy_orbit_ideal(const ARQuiver& q, const std::vector<std::size_t>& component, int n_max,
                              const Bounds& bounds) {
  if (n_max < 1) throw UsageError("n_max must be positive");
  OrbitIdeal out;
  std::set<std::size_t> members(component.begin(), component.end());
  for (std::size_t v : component) {
    auto res = resolve(q.vertices.at(v).module, n_max + 1, bounds);
    std::optional<int> found;
    for (int k = 1; k <= n_max && !found; ++k) {
      auto s = syzygy_from(res, k);
      if (minimal_presentation(s).is_zero_module()) break;
      auto idx = q.find_vertex(s, bounds);
      if (idx && members.count(*idx)) found = k;
    }
    out.per_vertex.push_back(found);
  }
  out.constant = std::adjacent_find(out.per_vertex.begin(), out.per_vertex.end(),
                                    std::not_equal_to<>()) == out.per_vertex.end();
  if (out.constant && !out.per_vertex.empty()) out.generator = out.per_vertex.front();
  return out;
}

std::string VertexProperty::name() const {
  switch (kind) {
    case Periodic:
      return "periodic";
    case BoundedNonperiodic:
      return "bounded_nonperiodic";
    case Ulrich:
      return "ulrich";
    case CxEquals:
      return "cx=" + std::to_string(cx);
    case CurvLeq: {
      std::ostringstream out;
      out << "curv<=" << alpha;
      return out.str();
    }
  }
  return "";
}

VertexProperty parse_property(const std::string& text) {
  VertexProperty p;
  if (text == "periodic") return p;
  if (text == "bounded_nonperiodic") {
    p.kind = VertexProperty::BoundedNonperiodic;
    return p;
  }
  if (text == "ulrich") {
    p.kind = VertexProperty::Ulrich;
    return p;
  }
  try {
    if (text.rfind("cx=", 0) == 0) {
      p.kind = VertexProperty::CxEquals;
      std::size_t used = 0;
      p.cx = std::stoi(text.substr(3), &used);
      if (used == text.size() - 3 && p.cx >= 0) return p;
    } else if (text.rfind("curv<=", 0) == 0) {
      p.kind = VertexProperty::CurvLeq;
      std::size_t used = 0;
      p.alpha = std::stod(text.substr(6), &used);
      if (used == text.size() - 6) return p;
    }
  } catch (const std::logic_error&) {
  }
  throw InputError("unknown property '" + text + "'");
}

namespace {

std::optional<bool> evaluate(const GradedModule& m, const VertexProperty& p, const Bounds& bounds) {
  try {
    switch (p.kind) {
      case VertexProperty::Periodic:
        return detect_period(m, bounds.period_max, bounds.period_start_max, bounds).has_value();
      case VertexProperty::BoundedNonperiodic: {
        auto g = growth_report(m, bounds, false);
        if (!g.cx_confident) return std::nullopt;
        bool bounded = !g.finite_pd && g.cx == 1;
        return bounded && !detect_period(m, bounds.period_max, bounds.period_start_max, bounds);
      }
      case VertexProperty::Ulrich:
        return ulrich_test(m, bounds);
      case VertexProperty::CxEquals: {
        auto g = growth_report(m, bounds, false);
        if (!g.cx_confident || !g.cx) return std::nullopt;
        return *g.cx == p.cx;
      }
      case VertexProperty::CurvLeq: {
        auto g = growth_report(m, bounds, false);
        if (!g.curv_confident) return std::nullopt;
        return g.curv <= p.alpha + 1e-9;
      }
    }
  } catch (const Inconclusive&) {
  }
  return std::nullopt;
}

}  // namespace

std::vector<ComponentReport> component_classify(const ARQuiver& q, const VertexProperty& property,
                                                const Bounds& bounds) {
  std::vector<ComponentReport> out;
  for (const auto& comp : q.stable_components()) {
    ComponentReport r;
    r.vertices = comp;
    bool any_true = false, any_false = false, unknown = false;
    for (std::size_t v : comp) {
      auto f = evaluate(q.vertices[v].module, property, bounds);
      r.flags.push_back(f);
      if (!f) unknown = true;
      else if (*f) any_true = true;
      else any_false = true;
    }
    if (any_true && any_false) r.verdict = "violation";
    else if (unknown) r.verdict = "partial";
    else r.verdict = any_true ? "true" : "false";
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_dot(const ARQuiver& q) {
  std::vector<std::size_t> order(q.vertices.size());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = q.vertices[a];
    const auto& y = q.vertices[b];
    return std::tuple{!x.free, x.mu, x.multiplicity, x.name} < std::tuple{!y.free, y.mu, y.multiplicity, y.name};
  });
  std::ostringstream out;
  out << "digraph AR {\n";
  for (std::size_t v : order) {
    const auto& x = q.vertices[v];
    out << "  \"" << x.name << "\" [label=\"" << x.name << " (μ=" << x.mu << ", e=" << x.multiplicity
        << ")\"" << (x.free ? ", shape=doublecircle" : "") << "];\n";
  }
  std::vector<std::size_t> rank(q.vertices.size());
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
  auto arrows = q.arrows;
  std::sort(arrows.begin(), arrows.end(), [&](const Arrow& a, const Arrow& b) {
    return std::pair{rank[a.source], rank[a.target]} < std::pair{rank[b.source], rank[b.target]};
  });
  for (const auto& a : arrows)
    out << "  \"" << q.vertices[a.source].name << "\" -> \"" << q.vertices[a.target].name << "\" [label=\""
        << a.irr << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace mcm
