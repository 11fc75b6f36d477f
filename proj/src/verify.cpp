#include "mcm/verify.hpp"

#include <functional>
#include <sstream>

#include "mcm/functors.hpp"

namespace mcm {

namespace {

CheckResult run_check(const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  try {
    return {name, body(detail) ? "pass" : "fail", detail};
  } catch (const Inconclusive& e) {
    return {name, "inconclusive", e.what()};
  }
}

// Every non-free vertex must satisfy the predicate; the first failure is named.
bool all_vertices(const ARQuiver& q, std::string& detail,
                  const std::function<bool(const QuiverVertex&)>& pred) {
  for (const auto& v : q.vertices) {
    if (v.free) continue;
    if (!pred(v)) {
      detail = "fails at " + v.name;
      return false;
    }
  }
  detail = std::to_string(q.vertices.size() - 1) + " vertices";
  return true;
}

void symmetry(const ARQuiver& q, const Bounds& b, int dim, std::vector<CheckResult>& out) {
  out.push_back(run_check("lambda^2 = id", [&](std::string& d) {
    return all_vertices(q, d, [&](const QuiverVertex& v) {
      return is_isomorphic(link(link(v.module, b), b), v.module, b);
    });
  }));
  out.push_back(run_check("D^2 = id", [&](std::string& d) {
    return all_vertices(q, d, [&](const QuiverVertex& v) {
      return is_isomorphic(dual(dual(v.module, b), b), v.module, b);
    });
  }));
  out.push_back(run_check("Syz_-1 D = lambda", [&](std::string& d) {
    return all_vertices(q, d, [&](const QuiverVertex& v) {
      return is_isomorphic(cosyzygy(dual(v.module, b), 1, b), link(v.module, b), b);
    });
  }));
  if (dim == 2)
    out.push_back(run_check("lambda(M) = M", [&](std::string& d) {
      return all_vertices(q, d, [&](const QuiverVertex& v) {
        return find_shift_isomorphism(link(v.module, b), v.module, b).has_value();
      });
    }));
  for (auto [f, name] : {std::pair{QuiverFunctor::Dual, "reverse-iso D"},
                         std::pair{QuiverFunctor::Link, "reverse-iso lambda"}})
    out.push_back(run_check(name, [&, f = f](std::string& d) {
      auto r = reverse_iso_check(q, f, b);
      d = r.detail;
      return r.ok;
    }));
  out.push_back(run_check("Syz_3 = Syz_1", [&](std::string& d) {
    return all_vertices(q, d, [&](const QuiverVertex& v) {
      return find_shift_isomorphism(minimal_presentation(syzygy(v.module, 3, b)),
                                    minimal_presentation(syzygy(v.module, 1, b)), b)
          .has_value();
    });
  }));
}

void periodicity(const ARQuiver& q, const Bounds& b, std::vector<CheckResult>& out) {
  out.push_back(run_check("period <= 2", [&](std::string& d) {
    return all_vertices(q, d, [&](const QuiverVertex& v) {
      auto p = detect_period(v.module, b.period_max, b.period_start_max, b);
      if (!p) throw Inconclusive("no period found for " + v.name + " within the bounds");
      return p->period <= 2;
    });
  }));
}

void ar_sequences(const ARQuiver& q, const Bounds& b, std::vector<CheckResult>& out) {
  out.push_back(run_check("middle term routes agree", [&](std::string& d) {
    for (std::size_t v = 0; v < q.vertices.size(); ++v)
      if (!q.vertices[v].free && middle_term(q, v).middle != middle_from_tau(q, v)) {
        d = "fails at " + q.vertices[v].name;
        return false;
      }
    return true;
  }));
  out.push_back(run_check("mu(E_M) = mu(M) + mu(tau M)", [&](std::string& d) {
    std::size_t n = 0;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
      if (q.vertices[v].free) continue;
      auto m = middle_term(q, v);
      if (!m.mu_identity_applies()) continue;
      ++n;
      if (m.middle_mu != q.vertices[v].mu + q.vertices[m.tau].mu) {
        d = "fails at " + q.vertices[v].name;
        return false;
      }
    }
    d = std::to_string(n) + " vertices away from [A]";
    return true;
  }));
  out.push_back(run_check("e(E_M) = e(M) + e(tau M)", [&](std::string& d) {
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
      if (q.vertices[v].free) continue;
      auto m = middle_term(q, v);
      if (m.middle_multiplicity != q.vertices[v].multiplicity + q.vertices[m.tau].multiplicity) {
        d = "fails at " + q.vertices[v].name;
        return false;
      }
    }
    return true;
  }));
  out.push_back(run_check("e(Syz_1 M) = e(A) mu(M) - e(M)", [&](std::string& d) {
    auto eA = multiplicity(GradedModule::free(q.ring, {0}), b);
    return all_vertices(q, d, [&](const QuiverVertex& v) {
      return multiplicity(syzygy(v.module, 1, b), b) + v.multiplicity == eA * v.mu;
    });
  }));
}

void ulrich(const ARQuiver& q, const Bounds& b, std::vector<CheckResult>& out) {
  auto eA = multiplicity(GradedModule::free(q.ring, {0}), b);
  if (eA != 2) {
    out.push_back({"ulrich at e(A) = 2", "pass", "not applicable: e(A) = " + std::to_string(eA)});
    return;
  }
  out.push_back(run_check("ulrich at e(A) = 2", [&](std::string& d) {
    return all_vertices(q, d, [&](const QuiverVertex& v) { return ulrich_test(v.module, b); });
  }));
}

void lifting(const ARQuiver& q, const Bounds& b, std::vector<CheckResult>& out) {
  out.push_back(run_check("lifted irreducible maps", [&](std::string& d) {
    auto& filt = *q.filtration;
    const auto& F = q.ring->field();
    std::size_t checked = 0;
    for (const auto& arrow : q.arrows) {
      if (q.vertices[arrow.source].free || q.vertices[arrow.target].free) continue;
      for (const auto& layer : arrow.layers) {
        const auto& H = filt.hom(arrow.source, arrow.target, layer.shift);
        for (const auto& f : filt.irreducible_maps(arrow.source, arrow.target, layer.shift)) {
          auto lifted = lift_map(H, f, b);
          HomSpace L(minimal_presentation(lifted.source), minimal_presentation(lifted.target));
          EchelonBasis<PrimeField> r1(F, L.coord_dim()), r2(F, L.coord_dim());
          for (const auto& v : filt.rad1(L)) r1.insert(v);
          for (const auto& v : filt.rad2(L)) r2.insert(v);
          if (!r1.contains(lifted.map) || r2.contains(lifted.map)) {
            d = "fails on " + q.vertices[arrow.source].name + " -> " + q.vertices[arrow.target].name;
            return false;
          }
          ++checked;
        }
      }
    }
    d = std::to_string(checked) + " maps";
    return true;
  }));
}

void components(const ARQuiver& q, const Bounds& b, std::vector<CheckResult>& out) {
  for (const char* p : {"periodic", "ulrich", "cx=1"})
    out.push_back(run_check(std::string("constant on components: ") + p, [&](std::string& d) {
      std::ostringstream s;
      bool ok = true;
      for (const auto& r : component_classify(q, parse_property(p), b)) {
        if (r.verdict == "partial") throw Inconclusive(std::string(p) + ": a bound was hit");
        if (r.verdict == "violation") ok = false;
        s << (s.tellp() > 0 ? " " : "") << r.verdict;
      }
      d = s.str();
      return ok;
    }));
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"symmetry", "periodicity", "ar", "ulrich", "lifting", "components", "all"};
}

std::vector<CheckResult> run_suite(const std::string& suite, const Catalog& catalog, const Bounds& bounds) {
  bool all = suite == "all";
  bool known = false;
  for (const auto& s : suite_names()) known = known || s == suite;
  if (!known) throw InputError("unknown suite '" + suite + "'");
  auto q = build_quiver(catalog.hs.quotient, catalog_modules(catalog), bounds);
  std::vector<CheckResult> out;
  if (all || suite == "symmetry") symmetry(q, bounds, catalog.dim, out);
  if (all || suite == "periodicity") periodicity(q, bounds, out);
  if (all || suite == "ar") ar_sequences(q, bounds, out);
  if (all || suite == "ulrich") ulrich(q, bounds, out);
  if (all || suite == "lifting") lifting(q, bounds, out);
  if (all || suite == "components") components(q, bounds, out);
  return out;
}

std::string overall_status(const std::vector<CheckResult>& results) {
  std::string s = "pass";
  for (const auto& r : results) {
    if (r.status == "fail") return "fail";
    if (r.status == "inconclusive") s = "inconclusive";
  }
  return s;
}

}  // namespace mcm
