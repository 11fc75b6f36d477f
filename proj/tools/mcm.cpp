// Command-line front-end: loads rings, modules, factorizations and catalogs
// from JSON, runs one operation and writes CSV, DOT or JSON.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mcm/ci.hpp"
#include "mcm/functors.hpp"
#include "mcm/io.hpp"
#include "mcm/verify.hpp"

using namespace mcm;

namespace {

struct Job {
  std::string module_path, mf_path, catalog, property, suite = "symmetry", out;
  std::string format;
  std::uint32_t modulus = 0;
  int degree_bound = 0;  // 0: default of the input
  int hom_bound = 12;
  int period_max = 4;
  int start_max = 4;
  int tdeg_max = 3;
  int n = 1;
  std::uint64_t seed = Bounds{}.seed;
};

std::optional<std::uint32_t> modulus_of(const Job& job) {
  return job.modulus ? std::optional<std::uint32_t>(job.modulus) : std::nullopt;
}

Bounds bounds_of(const Job& job, int default_cap) {
  for (auto [v, name] : {std::pair{job.hom_bound, "--hom-bound"}, std::pair{job.period_max, "--period-max"},
                         std::pair{job.start_max, "--start-max"}, std::pair{job.tdeg_max, "--tdeg-max"}})
    if (v <= 0) throw InputError(std::string(name) + " must be positive");
  if (job.degree_bound < 0) throw InputError("--degree-bound must be positive");
  Bounds b;
  b.degree_cap = job.degree_bound > 0 ? job.degree_bound : default_cap;
  b.hom_bound = job.hom_bound;
  b.period_max = job.period_max;
  b.period_start_max = job.start_max;
  b.t_degree_max = job.tdeg_max;
  b.seed = job.seed;
  return b;
}

Json bounds_json(const Bounds& b) {
  Json j;
  j["degree_bound"] = b.degree_cap;
  j["hom_bound"] = b.hom_bound;
  j["period_max"] = b.period_max;
  j["start_max"] = b.period_start_max;
  j["tdeg_max"] = b.t_degree_max;
  return j;
}

// Every artifact starts with the seed and the bounds.
Json header(const Bounds& b) {
  Json j;
  j["seed"] = b.seed;
  j["bounds"] = bounds_json(b);
  return j;
}

std::string csv_header(const Bounds& b) {
  std::ostringstream s;
  s << "# seed=" << b.seed << " degree_bound=" << b.degree_cap << " hom_bound=" << b.hom_bound << "\n";
  return s.str();
}

GradedModule load_module(const Job& job) {
  if (job.module_path.empty()) throw InputError("--module is required");
  std::filesystem::path p = job.module_path;
  return module_from_json(read_json_file(p), p.parent_path(), modulus_of(job));
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw InputError("format '" + f + "' is not available for this command");
}

Json matrix_json(const Matrix& m) {
  const auto& F = m.field();
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(F.to_signed(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json growth_json(const GrowthReport& g) {
  Json j;
  j["betti"] = g.betti;
  j["finite_pd"] = g.finite_pd;
  j["cx"] = g.cx ? Json(*g.cx) : Json(nullptr);
  j["cx_confident"] = g.cx_confident;
  j["curv"] = g.curv;
  j["curv_confident"] = g.curv_confident;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Returns the artifact text and the exit status.
std::pair<std::string, int> run(const std::string& cmd, Job& job) {
  if (cmd == "resolve" || cmd == "betti") {
    auto b = bounds_of(job, Bounds{}.degree_cap);
    auto fmt = job.format.empty() ? "csv" : job.format;
    check_format(fmt, {"csv", "json"});
    auto res = resolve(load_module(job), b.hom_bound, b);
    if (fmt == "csv") {
      if (cmd == "resolve") return {csv_header(b) + betti_csv(res), 0};
      std::ostringstream s;
      s << csv_header(b) << "i,beta\n";
      auto betti = res.betti();
      for (std::size_t i = 0; i < betti.size(); ++i) s << i << "," << betti[i] << "\n";
      return {s.str(), 0};
    }
    auto j = header(b);
    j["betti"] = res.betti();
    j["degrees"] = res.degrees;
    j["finite"] = res.finite;
    if (cmd == "resolve") {
      Json maps = Json::array();
      for (const auto& d : res.maps) maps.push_back(module_to_json(GradedModule(d))["presentation"]);
      j["differentials"] = maps;
    }
    return {dump(j), 0};
  }
  if (cmd == "syzygy" || cmd == "cosyzygy" || cmd == "dual" || cmd == "transpose" || cmd == "link" ||
      cmd == "approx") {
    auto b = bounds_of(job, Bounds{}.degree_cap);
    check_format(job.format.empty() ? "json" : job.format, {"json"});
    if (job.n < 0) throw InputError("-n must be non-negative");
    auto m = load_module(job);
    GradedModule r;
    if (cmd == "syzygy") r = minimal_presentation(syzygy(m, job.n, b));
    if (cmd == "cosyzygy") r = cosyzygy(m, job.n, b);
    if (cmd == "dual") r = dual(m, b);
    if (cmd == "transpose") r = transpose(m);
    if (cmd == "link") r = link(m, b);
    if (cmd == "approx") r = mcm_approx(m, b);
    auto j = header(b);
    j.update(module_to_json(minimal_presentation(r)));
    return {dump(j), 0};
  }
  if (cmd == "period") {
    auto b = bounds_of(job, Bounds{}.degree_cap);
    check_format(job.format.empty() ? "json" : job.format, {"json"});
    auto p = detect_period(load_module(job), b.period_max, b.period_start_max, b);
    auto j = header(b);
    if (p) {
      j["period"] = p->period;
      j["start"] = p->start;
    } else {
      j["period"] = nullptr;
      j["start"] = nullptr;
    }
    return {dump(j), p ? 0 : 2};
  }
  if (cmd == "growth") {
    auto b = bounds_of(job, Bounds{}.degree_cap);
    check_format(job.format.empty() ? "json" : job.format, {"json"});
    auto j = header(b);
    j.update(growth_json(growth_report(load_module(job), b, false)));
    return {dump(j), 0};
  }
  if (cmd == "mf-validate") {
    auto b = bounds_of(job, Bounds{}.degree_cap);
    check_format(job.format.empty() ? "json" : job.format, {"json"});
    if (job.mf_path.empty()) throw InputError("--mf is required");
    std::filesystem::path p = job.mf_path;
    auto mf = mf_from_json(read_json_file(p), p.parent_path(), modulus_of(job));
    bool ok = validate(mf);
    auto j = header(b);
    j["valid"] = ok;
    j["size"] = mf.size();
    if (ok) {
      j["reduced"] = mf.reduced();
      j["module"] = module_to_json(coker_module(mf_reduce(mf)));
    }
    return {dump(j), ok ? 0 : 1};
  }
  if (cmd == "mf-extract") {
    auto b = bounds_of(job, Bounds{}.degree_cap);
    check_format(job.format.empty() ? "json" : job.format, {"json"});
    auto j = header(b);
    j.update(mf_to_json(from_resolution_tail(load_module(job), b)));
    return {dump(j), 0};
  }
  if (cmd == "quiver" || cmd == "classify" || cmd == "verify") {
    if (job.catalog.empty()) throw InputError("--catalog is required");
    auto cat = catalog_from_ref(job.catalog, modulus_of(job));
    // Period and growth checks resolve several steps, each raising degrees by deg f.
    int cap = cmd == "quiver" ? cat.recommended_degree_cap
                              : std::max(cat.recommended_degree_cap, 12 * cat.hs.degree);
    auto b = bounds_of(job, cap);
    if (cmd == "quiver") {
      auto fmt = job.format.empty() ? "dot" : job.format;
      check_format(fmt, {"dot", "json"});
      auto q = build_quiver(cat.hs.quotient, catalog_modules(cat), b);
      if (fmt == "dot") {
        auto dot = to_dot(q);
        auto brace = dot.find('{');
        dot.insert(brace + 1, "\n  // seed=" + std::to_string(b.seed) + " catalog=" + job.catalog +
                                  " p=" + std::to_string(cat.hs.poly->field().characteristic()));
        return {dot, 0};
      }
      auto j = header(b);
      j["catalog"] = job.catalog;
      j["ring"] = ring_to_json(*q.ring);
      Json vs = Json::array();
      for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        const auto& x = q.vertices[v];
        Json o;
        o["name"] = x.name;
        o["free"] = x.free;
        o["mu"] = x.mu;
        o["e"] = x.multiplicity;
        o["tau"] = q.tau[v] ? Json(q.vertices[*q.tau[v]].name) : Json(nullptr);
        vs.push_back(o);
      }
      j["vertices"] = vs;
      Json as = Json::array();
      for (const auto& a : q.arrows)
        as.push_back({{"source", q.vertices[a.source].name}, {"target", q.vertices[a.target].name},
                      {"irr", a.irr}});
      j["arrows"] = as;
      return {dump(j), 0};
    }
    check_format(job.format.empty() ? "json" : job.format, {"json"});
    auto j = header(b);
    j["catalog"] = job.catalog;
    if (cmd == "classify") {
      if (job.property.empty()) throw InputError("--property is required");
      auto prop = parse_property(job.property);
      auto q = build_quiver(cat.hs.quotient, catalog_modules(cat), b);
      j["property"] = prop.name();
      Json cs = Json::array();
      int status = 0;
      for (const auto& r : component_classify(q, prop, b)) {
        Json c;
        Json names = Json::array(), flags = Json::array();
        for (std::size_t i = 0; i < r.vertices.size(); ++i) {
          names.push_back(q.vertices[r.vertices[i]].name);
          flags.push_back(r.flags[i] ? Json(*r.flags[i]) : Json(nullptr));
        }
        c["vertices"] = names;
        c["flags"] = flags;
        c["verdict"] = r.verdict;
        if (r.verdict == "partial") status = 2;
        cs.push_back(c);
      }
      j["components"] = cs;
      return {dump(j), status};
    }
    auto results = run_suite(job.suite, cat, b);
    j["suite"] = job.suite;
    Json checks = Json::array();
    for (const auto& r : results)
      checks.push_back({{"check", r.name}, {"status", r.status}, {"detail", r.detail}});
    j["checks"] = checks;
    auto overall = overall_status(results);
    j["status"] = overall;
    return {dump(j), overall == "pass" ? 0 : overall == "fail" ? 1 : 2};
  }
  if (cmd == "ci-operators" || cmd == "support") {
    auto b = bounds_of(job, Bounds{}.degree_cap);
    check_format(job.format.empty() ? "json" : job.format, {"json"});
    auto m = load_module(job);
    auto ci = ci_presentation(m.ring());
    auto e = eisenbud_operators(ci, m, b.hom_bound, b);
    auto j = header(b);
    if (cmd == "ci-operators") {
      j["codim"] = e.codim;
      j["dims"] = e.dims;
      j["commute"] = operators_commute(e);
      Json ops = Json::array();
      for (std::size_t t = 0; t < e.ops.size(); ++t)
        for (std::size_t n = 0; n < e.ops[t].size(); ++n)
          ops.push_back({{"t", t + 1}, {"from", n}, {"matrix", matrix_json(e.ops[t][n])}});
      j["operators"] = ops;
      return {dump(j), 0};
    }
    auto r = support_annihilator_window(e, b.t_degree_max);
    j["module"] = job.module_path;
    j["cx"] = r.cx_from_variety ? Json(*r.cx_from_variety) : Json(nullptr);
    j["cx_growth"] = r.cx_from_growth ? Json(*r.cx_from_growth) : Json(nullptr);
    j["ann_window"] = r.ann_strings(m.ring()->field());
    j["dim"] = r.dim ? Json(*r.dim) : Json(nullptr);
    j["is_point"] = r.is_point;
    j["confidence"] = r.stable ? "stable" : "low";
    return {dump(j), 0};
  }
  throw UsageError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with maximal Cohen-Macaulay modules over graded Gorenstein rings"};
  app.require_subcommand(1);
  Job job;
  auto common = [&](CLI::App* c) {
    c->add_option("--modulus", job.modulus, "prime characteristic, overriding the input");
    c->add_option("--degree-bound", job.degree_bound, "largest internal degree visited");
    c->add_option("-H,--hom-bound", job.hom_bound, "homological bound");
    c->add_option("--period-max", job.period_max, "largest period tried");
    c->add_option("--start-max", job.start_max, "latest period start tried");
    c->add_option("--tdeg-max", job.tdeg_max, "largest operator degree in support windows");
    c->add_option("--seed", job.seed, "seed for all randomized steps");
    c->add_option("--out", job.out, "output file (default stdout)");
    c->add_option("--format", job.format, "csv, dot or json")->check(CLI::IsMember({"csv", "dot", "json"}));
  };
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"resolve", "minimal free resolution as a Betti table"},
      {"betti", "Betti numbers"},
      {"syzygy", "n-th syzygy module"},
      {"cosyzygy", "n-th cosyzygy of an MCM module"},
      {"dual", "Hom(M, A)"},
      {"transpose", "Auslander transpose"},
      {"link", "horizontal linkage"},
      {"approx", "MCM approximation"},
      {"period", "eventual period of the resolution"},
      {"growth", "complexity and curvature estimates"},
      {"mf-validate", "check a matrix factorization"},
      {"mf-extract", "matrix factorization from a resolution tail"},
      {"quiver", "AR quiver of a catalog"},
      {"classify", "component classification of a vertex property"},
      {"ci-operators", "Eisenbud operators over a complete intersection"},
      {"support", "support variety window"},
      {"verify", "run a verification suite on a catalog"}};
  for (const auto& [name, help] : commands) {
    auto* c = app.add_subcommand(name, help);
    common(c);
    if (name == "mf-validate") {
      c->add_option("--mf", job.mf_path, "matrix factorization JSON")->required();
    } else if (name == "quiver" || name == "classify" || name == "verify") {
      c->add_option("--catalog", job.catalog, "catalog reference such as ade:A3:dim1")->required();
      if (name == "classify") c->add_option("--property", job.property, "periodic, ulrich, cx=<i>, ...")->required();
      if (name == "verify") c->add_option("--suite", job.suite, "verification suite");
    } else {
      c->add_option("--module", job.module_path, "module JSON")->required();
      if (name == "syzygy" || name == "cosyzygy") c->add_option("-n", job.n, "index");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    auto [text, status] = run(cmd, job);
    if (job.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(job.out, std::ios::binary);
      if (!out) throw InputError("cannot write " + job.out);
      out << text;
    }
    return status;
  } catch (const Inconclusive& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
