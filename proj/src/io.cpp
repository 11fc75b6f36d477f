#include "mcm/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mcm {

namespace {

template <class T>
T field_of(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(what + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(what + ": bad \"" + key + "\": " + e.what());
  }
}

using Table = std::vector<std::vector<std::string>>;

Table string_table(const Json& j, const char* key, const std::string& what) {
  Table t;
  for (const auto& row : field_of<Json>(j, key, what)) {
    if (!row.is_array()) throw InputError(what + ": \"" + key + "\" must be a list of rows");
    std::vector<std::string> r;
    for (const auto& e : row) {
      if (e.is_string())
        r.push_back(e.get<std::string>());
      else if (e.is_number_integer())
        r.push_back(std::to_string(e.get<std::int64_t>()));
      else
        throw InputError(what + ": entries of \"" + key + "\" must be strings or integers");
    }
    t.push_back(std::move(r));
  }
  return t;
}

Json strings_of(const FreeMap& phi) {
  const auto& R = *phi.ring;
  Json rows = Json::array();
  for (std::size_t i = 0; i < phi.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < phi.cols(); ++j) r.push_back(R.to_string(phi.at(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Recover line and column from the byte offset.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string why = e.what();
    auto cut = why.find("syntax error");
    if (cut != std::string::npos) why = why.substr(cut);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + why);
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

std::string polynomial_string(const WeightedPolyRing& ring, const Polynomial& p) {
  std::string s;
  // Highest degree first, then descending lex, as the ring lists monomials.
  std::vector<std::pair<Exponent, std::int64_t>> terms(p.begin(), p.end());
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    int da = ring.degree_of(a.first), db = ring.degree_of(b.first);
    return da != db ? da > db : a.first > b.first;
  });
  for (const auto& [e, c] : terms) {
    if (c == 0) continue;
    std::string mon = ring.monomial_string(e);
    std::int64_t a = c < 0 ? -c : c;
    std::string term = mon == "1" ? std::to_string(a) : a == 1 ? mon : std::to_string(a) + "*" + mon;
    if (s.empty())
      s = (c < 0 ? "-" : "") + term;
    else
      s += (c < 0 ? " - " : " + ") + term;
  }
  return s.empty() ? "0" : s;
}

RingPtr ring_from_json(const Json& j, std::optional<std::uint32_t> modulus) {
  const std::string what = "ring";
  auto p = modulus ? *modulus : field_of<std::uint32_t>(j, "char", what);
  auto vars = field_of<std::vector<std::string>>(j, "vars", what);
  std::vector<int> weights(vars.size(), 1);
  if (j.contains("weights")) weights = field_of<std::vector<int>>(j, "weights", what);
  if (weights.size() != vars.size()) throw InputError("ring: \"weights\" and \"vars\" differ in length");
  std::vector<std::string> rels;
  if (j.contains("relations")) rels = field_of<std::vector<std::string>>(j, "relations", what);
  return QuotientRing::make(PrimeField(p), std::move(vars), std::move(weights), rels);
}

Json ring_to_json(const QuotientRing& ring) {
  Json j;
  j["char"] = ring.field().characteristic();
  j["vars"] = ring.ambient().variables();
  j["weights"] = ring.weights();
  Json rels = Json::array();
  for (const auto& r : ring.relations()) rels.push_back(polynomial_string(ring.ambient(), r));
  j["relations"] = rels;
  return j;
}

RingPtr ring_from_ref(const Json& ref, const std::filesystem::path& base, std::optional<std::uint32_t> modulus) {
  if (ref.is_string()) {
    std::filesystem::path p = ref.get<std::string>();
    if (p.is_relative()) p = base / p;
    return ring_from_json(read_json_file(p), modulus);
  }
  return ring_from_json(ref, modulus);
}

GradedModule module_over(const RingPtr& ring, const Json& j) {
  const std::string what = "module";
  auto gens = field_of<std::vector<int>>(j, "gen_degs", what);
  auto rels = field_of<std::vector<int>>(j, "rel_degs", what);
  Table t = j.contains("presentation") ? string_table(j, "presentation", what) : Table{};
  if (t.size() != gens.size() && !(rels.empty() && t.empty()))
    throw InputError("module: presentation has " + std::to_string(t.size()) + " rows for " +
                     std::to_string(gens.size()) + " generators");
  FreeMap pres(ring, gens, rels);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].size() != rels.size())
      throw InputError("module: row " + std::to_string(i) + " has " + std::to_string(t[i].size()) +
                       " entries for " + std::to_string(rels.size()) + " relations");
    for (std::size_t k = 0; k < rels.size(); ++k) {
      auto e = ring->element(t[i][k]);
      pres.at(i, k) = e.is_zero() ? ring->zero(pres.entry_degree(i, k)) : e;
    }
  }
  pres.check_degrees();
  return GradedModule(std::move(pres));
}

GradedModule module_from_json(const Json& j, const std::filesystem::path& base, std::optional<std::uint32_t> modulus) {
  return module_over(ring_from_ref(field_of<Json>(j, "ring", "module"), base, modulus), j);
}

Json module_to_json(const GradedModule& m) {
  Json j;
  j["ring"] = ring_to_json(*m.ring());
  j["gen_degs"] = m.gen_degrees();
  j["rel_degs"] = m.rel_degrees();
  j["presentation"] = strings_of(m.presentation());
  return j;
}

MatrixFactorization mf_from_json(const Json& j, const std::filesystem::path& base,
                                 std::optional<std::uint32_t> modulus) {
  const std::string what = "matrix factorization";
  auto ring = ring_from_ref(field_of<Json>(j, "ring", what), base, modulus);
  std::string f;
  if (j.contains("f")) {
    f = field_of<std::string>(j, "f", what);
  } else if (ring->relations().size() == 1) {
    f = polynomial_string(ring->ambient(), ring->relations()[0]);
  } else {
    throw InputError(what + ": missing \"f\"");
  }
  const auto& amb = ring->ambient();
  if (!ring->relations().empty() &&
      (ring->relations().size() != 1 || ring->relations()[0] != amb.parse(f)))
    throw InputError(what + ": ring relations must be empty or equal to f");
  auto hs = make_hypersurface(ring->field(), amb.variables(), amb.weights(), f);
  return make_mf(hs, string_table(j, "phi", what), string_table(j, "psi", what));
}

Json mf_to_json(const MatrixFactorization& mf) {
  Json j;
  auto ring = ring_to_json(*mf.hs.poly);
  j["ring"] = ring;
  j["f"] = mf.hs.poly->to_string(mf.hs.f);
  j["phi"] = strings_of(mf.phi);
  j["psi"] = strings_of(mf.psi);
  return j;
}

Catalog catalog_from_ref(const std::string& ref, std::optional<std::uint32_t> modulus) {
  std::vector<std::string> parts;
  std::stringstream ss(ref);
  for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
  auto bad = [&] { return InputError("catalog reference '" + ref + "' is not of the form ade:A3:dim1[:p7]"); };
  if (parts.size() < 3 || parts.size() > 4 || parts[0] != "ade" || parts[1].size() < 2 ||
      parts[2].rfind("dim", 0) != 0)
    throw bad();
  std::string family = parts[1].substr(0, 1);
  int n = 0, dim = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(parts[1].substr(1), &used);
    if (used + 1 != parts[1].size()) throw bad();
    dim = std::stoi(parts[2].substr(3), &used);
    if (used + 3 != parts[2].size()) throw bad();
    if (parts.size() == 4) {
      if (parts[3].size() < 2 || parts[3][0] != 'p') throw bad();
      modulus = static_cast<std::uint32_t>(std::stoul(parts[3].substr(1), &used));
      if (used + 1 != parts[3].size()) throw bad();
    }
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (modulus) return ade_catalog(family, n, dim, *modulus);
  try {
    return ade_catalog(family, n, dim, 7);
  } catch (const InputError&) {
    return ade_catalog(family, n, dim, 5);
  }
}

}  // namespace mcm
