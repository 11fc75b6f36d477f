#include "mcm/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace mcm {

namespace {

constexpr int kKeyBits = 10;
constexpr std::size_t kMaxVars = 6;

void enumerate(const std::vector<int>& w, std::size_t v, int rest, Exponent& cur,
               std::vector<Exponent>& out) {
  if (v + 1 == w.size()) {
    if (rest % w[v] == 0) {
      cur[v] = rest / w[v];
      out.push_back(cur);
      cur[v] = 0;
    }
    return;
  }
  for (int e = rest / w[v]; e >= 0; --e) {
    cur[v] = e;
    enumerate(w, v + 1, rest - e * w[v], cur, out);
  }
  cur[v] = 0;
}

}  // namespace

WeightedPolyRing::WeightedPolyRing(PrimeField field, std::vector<std::string> vars,
                                   std::vector<int> weights)
    : field_(field), vars_(std::move(vars)), weights_(std::move(weights)) {
  if (vars_.empty()) throw InputError("ring needs at least one variable");
  if (vars_.size() > kMaxVars) throw InputError("at most 6 variables are supported");
  if (weights_.size() != vars_.size()) throw InputError("one weight per variable required");
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
      throw InputError("variable names must start with a letter: '" + v + "'");
    for (char c : v)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw InputError("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw InputError("duplicate variable name '" + v + "'");
  }
  for (int w : weights_)
    if (w < 1) throw InputError("weights must be positive");
  max_weight_ = *std::max_element(weights_.begin(), weights_.end());
}

std::uint64_t WeightedPolyRing::key(const Exponent& e) const {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 || e[i] >= (1 << kKeyBits)) throw InputError("exponent out of supported range");
    k |= static_cast<std::uint64_t>(e[i]) << (kKeyBits * i);
  }
  return k;
}

int WeightedPolyRing::degree_of(const Exponent& e) const {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * weights_[i];
  return d;
}

const MonomialPiece& WeightedPolyRing::monomials(int d) const {
  std::lock_guard lock(mutex_);
  auto it = cache_.find(d);
  if (it != cache_.end()) return *it->second;
  auto piece = std::make_unique<MonomialPiece>();
  piece->degree = d;
  if (d >= 0) {
    Exponent cur(vars_.size(), 0);
    enumerate(weights_, 0, d, cur, piece->exps);
  }
  for (std::uint32_t i = 0; i < piece->exps.size(); ++i) piece->index.emplace(key(piece->exps[i]), i);
  auto& ref = *piece;
  cache_.emplace(d, std::move(piece));
  return ref;
}

std::uint32_t WeightedPolyRing::index_of(const Exponent& e) const {
  const auto& p = monomials(degree_of(e));
  auto it = p.index.find(key(e));
  if (it == p.index.end()) throw UsageError("monomial not found in its degree piece");
  return it->second;
}

std::string WeightedPolyRing::monomial_string(const Exponent& e) const {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars_[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

Polynomial WeightedPolyRing::parse(const std::string& text) const {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty polynomial");
  Polynomial poly;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw InputError("cannot parse polynomial '" + text + "': " + why);
  };
  auto read_int = [&](std::int64_t& out) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) return false;
    if (pos - start > 17) fail("integer too large");
    out = std::stoll(s.substr(start, pos - start));
    return true;
  };
  while (pos < s.size()) {
    std::int64_t sign = 1;
    bool had_sign = false;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') sign = -sign;
      ++pos;
      had_sign = true;
    }
    if (!had_sign && !poly.empty() && pos != 0) fail("missing operator");
    std::int64_t coeff = 1;
    bool have_factor = false;
    std::int64_t c;
    if (read_int(c)) {
      coeff = c;
      have_factor = true;
    }
    Exponent e(vars_.size(), 0);
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
      if (s[pos] == '*') {
        if (!have_factor) fail("dangling '*'");
        ++pos;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
          read_int(c);
          coeff *= c;
          continue;
        }
      }
      if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos])))
        fail("expected a variable at position " + std::to_string(pos));
      std::size_t best = vars_.size();
      std::size_t best_len = 0;
      for (std::size_t v = 0; v < vars_.size(); ++v)
        if (s.compare(pos, vars_[v].size(), vars_[v]) == 0 && vars_[v].size() > best_len) {
          best = v;
          best_len = vars_[v].size();
        }
      if (best == vars_.size()) fail("unknown variable at position " + std::to_string(pos));
      pos += best_len;
      std::int64_t power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        if (!read_int(power)) fail("expected exponent after '^'");
      }
      e[best] += static_cast<int>(power);
      have_factor = true;
    }
    if (!have_factor) fail("empty term");
    poly[e] += sign * coeff;
  }
  for (auto it = poly.begin(); it != poly.end();)
    it = it->second == 0 ? poly.erase(it) : std::next(it);
  return poly;
}

QuotientRing::QuotientRing(std::shared_ptr<const WeightedPolyRing> ambient,
                           std::vector<Polynomial> relations)
    : ambient_(std::move(ambient)), relations_(std::move(relations)) {
  const auto& f = ambient_->field();
  for (const auto& rel : relations_) {
    int deg = -1;
    Vec v;
    for (const auto& [e, c] : rel) {
      if (f.from_int(c) == 0) continue;
      int de = ambient_->degree_of(e);
      if (deg == -1) {
        deg = de;
        v.assign(ambient_->monomial_count(deg), 0);
      } else if (de != deg) {
        throw InputError("relation is not weighted-homogeneous");
      }
      v[ambient_->index_of(e)] = f.add(v[ambient_->index_of(e)], f.from_int(c));
    }
    if (deg == -1) continue;
    if (deg == 0) throw InputError("relation is a unit; the quotient ring is zero");
    relation_degrees_.push_back(deg);
    relation_vectors_.emplace_back(deg, std::move(v));
  }
}

std::shared_ptr<QuotientRing> QuotientRing::make(PrimeField field, std::vector<std::string> vars,
                                                 std::vector<int> weights,
                                                 const std::vector<std::string>& relations) {
  auto s = std::make_shared<const WeightedPolyRing>(field, std::move(vars), std::move(weights));
  std::vector<Polynomial> polys;
  for (const auto& r : relations) polys.push_back(s->parse(r));
  return std::make_shared<QuotientRing>(s, std::move(polys));
}

int QuotientRing::max_relation_degree() const noexcept {
  int m = 0;
  for (int d : relation_degrees_) m = std::max(m, d);
  return m;
}

std::unique_ptr<RingPiece> QuotientRing::compute_piece(int d) const {
  const auto& f = field();
  const auto& mons = ambient_->monomials(d);
  std::size_t n = mons.exps.size();
  EchelonBasis<PrimeField> ideal(f, n);
  for (const auto& [rd, rv] : relation_vectors_) {
    if (rd > d) continue;
    const auto& rmons = ambient_->monomials(rd);
    const auto& mult = ambient_->monomials(d - rd);
    for (const auto& m : mult.exps) {
      Vec v(n, 0);
      for (std::size_t i = 0; i < rv.size(); ++i) {
        if (rv[i] == 0) continue;
        Exponent e = rmons.exps[i];
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += m[k];
        v[mons.index.at(ambient_->key(e))] = rv[i];
      }
      ideal.insert(std::move(v));
      if (ideal.dim() == n) break;
    }
  }
  auto piece = std::make_unique<RingPiece>();
  piece->degree = d;
  piece->ambient_to_std.assign(n, -1);
  for (std::uint32_t i = 0; i < n; ++i)
    if (!ideal.is_pivot(i)) {
      piece->ambient_to_std[i] = static_cast<std::int32_t>(piece->standard.size());
      piece->standard.push_back(i);
    }
  piece->normal_form.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (piece->ambient_to_std[i] >= 0) {
      piece->normal_form[i] = {{static_cast<std::uint32_t>(piece->ambient_to_std[i]), 1}};
      continue;
    }
    Vec v(n, 0);
    v[i] = 1;
    ideal.reduce(v);
    for (std::uint32_t j = 0; j < n; ++j)
      if (v[j] != 0) piece->normal_form[i].push_back({static_cast<std::uint32_t>(piece->ambient_to_std[j]), v[j]});
  }
  return piece;
}

const RingPiece& QuotientRing::piece(int d) const {
  if (d < 0) throw UsageError("negative degree piece requested");
  {
    std::lock_guard lock(mutex_);
    auto it = pieces_.find(d);
    if (it != pieces_.end()) return *it->second;
  }
  auto p = compute_piece(d);
  std::lock_guard lock(mutex_);
  auto [it, inserted] = pieces_.emplace(d, std::move(p));
  return *it->second;
}

std::vector<Exponent> QuotientRing::degree_basis(int d) const {
  if (d < 0) return {};
  const auto& p = piece(d);
  const auto& mons = ambient_->monomials(d);
  std::vector<Exponent> out;
  for (auto idx : p.standard) out.push_back(mons.exps[idx]);
  return out;
}

Vec QuotientRing::reduce_ambient(int d, std::span<const PrimeField::Element> a) const {
  if (d < 0) return {};
  const auto& p = piece(d);
  if (a.size() != p.normal_form.size()) throw UsageError("ambient vector has wrong length");
  const auto& f = field();
  Vec out(p.dim(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (const auto& [j, c] : p.normal_form[i]) out[j] = f.add(out[j], f.mul(a[i], c));
  }
  return out;
}

Vec QuotientRing::lift_to_ambient(int d, std::span<const PrimeField::Element> coords) const {
  if (d < 0) return {};
  const auto& p = piece(d);
  Vec out(p.normal_form.size(), 0);
  for (std::size_t i = 0; i < coords.size(); ++i) out[p.standard[i]] = coords[i];
  return out;
}

RingElement QuotientRing::zero(int d) const {
  return RingElement{this, d, Vec(d < 0 ? 0 : dim(d), 0)};
}

RingElement QuotientRing::one() const { return scalar(1); }

RingElement QuotientRing::scalar(PrimeField::Element c) const {
  RingElement e = zero(0);
  e.coords[0] = c;
  return e;
}

RingElement QuotientRing::variable(std::size_t i) const {
  if (i >= num_vars()) throw UsageError("variable index out of range");
  Exponent e(num_vars(), 0);
  e[i] = 1;
  Polynomial p{{e, 1}};
  return element(p);
}

RingElement QuotientRing::element(const Polynomial& poly) const {
  const auto& f = field();
  int deg = -1;
  Vec amb;
  for (const auto& [e, c] : poly) {
    if (e.size() != num_vars()) throw UsageError("exponent vector has wrong length");
    if (f.from_int(c) == 0) continue;
    int de = ambient_->degree_of(e);
    if (deg == -1) {
      deg = de;
      amb.assign(ambient_->monomial_count(deg), 0);
    } else if (de != deg) {
      throw InputError("polynomial is not weighted-homogeneous");
    }
    auto idx = ambient_->index_of(e);
    amb[idx] = f.add(amb[idx], f.from_int(c));
  }
  if (deg == -1) return RingElement{this, 0, {}};
  return from_ambient(deg, amb);
}

RingElement QuotientRing::element(const std::string& text) const {
  return element(ambient_->parse(text));
}

RingElement QuotientRing::from_ambient(int d, std::span<const PrimeField::Element> a) const {
  return RingElement{this, d, reduce_ambient(d, a)};
}

void QuotientRing::check_owner(const RingElement& a) const {
  if (a.ring != nullptr && a.ring != this && !a.coords.empty() && !a.is_zero())
    throw UsageError("ring element belongs to a different ring");
}

const std::vector<const SparseVec*>& QuotientRing::product_table(int d1, int d2) const {
  {
    std::lock_guard lock(mutex_);
    auto it = tables_.find({d1, d2});
    if (it != tables_.end()) return *it->second;
  }
  const auto& p1 = piece(d1);
  const auto& p2 = piece(d2);
  const auto& p12 = piece(d1 + d2);
  const auto& m1 = ambient_->monomials(d1);
  const auto& m2 = ambient_->monomials(d2);
  const auto& m12 = ambient_->monomials(d1 + d2);
  auto table = std::make_unique<std::vector<const SparseVec*>>(p1.dim() * p2.dim());
  Exponent e(num_vars());
  for (std::size_t i = 0; i < p1.dim(); ++i)
    for (std::size_t j = 0; j < p2.dim(); ++j) {
      const auto& a = m1.exps[p1.standard[i]];
      const auto& b = m2.exps[p2.standard[j]];
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = a[k] + b[k];
      (*table)[i * p2.dim() + j] = &p12.normal_form[m12.index.at(ambient_->key(e))];
    }
  std::lock_guard lock(mutex_);
  auto [it, inserted] = tables_.emplace(std::make_pair(d1, d2), std::move(table));
  return *it->second;
}

void QuotientRing::multiply_accumulate(const RingElement& a, int dv,
                                       std::span<const PrimeField::Element> v,
                                       std::span<PrimeField::Element> out) const {
  if (a.degree < 0 || dv < 0 || a.coords.empty() || v.empty()) return;
  check_owner(a);
  const auto& f = field();
  const auto& table = product_table(a.degree, dv);
  std::size_t n2 = v.size();
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (a.coords[i] == 0) continue;
    for (std::size_t j = 0; j < n2; ++j) {
      if (v[j] == 0) continue;
      auto c = f.mul(a.coords[i], v[j]);
      for (const auto& [k, x] : *table[i * n2 + j]) out[k] = f.add(out[k], f.mul(c, x));
    }
  }
}

RingElement QuotientRing::multiply(const RingElement& a, const RingElement& b) const {
  check_owner(a);
  check_owner(b);
  int d = a.degree + b.degree;
  if (a.degree < 0 || b.degree < 0) return RingElement{this, d, {}};
  RingElement out = zero(d);
  if (a.coords.empty() || b.coords.empty()) return out;
  multiply_accumulate(a, b.degree, b.coords, out.coords);
  return out;
}

RingElement QuotientRing::add(const RingElement& a, const RingElement& b) const {
  check_owner(a);
  check_owner(b);
  if (a.coords.empty()) return b;
  if (b.coords.empty()) return a;
  if (a.degree != b.degree) throw UsageError("adding ring elements of different degrees");
  RingElement out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] = field().add(out.coords[i], b.coords[i]);
  out.ring = this;
  return out;
}

RingElement QuotientRing::neg(const RingElement& a) const {
  RingElement out = a;
  for (auto& c : out.coords) c = field().neg(c);
  return out;
}

RingElement QuotientRing::sub(const RingElement& a, const RingElement& b) const { return add(a, neg(b)); }

RingElement QuotientRing::scale(const RingElement& a, PrimeField::Element c) const {
  RingElement out = a;
  for (auto& x : out.coords) x = field().mul(x, c);
  return out;
}

PrimeField::Element QuotientRing::constant_term(const RingElement& a) const {
  if (a.degree != 0 || a.coords.empty()) return 0;
  return a.coords[0];
}

std::vector<std::size_t> QuotientRing::hilbert_window(int n) const {
  std::vector<std::size_t> out;
  for (int d = 0; d <= n; ++d) out.push_back(dim(d));
  return out;
}

int QuotientRing::top_degree(int cap) const {
  int w = max_weight();
  int zeros = 0;
  int last = 0;
  for (int d = 0; d <= cap + w; ++d) {
    if (dim(d) == 0) {
      if (++zeros == w) return last;
    } else {
      zeros = 0;
      last = d;
    }
  }
  return -1;
}

const EchelonBasis<PrimeField>& QuotientRing::power_of_maximal_ideal(int s, int e) const {
  {
    std::lock_guard lock(mutex_);
    auto it = powers_.find({s, e});
    if (it != powers_.end()) return *it->second;
  }
  const auto& mons = ambient_->monomials(e);
  auto basis = std::make_unique<EchelonBasis<PrimeField>>(field(), dim(e));
  for (std::uint32_t i = 0; i < mons.exps.size(); ++i) {
    int total = std::accumulate(mons.exps[i].begin(), mons.exps[i].end(), 0);
    if (total < s) continue;
    Vec amb(mons.exps.size(), 0);
    amb[i] = 1;
    basis->insert(reduce_ambient(e, amb));
    if (basis->dim() == basis->ambient_dim()) break;
  }
  std::lock_guard lock(mutex_);
  auto [it, inserted] = powers_.emplace(std::make_pair(s, e), std::move(basis));
  return *it->second;
}

std::string QuotientRing::to_string(const RingElement& a) const {
  if (a.degree < 0 || a.is_zero()) return "0";
  const auto& f = field();
  const auto& p = piece(a.degree);
  const auto& mons = ambient_->monomials(a.degree);
  std::string s;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (a.coords[i] == 0) continue;
    auto c = f.to_signed(a.coords[i]);
    std::string mon = ambient_->monomial_string(mons.exps[p.standard[i]]);
    std::string term;
    if (mon == "1") {
      term = std::to_string(c < 0 ? -c : c);
    } else if (c == 1 || c == -1) {
      term = mon;
    } else {
      term = std::to_string(c < 0 ? -c : c) + "*" + mon;
    }
    if (s.empty())
      s = (c < 0 ? "-" : "") + term;
    else
      s += (c < 0 ? " - " : " + ") + term;
  }
  return s;
}

bool hilbert_matches_complete_intersection(const QuotientRing& ring, int bound) {
  // Power series prod(1 - t^{deg f}) / prod(1 - t^{w}) truncated at bound.
  std::vector<std::int64_t> series(bound + 1, 0);
  series[0] = 1;
  for (int w : ring.weights())
    for (int d = w; d <= bound; ++d) series[d] += series[d - w];
  for (int r : ring.relation_degrees())
    for (int d = bound; d >= r; --d) series[d] -= series[d - r];
  for (int d = 0; d <= bound; ++d)
    if (series[d] != static_cast<std::int64_t>(ring.dim(d))) return false;
  return true;
}

}  // namespace mcm
