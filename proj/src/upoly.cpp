#include "mcm/upoly.hpp"

#include <algorithm>

namespace mcm::upoly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

Poly add(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = f.add(c[i], b[i]);
  trim(c);
  return c;
}

Poly sub(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = f.sub(c[i], b[i]);
  trim(c);
  return c;
}

Poly mul(const PrimeField& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
  }
  trim(c);
  return c;
}

std::pair<Poly, Poly> divmod(const PrimeField& f, const Poly& a, const Poly& b) {
  int db = degree(b);
  if (db < 0) throw UsageError("polynomial division by zero");
  Poly r = a;
  trim(r);
  int dr = degree(r);
  if (dr < db) return {{}, r};
  Poly q(dr - db + 1, 0);
  auto inv = f.inv(b[db]);
  for (int k = dr; k >= db; --k) {
    auto c = f.mul(r[k], inv);
    if (c == 0) continue;
    q[k - db] = c;
    for (int j = 0; j <= db; ++j) r[k - db + j] = f.sub(r[k - db + j], f.mul(c, b[j]));
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly mod(const PrimeField& f, const Poly& a, const Poly& m) { return divmod(f, a, m).second; }

Poly monic(const PrimeField& f, Poly a) {
  trim(a);
  if (a.empty()) return a;
  auto inv = f.inv(a.back());
  for (auto& c : a) c = f.mul(c, inv);
  return a;
}

Poly gcd(const PrimeField& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

Poly inverse_mod(const PrimeField& f, const Poly& a, const Poly& m) {
  Poly r0 = m, r1 = mod(f, a, m), s0 = {}, s1 = {1};
  while (!r1.empty()) {
    auto [q, r] = divmod(f, r0, r1);
    Poly s = sub(f, s0, mul(f, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (degree(r0) != 0) throw UsageError("polynomial is not invertible modulo m");
  auto inv = f.inv(r0[0]);
  for (auto& c : s0) c = f.mul(c, inv);
  return mod(f, s0, m);
}

Poly powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& m) {
  Poly r = {1};
  r = mod(f, r, m);
  base = mod(f, base, m);
  while (e) {
    if (e & 1) r = mod(f, mul(f, r, base), m);
    base = mod(f, mul(f, base, base), m);
    e >>= 1;
  }
  return r;
}

Poly frobenius_power(const PrimeField& f, int j, const Poly& m) {
  Poly x = {0, 1};
  x = mod(f, x, m);
  for (int i = 0; i < j; ++i) x = powmod(f, x, f.characteristic(), m);
  return x;
}

Poly minimal_polynomial(const Matrix& a) {
  const auto& f = a.field();
  std::size_t n = a.rows();
  if (n != a.cols()) throw UsageError("minimal polynomial of a non-square matrix");
  if (n == 0) return {1};
  EchelonBasis<PrimeField> span(f, n * n);
  Matrix power = Matrix::identity(f, n);
  // Track each echelon row as a combination of powers.
  std::vector<Poly> row_poly;
  for (std::size_t k = 0; k <= n; ++k) {
    Vec v(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v[i * n + j] = power(i, j);
    Poly combo(k + 1, 0);
    combo[k] = 1;
    // Reduce against existing rows while recording the combination.
    for (std::size_t r = 0; r < span.dim(); ++r) {
      auto c = v[span.pivots()[r]];
      if (c == 0) continue;
      const auto& row = span.rows()[r];
      for (std::size_t t = 0; t < v.size(); ++t)
        if (row[t] != 0) v[t] = f.sub(v[t], f.mul(c, row[t]));
      Poly scaled = row_poly[r];
      for (auto& x : scaled) x = f.mul(x, c);
      combo = sub(f, combo, scaled);
    }
    if (is_zero_vec(v)) return monic(f, combo);
    std::size_t p = 0;
    while (v[p] == 0) ++p;
    auto inv = f.inv(v[p]);
    for (auto& x : combo) x = f.mul(x, inv);
    span.insert(v);
    row_poly.push_back(combo);
    power = power * a;
  }
  throw UsageError("minimal polynomial search exceeded the matrix size");
}

Matrix evaluate(const Poly& p, const Matrix& a) {
  const auto& f = a.field();
  Matrix acc(f, a.rows(), a.cols());
  for (int k = degree(p); k >= 0; --k) {
    acc = acc * a;
    for (std::size_t i = 0; i < a.rows(); ++i) acc(i, i) = f.add(acc(i, i), p[k]);
  }
  return acc;
}

namespace {

Poly random_poly(const PrimeField& f, int deg_below, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, f.characteristic() - 1);
  Poly r(deg_below);
  for (auto& c : r) c = dist(rng);
  trim(r);
  return r;
}

// Splits g, a product of distinct irreducibles of degree j, until one
// irreducible factor remains.
Poly equal_degree_factor(const PrimeField& f, Poly g, int j, std::mt19937_64& rng) {
  const std::uint64_t p = f.characteristic();
  while (degree(g) > j) {
    Poly r = random_poly(f, degree(g), rng);
    if (degree(r) < 1) continue;
    Poly t;
    if (p == 2) {
      t = r;
      Poly sq = r;
      for (int i = 1; i < j; ++i) {
        sq = mod(f, mul(f, sq, sq), g);
        t = add(f, t, sq);
      }
    } else {
      // r^((p^j - 1) / 2) as a product of Frobenius images of r^((p - 1) / 2).
      Poly s = powmod(f, r, (p - 1) / 2, g);
      Poly prod = s;
      for (int i = 1; i < j; ++i) {
        s = powmod(f, s, p, g);
        prod = mod(f, mul(f, prod, s), g);
      }
      t = sub(f, prod, Poly{1});
    }
    Poly h = gcd(f, g, t);
    int dh = degree(h);
    if (dh > 0 && dh < degree(g)) g = dh <= degree(g) / 2 ? h : divmod(f, g, h).first;
    g = monic(f, g);
  }
  return g;
}

}  // namespace

Poly irreducible_factor(const PrimeField& f, const Poly& a, std::mt19937_64& rng) {
  Poly g = monic(f, a);
  int n = degree(g);
  if (n < 1) throw UsageError("irreducible factor of a constant");
  for (int j = 1; 2 * j <= n; ++j) {
    Poly xq = frobenius_power(f, j, g);
    Poly h = gcd(f, g, sub(f, xq, Poly{0, 1}));
    if (degree(h) > 0) {
      // h collects the distinct irreducible factors of degree dividing j;
      // smaller degrees were exhausted earlier, so all have degree j.
      return equal_degree_factor(f, h, j, rng);
    }
  }
  return g;
}

std::optional<std::pair<Poly, Poly>> coprime_split(const PrimeField& f, const Poly& a,
                                                   std::mt19937_64& rng) {
  Poly g = monic(f, a);
  if (degree(g) < 2) return std::nullopt;
  Poly q = irreducible_factor(f, g, rng);
  // u = q-primary part of g.
  Poly u = {1};
  Poly rest = g;
  while (true) {
    auto [quot, rem] = divmod(f, rest, q);
    if (!rem.empty()) break;
    u = mul(f, u, q);
    rest = quot;
  }
  if (degree(rest) < 1) return std::nullopt;
  return std::make_pair(monic(f, u), monic(f, rest));
}

Poly crt_idempotent(const PrimeField& f, const Poly& u, const Poly& v) {
  Poly vinv = inverse_mod(f, v, u);
  return mod(f, mul(f, v, vinv), mul(f, u, v));
}

}  // namespace mcm::upoly
