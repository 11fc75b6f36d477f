#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "mcm/linalg.hpp"

namespace mcm::upoly {

/// Dense univariate polynomial over GF(p), coefficients low to high.
using Poly = std::vector<PrimeField::Element>;

void trim(Poly& a);
int degree(const Poly& a);
Poly add(const PrimeField& f, const Poly& a, const Poly& b);
Poly sub(const PrimeField& f, const Poly& a, const Poly& b);
Poly mul(const PrimeField& f, const Poly& a, const Poly& b);
std::pair<Poly, Poly> divmod(const PrimeField& f, const Poly& a, const Poly& b);
Poly mod(const PrimeField& f, const Poly& a, const Poly& m);
Poly monic(const PrimeField& f, Poly a);
Poly gcd(const PrimeField& f, Poly a, Poly b);
/// Inverse of a modulo m when gcd(a, m) = 1.
Poly inverse_mod(const PrimeField& f, const Poly& a, const Poly& m);
Poly powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& m);
/// x^(p^j) mod m.
Poly frobenius_power(const PrimeField& f, int j, const Poly& m);

/// Minimal polynomial of a square matrix (monic).
Poly minimal_polynomial(const Matrix& a);
Matrix evaluate(const Poly& p, const Matrix& a);

/// Some monic irreducible factor of a. Randomized equal-degree splitting
/// draws from rng.
Poly irreducible_factor(const PrimeField& f, const Poly& a, std::mt19937_64& rng);
/// Writes a = u * v with u, v coprime and non-constant, or nothing when a
/// is a power of a single irreducible.
std::optional<std::pair<Poly, Poly>> coprime_split(const PrimeField& f, const Poly& a,
                                                   std::mt19937_64& rng);
/// Polynomial e with e = 1 mod u and e = 0 mod v.
Poly crt_idempotent(const PrimeField& f, const Poly& u, const Poly& v);

}  // namespace mcm::upoly
