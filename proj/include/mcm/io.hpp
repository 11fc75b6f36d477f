#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "mcm/mf.hpp"

namespace mcm {

using Json = nlohmann::ordered_json;

/// Parses a JSON document. Syntax errors become InputError naming the
/// source, line and column.
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::filesystem::path& path);

/// Integer-coefficient polynomial text accepted back by the parser.
std::string polynomial_string(const WeightedPolyRing& ring, const Polynomial& p);

/// { "char", "vars", "weights", "relations" }. A modulus overrides "char".
RingPtr ring_from_json(const Json& j, std::optional<std::uint32_t> modulus = std::nullopt);
Json ring_to_json(const QuotientRing& ring);

/// A ring reference is an inline object or a path relative to `base`.
RingPtr ring_from_ref(const Json& ref, const std::filesystem::path& base,
                      std::optional<std::uint32_t> modulus = std::nullopt);

/// { "ring", "gen_degs", "rel_degs", "presentation" }, columns = relations.
GradedModule module_from_json(const Json& j, const std::filesystem::path& base,
                              std::optional<std::uint32_t> modulus = std::nullopt);
/// Same layout over an already loaded ring.
GradedModule module_over(const RingPtr& ring, const Json& j);
Json module_to_json(const GradedModule& m);

/// { "ring", "f", "phi", "psi" }; the ring gives variables and weights.
MatrixFactorization mf_from_json(const Json& j, const std::filesystem::path& base,
                                 std::optional<std::uint32_t> modulus = std::nullopt);
Json mf_to_json(const MatrixFactorization& mf);

/// "ade:A3:dim1" with an optional ":p<prime>" suffix. Without a prime the
/// modulus is used, or else 7 when the catalog allows it and 5 otherwise.
Catalog catalog_from_ref(const std::string& ref, std::optional<std::uint32_t> modulus = std::nullopt);

}  // namespace mcm
