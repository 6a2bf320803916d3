#pragma once

#include <json.hpp>

#include "grasstqft/cyclotomic.hpp"
#include "grasstqft/partition.hpp"
#include "grasstqft/rational.hpp"

namespace grasstqft {

using json = nlohmann::json;

/// Rationals and integers travel as decimal strings ("p/q", "/q" omitted when 1).
json to_json(const Rational& q);
json to_json(const Integer& z);
Rational rational_from_json(const json& j);
Integer integer_from_json(const json& j);

/// {"order": M, "coeffs": ["p/q", ...]} with phi(M) canonical coefficients.
json to_json(const Cyclotomic& z);
Cyclotomic cyclotomic_from_json(const json& j);

/// [2,1] and [[2,1],[1]].
json to_json(const Partition& p);
json to_json(const Multipartition& m);
Partition partition_from_json(const json& j);
Multipartition multipartition_from_json(const json& j);

/// Parses a multipartition literal such as "[[2,1],[]]"; DomainError on bad input.
Multipartition parse_multipartition(const std::string& text);

}  // namespace grasstqft
