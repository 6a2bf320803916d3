#include "grasstqft/json_io.hpp"

#include "grasstqft/errors.hpp"

namespace grasstqft {

json to_json(const Rational& q) { return to_string(q); }
json to_json(const Integer& z) { return to_string(z); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw DomainError("expected a rational as a string, got " + j.dump());
}

Integer integer_from_json(const json& j) {
  const Rational q = rational_from_json(j);
  if (q.get_den() != 1) throw DomainError("expected an integer, got " + j.dump());
  return q.get_num();
}

json to_json(const Cyclotomic& z) {
  json coeffs = json::array();
  for (const auto& c : z.coeffs()) coeffs.push_back(to_string(c));
  return {{"order", z.order()}, {"coeffs", coeffs}};
}

Cyclotomic cyclotomic_from_json(const json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("coeffs")) {
    throw DomainError("cyclotomic JSON needs \"order\" and \"coeffs\"");
  }
  const auto order = j.at("order").get<std::uint32_t>();
  if (order == 0) throw DomainError("cyclotomic order must be positive");
  std::vector<Rational> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(rational_from_json(c));
  if (coeffs.size() != CyclotomicField::get(order)->degree()) {
    throw DomainError("cyclotomic JSON has " + std::to_string(coeffs.size()) + " coefficients, expected phi(" +
                      std::to_string(order) + ")");
  }
  return Cyclotomic::from_coeffs(order, coeffs);
}

json to_json(const Partition& p) { return p.rows(); }

json to_json(const Multipartition& m) {
  json out = json::array();
  for (const auto& p : m) out.push_back(to_json(p));
  return out;
}

Partition partition_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("partition must be a JSON array, got " + j.dump());
  std::vector<int> rows;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw DomainError("partition rows must be integers, got " + v.dump());
    rows.push_back(v.get<int>());
  }
  return Partition(rows);
}

Multipartition multipartition_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("multipartition must be a JSON array of arrays, got " + j.dump());
  Multipartition out;
  for (const auto& p : j) out.push_back(partition_from_json(p));
  return out;
}

Multipartition parse_multipartition(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError("cannot parse multipartition '" + text + "': " + e.what());
  }
  return multipartition_from_json(j);
}

}  // namespace grasstqft
