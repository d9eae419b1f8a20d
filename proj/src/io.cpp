#include "consec/io.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "consec/errors.hpp"

namespace consec {

namespace {

std::vector<std::uint32_t> read_extents(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw ShapeError(std::string("missing array '") + key + "'");
  std::vector<std::uint32_t> out;
  for (const auto& v : doc[key]) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
      throw ShapeError(std::string("'") + key + "' must hold positive integers");
    out.push_back(v.get<std::uint32_t>());
  }
  return out;
}

bool is_decimal(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

nlohmann::json to_json(const SystemShape& shape, const IntPolynomial& poly) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : poly.terms()) terms.push_back({e, c.get_str()});
  return {{"n", shape.extents()}, {"s", shape.window()}, {"poly", std::move(terms)}};
}

ShapedPolynomial polynomial_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ShapeError("polynomial document must be a JSON object");
  SystemShape shape(read_extents(doc, "n"), read_extents(doc, "s"));
  if (!doc.contains("poly") || !doc["poly"].is_array()) throw ShapeError("missing array 'poly'");
  IntPolynomial poly;
  bool first = true;
  std::uint64_t last = 0;
  for (const auto& term : doc["poly"]) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_number_unsigned() ||
        !term[1].is_string())
      throw ShapeError("each term must be [exponent, \"coefficient\"]");
    const auto exponent = term[0].get<std::uint64_t>();
    const auto text = term[1].get<std::string>();
    if (!first && exponent <= last) throw ShapeError("exponents must be strictly increasing");
    if (exponent > shape.volume()) throw ShapeError("exponent exceeds the array volume");
    if (!is_decimal(text)) throw ShapeError("coefficient '" + text + "' is not a decimal integer");
    mpz_class c(text, 10);
    if (c == 0) throw ShapeError("zero coefficients are not stored");
    poly.add_term(exponent, c);
    first = false;
    last = exponent;
  }
  return {std::move(shape), std::move(poly)};
}

}  // namespace consec
