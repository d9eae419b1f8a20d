#pragma once

#include <json.hpp>

#include "consec/polynomial.hpp"
#include "consec/shape.hpp"

namespace consec {

struct ShapedPolynomial {
  SystemShape shape;
  IntPolynomial poly;
};

/// {"n": [...], "s": [...], "poly": [[exponent, "coefficient"], ...]} with
/// strictly increasing exponents and decimal-string coefficients.
nlohmann::json to_json(const SystemShape& shape, const IntPolynomial& poly);

/// Inverse of to_json; extra keys are ignored. Throws ShapeError on a
/// malformed document.
ShapedPolynomial polynomial_from_json(const nlohmann::json& doc);

}  // namespace consec
