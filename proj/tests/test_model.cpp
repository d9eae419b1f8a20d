#include <doctest.h>

#include <cmath>
#include <vector>

#include "consec/engine.hpp"
#include "consec/errors.hpp"
#include "consec/io.hpp"
#include "consec/polynomial.hpp"
#include "consec/shape.hpp"
#include "support.hpp"

using namespace consec;

namespace {

IntPolynomial one_minus_q_squared() {
  IntPolynomial p = IntPolynomial::constant(1);
  p.add_term(1, -2);
  p.add_term(2, 1);
  return p;
}

SystemShape shape_of(std::vector<std::int64_t> n, std::vector<std::int64_t> s) {
  return validate_shape(static_cast<std::int64_t>(n.size()), n, s);
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("validate_shape derives volume and placements") {
    auto a = shape_of({2}, {1});
    CHECK(a.volume() == 2);
    CHECK(a.placement_count() == 2);
    CHECK(a.failable());

    auto b = shape_of({2, 3}, {1, 2});
    CHECK(b.volume() == 6);
    CHECK(b.placement_count() == 4);

    auto c = shape_of({2}, {3});
    CHECK_FALSE(c.failable());
    CHECK(c.placement_count() == 0);
    CHECK(c.volume() == 2);
  }

  TEST_CASE("validate_shape rejects bad input") {
    std::vector<std::int64_t> n{2, 3}, s{1, 2}, one{1}, zero{0}, neg{-1};
    CHECK_THROWS_AS(validate_shape(0, {}, {}), ShapeError);
    CHECK_THROWS_AS(validate_shape(2, n, one), ShapeError);
    CHECK_THROWS_AS(validate_shape(1, zero, one), ShapeError);
    CHECK_THROWS_AS(validate_shape(1, one, neg), ShapeError);
    std::vector<std::int64_t> big{2048, 1024}, small{1, 1};
    CHECK_THROWS_AS(validate_shape(2, big, small), ResourceError);
    CHECK_NOTHROW(validate_shape(2, big, small, std::uint64_t{1} << 21));
  }

  TEST_CASE("exact evaluation") {
    const auto p = one_minus_q_squared();
    CHECK(evaluate(p, ExactRational(0)) == ExactRational(1));
    CHECK(evaluate(p, ExactRational(1)) == ExactRational(0));
    CHECK(evaluate(p, ExactRational(1, 2)) == ExactRational(1, 4));
    CHECK(evaluate(IntPolynomial{}, ExactRational(1, 3)) == ExactRational(0));
  }

  TEST_CASE("float evaluation") {
    CHECK(evaluate(one_minus_q_squared(), 0.5) == doctest::Approx(0.25).epsilon(1e-12));
    auto p = IntPolynomial::constant(1);
    p.add_term(4, -1);
    CHECK(evaluate(p, 1.0) == 0.0);
    CHECK_THROWS_AS(evaluate(p, -0.1), ShapeError);
    CHECK_THROWS_AS(evaluate(p, 1.5), ShapeError);
    CHECK_THROWS_AS(evaluate(p, std::nan("")), ShapeError);

    const auto r = reliability_polynomial(SystemShape({2, 3}, {1, 2}));
    const double exact = evaluate(r, ExactRational(1, 10)).to_double();
    CHECK(std::abs(evaluate(r, 0.1) - exact) <= 1e-9);
  }

  TEST_CASE("rational parsing") {
    CHECK(ExactRational::parse("1/2") == ExactRational(1, 2));
    CHECK(ExactRational::parse("2/4") == ExactRational(1, 2));
    CHECK(ExactRational::parse("0.25") == ExactRational(1, 4));
    CHECK(ExactRational::parse(".5") == ExactRational(1, 2));
    CHECK(ExactRational::parse("1") == ExactRational(1));
    CHECK(ExactRational::parse("-3/6") == ExactRational(-1, 2));
    CHECK(ExactRational::parse("3/6").to_string() == "1/2");
    CHECK(ExactRational::parse("010/3") == ExactRational(10, 3));
    CHECK(ExactRational::parse("0.0625") == ExactRational(1, 16));
    for (const char* bad : {"", "1/0", "a", "1/", "/2", "1e-3", "0.5.1", "1/-2", "."})
      CHECK_THROWS_AS(ExactRational::parse(bad), ShapeError);
  }

  TEST_CASE("polynomial arithmetic keeps no zero terms") {
    auto p = one_minus_q_squared();
    auto sum = p - p;
    CHECK(sum.is_zero());
    CHECK(sum.terms().empty());
    p.add_term(1, 2);
    CHECK(p.terms().count(1) == 0);
    CHECK((p * mpz_class(0)).is_zero());
    CHECK((p * mpz_class(-3)).coefficient(2) == -3);
  }

  TEST_CASE("text layout") {
    CHECK(one_minus_q_squared().to_text() == "1 - 2q + q^2");
    CHECK(IntPolynomial{}.to_text() == "0");
    IntPolynomial p;
    p.add_term(2, 2);
    p.add_term(3, -1);
    CHECK(p.to_text() == "2q^2 - q^3");
    CHECK((IntPolynomial{} - p).to_text() == "-2q^2 + q^3");
    CHECK(IntPolynomial::monomial(-1, 1).to_text() == "-q");
  }

  TEST_CASE("canonical JSON") {
    const SystemShape shape({2, 3}, {1, 2});
    const auto r = reliability_polynomial(shape);
    const auto doc = to_json(shape, r);
    CHECK(doc.dump() ==
          R"({"n":[2,3],"poly":[[0,"1"],[2,"-4"],[3,"2"],[4,"4"],[5,"-4"],[6,"1"]],"s":[1,2]})");
    const auto back = polynomial_from_json(nlohmann::json::parse(doc.dump()));
    CHECK(back.shape == shape);
    CHECK(back.poly == r);

    // coefficients beyond 64 bits survive as strings
    IntPolynomial big;
    big.add_term(3, mpz_class("-123456789012345678901234567890"));
    const auto again = polynomial_from_json(to_json(SystemShape({4}, {1}), big));
    CHECK(again.poly == big);
    CHECK(polynomial_from_json(nlohmann::json::parse(R"({"n":[9],"s":[1],"poly":[[1,"010"]]})"))
              .poly.coefficient(1) == 10);
  }

  TEST_CASE("canonical JSON rejects malformed documents") {
    using nlohmann::json;
    CHECK_THROWS_AS(polynomial_from_json(json::parse(R"([1,2])")), ShapeError);
    CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"n":[2],"s":[1]})")), ShapeError);
    CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"n":[2],"s":[1],"poly":[[1,"2"],[1,"3"]]})")),
                    ShapeError);
    CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"n":[2],"s":[1],"poly":[[2,"1"],[1,"3"]]})")),
                    ShapeError);
    CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"n":[2],"s":[1],"poly":[[1,2]]})")),
                    ShapeError);
    CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"n":[2],"s":[1],"poly":[[1,"0"]]})")),
                    ShapeError);
    CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"n":[2],"s":[1],"poly":[[5,"1"]]})")),
                    ShapeError);
    CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"n":[2],"s":[1],"poly":[[1,"1x"]]})")),
                    ShapeError);
  }

  TEST_CASE("normalization and float/rational agreement over small shapes") {
    const std::vector<ExactRational> exact_q{ExactRational(1, 10), ExactRational(3, 10),
                                             ExactRational(1, 2), ExactRational(9, 10)};
    const std::vector<double> float_q{0.1, 0.3, 0.5, 0.9};
    for (const auto& shape : testing::failable_catalog(3, 12)) {
      if (shape.placement_count() > 20) continue;
      CAPTURE(shape.describe());
      const auto p = failure_polynomial(shape);
      const auto r = reliability_polynomial(shape);
      CHECK(evaluate(p, ExactRational(0)) == ExactRational(0));
      CHECK(evaluate(p, ExactRational(1)) == ExactRational(1));
      CHECK(r + p == IntPolynomial::constant(1));
      for (std::size_t i = 0; i < float_q.size(); ++i) {
        const double want = evaluate(r, exact_q[i]).to_double();
        CHECK(std::abs(evaluate(r, float_q[i]) - want) <= 1e-9 * std::abs(want));
      }
    }
    CHECK(failure_polynomial(SystemShape({2, 2}, {3, 1})).is_zero());
  }
}
