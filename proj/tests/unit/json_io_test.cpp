#include "polytope/error.hpp"
#include "polytope_io/json_io.hpp"

#include <gtest/gtest.h>

namespace polytope {
namespace {

using io::Json;

TEST(JsonIo, SmallIntegersAreNumbersLargeOnesStrings) {
  EXPECT_TRUE(io::to_json(Integer(42)).is_number_integer());
  const Integer big("123456789012345678901234567890");
  const Json j = io::to_json(big);
  ASSERT_TRUE(j.is_string());
  EXPECT_EQ(io::integer_from_json(j, "x"), big);
  EXPECT_EQ(io::integer_from_json(Json(-7), "x"), -7);
  EXPECT_EQ(io::integer_from_json(Json("0100"), "x"), 100);
}

TEST(JsonIo, MatrixAndGramRoundTrip) {
  const IntMatrix m{{1, -2}, {3, 4}, {5, 6}};
  EXPECT_EQ(io::int_matrix_from_json(io::to_json(m), "m"), m);
  const auto g = GramTable::of_rows(m);
  EXPECT_EQ(io::gram_from_json(io::to_json(g), "g"), g);
}

TEST(JsonIo, GeneratorIsRebuiltFromShape) {
  const auto a = rotate_generator(build_v_matrix(5, 2), 2);
  EXPECT_EQ(io::generator_from_json(io::to_json(a)), a);
  Json j = io::to_json(a);
  j["rows"][0][0] = 9;
  EXPECT_THROW((void)io::generator_from_json(j), ParameterError);
}

TEST(JsonIo, RationalFormatting) {
  EXPECT_EQ(io::exact(Rational(2, 3)), "2/3");
  EXPECT_EQ(io::exact(Rational(4, 2)), "2");
  EXPECT_EQ(io::decimal(Rational(2, 3)), "0.666667");
  EXPECT_EQ(io::decimal(Distortion::infinity()), "inf");
}

TEST(JsonIo, ParseRationalForms) {
  EXPECT_EQ(io::parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(io::parse_rational("2"), 2);
  EXPECT_EQ(io::parse_rational("0.75"), Rational(3, 4));
  EXPECT_EQ(io::parse_rational("-0.5"), Rational(-1, 2));
  EXPECT_EQ(io::parse_rational("010"), 10);
  EXPECT_EQ(io::parse_rational("0.075"), Rational(3, 40));
  EXPECT_THROW((void)io::parse_rational("1/0"), ParameterError);
  EXPECT_THROW((void)io::parse_rational("abc"), ParameterError);
}

TEST(JsonIo, ErrorsNameTheField) {
  try {
    (void)io::int_vector_from_json(Json("oops"), "codeword");
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("codeword"), std::string::npos);
  }
}

TEST(JsonIo, DssParamsRoundTrip) {
  DssParams p;
  p.alpha = 2;
  p.beta = 1;
  p.n = 8;
  p.k = 7;
  p.d = 7;
  p.t = 1;
  p.lifetime = 18;
  p.rows = 5;
  p.q = 256;
  const auto back = io::dss_params_from_json(io::to_json(p));
  EXPECT_EQ(back.alpha, 2U);
  EXPECT_EQ(back.lifetime, 18U);
  EXPECT_EQ(back.q, std::optional<unsigned long>(256));
}

TEST(JsonIo, DumpEndsWithNewline) {
  const auto s = io::dump(Json{{"a", 1}});
  EXPECT_EQ(s, "{\n  \"a\": 1\n}\n");
}

}  // namespace
}  // namespace polytope
