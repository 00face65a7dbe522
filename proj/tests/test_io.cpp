#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "phasedisc/io.hpp"
#include "test_util.hpp"

using namespace phasedisc;

namespace {

void check_same_function(const FunctionExpr& a, const FunctionExpr& b) {
  for (const Complex z : {Complex(0.1, 0.2), Complex(-0.3, 0.5), Complex(0.6, -0.1)}) {
    CHECK(std::abs(a(z) - b(z)) <= 1e-15 * (1.0 + std::abs(a(z))));
  }
}

}  // namespace

TEST_CASE("shortest round-trip formatting") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("function descriptors round-trip through JSON") {
  const BlaschkeProduct b(unit(0.3), {0.2, Complex(-0.1, 0.4)});
  const RationalFunction r(Polynomial(std::vector<Complex>{1.0, Complex(0.0, 0.5)}),
                           Polynomial(std::vector<Complex>{2.0, 0.1}));
  const std::vector<FunctionExpr> exprs{
      FunctionExpr::blaschke(b),
      FunctionExpr::rational(r),
      FunctionExpr::moebius_of(disc_automorphism(kI, 0.3), FunctionExpr::blaschke(b)),
      FunctionExpr::power_composite(3, r, disc_automorphism(1.0, 0.1)),
      FunctionExpr::strip(),
      FunctionExpr::product({FunctionExpr::blaschke(b), FunctionExpr::rational(r)}),
  };
  for (const FunctionExpr& e : exprs) {
    const Json j = to_json(e);
    CHECK(j["type"] == std::string(e.type_name()));
    const FunctionExpr back = function_from_json(Json::parse(j.dump()));
    check_same_function(e, back);
    CHECK(to_json(back).dump() == j.dump());
  }
}

TEST_CASE("descriptor parse errors") {
  const auto kind = [](const char* text) {
    return testutil::thrown_kind([&] { function_from_json(Json::parse(text)); });
  };
  CHECK(kind(R"({"type":"nope"})") == ErrorKind::ParseError);
  CHECK(kind(R"({"zeros":[]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"type":"blaschke","constant":[1,0],"zeros":[[2,0]]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"type":"blaschke","constant":[1,0],"zeros":[[0.1]]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"type":"product","factors":[]})") == ErrorKind::ParseError);
  try {
    function_from_json(Json::parse(R"({"type":"product","factors":[{"type":"strip"},{"type":"rational","num":[1]}]})"));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("$.factors[1]") != std::string::npos);
  }
}

TEST_CASE("circle triples and set specs") {
  const Circle c = parse_circle_triple("0.1,-0.2,0.3");
  CHECK(c.center == Complex(0.1, -0.2));
  CHECK(c.radius == 0.3);
  CHECK_THROWS_KIND(parse_circle_triple("0.1,0.2"), ErrorKind::ParseError);
  CHECK_THROWS_KIND(parse_circle_triple("0.1,0.2,x"), ErrorKind::ParseError);
  CHECK_THROWS_KIND(parse_circle_triple("0.1,0.2,-1"), ErrorKind::ParseError);

  const PointSet circle = parse_set_spec("circle:0,0,0.5,64");
  CHECK(std::get<CircleGrid>(circle).n_points == 64);
  const PointSet seg = parse_set_spec("segment:-1,0,1,0");
  CHECK(std::get<LineSegmentGrid>(seg).n_points == 512);
  CHECK_THROWS_KIND(parse_set_spec("polygon:1,2"), ErrorKind::ParseError);
  CHECK_THROWS_KIND(parse_set_spec("circle"), ErrorKind::ParseError);
  CHECK_THROWS_KIND(parse_set_spec("segment:1,2,3"), ErrorKind::ParseError);
  CHECK_THROWS_KIND(parse_set_spec("file:/nonexistent/points.csv"), ErrorKind::ParseError);
}

TEST_CASE("modulus CSV round-trip") {
  const BlaschkeProduct b(1.0, {0.3});
  const ModulusData d = sample_modulus([&](Complex z) { return b(z); }, Circle{0.0, 0.5}, 64);
  std::stringstream t_csv;
  write_t_csv(t_csv, d);
  const ModulusData back = read_modulus_csv(t_csv, 0.5, true);
  REQUIRE(back.points.size() == 64);
  for (std::size_t k = 0; k < 64; ++k) {
    CHECK(back.moduli[k] == d.moduli[k]);
    CHECK(std::abs(back.points[k] - d.points[k]) < 1e-15);
  }

  std::stringstream p_csv;
  write_points_csv(p_csv, d.points, d.moduli);
  const ModulusData back2 = read_modulus_csv(p_csv, 0.5, true);
  for (std::size_t k = 0; k < 64; ++k) CHECK(back2.points[k] == d.points[k]);
}

TEST_CASE("modulus CSV errors carry line numbers") {
  const auto kind_and_message = [](const std::string& text, bool uniform) -> std::pair<ErrorKind, std::string> {
    std::istringstream in(text);
    try {
      read_modulus_csv(in, 1.0, uniform, "data.csv");
    } catch (const Error& e) {
      return {e.kind(), e.what()};
    }
    return {ErrorKind::InternalCheckFailed, ""};
  };
  auto [k1, m1] = kind_and_message("t,modulus\n0,1\n0.5,abc\n", false);
  CHECK(k1 == ErrorKind::ParseError);
  CHECK(m1.find("data.csv:3") != std::string::npos);
  auto [k2, m2] = kind_and_message("x,y\n0,1\n", false);
  CHECK(k2 == ErrorKind::ParseError);
  auto [k3, m3] = kind_and_message("t,modulus\n0,1\n1,1\n3,1\n", true);
  CHECK(k3 == ErrorKind::ParseError);
  CHECK(m3.find("data.csv:3") != std::string::npos);
  auto [k4, m4] = kind_and_message("t,modulus\n0,1\n0,1\n", false);
  CHECK(k4 == ErrorKind::ParseError);
  auto [k5, m5] = kind_and_message("t,modulus\n0,-1\n", false);
  CHECK(k5 == ErrorKind::ParseError);
  auto [k6, m6] = kind_and_message("t,modulus\n0,1,2\n", false);
  CHECK(k6 == ErrorKind::ParseError);
}
