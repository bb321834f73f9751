#include <doctest.h>

#include <cmath>

#include "geolat/io.hpp"

using namespace geolat;

TEST_SUITE_BEGIN("io");

TEST_CASE("operator round trip") {
  const auto H = hamiltonian(build_projective(2, 3));
  const auto doc = io::operator_to_json(H);
  CHECK(doc["dim"] == 6);
  CHECK(doc["entries"][0][2] == "1/2");
  CHECK(io::operator_from_json(io::Json::parse(doc.dump())) == H);
  CHECK_THROWS_AS(io::operator_from_json(io::Json::parse(R"({"dim": 2, "entries": [[0, 1, "x"]]})")), LatticeError);
  CHECK_THROWS_AS(io::operator_from_json(io::Json::parse(R"({"entries": []})")), LatticeError);
}

TEST_CASE("measure round trip") {
  const SpectralMeasure mu{{{0.5, 0.5}, {-0.5, 0.5}}};
  const auto back = io::measure_from_json(io::measure_to_json(mu));
  REQUIRE(back.atoms.size() == 2);
  CHECK(back.atoms[0].eigenvalue == -0.5);
  CHECK_THROWS_AS(io::measure_from_json(io::Json::parse(R"({"atoms": [[1]]})")), LatticeError);
}

TEST_CASE("jacobi document") {
  const auto L = build_uniform(2, 3);
  const auto H = hamiltonian(L);
  const auto invariance = radial_invariance(L, H);
  const auto doc = io::jacobi_to_json(jacobi_from_compression(L, H), &invariance);
  CHECK(doc["levels"][0]["beta_sq"] == "3/4");
  CHECK(doc["levels"][1]["W_k"] == 6);
  CHECK(doc["levels"][0]["beta"] == "0.866025403784");
  CHECK(doc["radially_invariant"] == true);
}

TEST_CASE("float formatting") {
  CHECK(io::format_float(-0.0) == "0");
  CHECK(io::format_float(1.0 / 3, 4) == "0.3333");
  CHECK(io::format_float(std::sqrt(3.0)) == "1.73205080757");
}

TEST_SUITE_END();
