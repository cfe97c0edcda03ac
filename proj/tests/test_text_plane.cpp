#include "error.hpp"
#include "plane.hpp"
#include "support.hpp"
#include "text.hpp"

#include <doctest.h>

using namespace hrck;

TEST_CASE("tokenize drops comments and blank lines and consumes the format header") {
  const auto lines = text::tokenize("format 1\n\n# note\nq 2 # trailing\n  generators a b\n");
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].number == 4);
  CHECK(lines[0].tokens == std::vector<std::string>{"q", "2"});
  CHECK(lines[1].tokens.size() == 3);
}

TEST_CASE("tokenize rejects other format versions") {
  CHECK_THROWS_AS(text::tokenize("format 2\nq 2\n"), ParseError);
  CHECK_THROWS_AS(text::tokenize("format one\n"), ParseError);
}

TEST_CASE("parse_count rejects junk") {
  CHECK(text::parse_count("17", 1) == 17);
  CHECK_THROWS_AS(text::parse_count("-1", 3), ParseError);
  CHECK_THROWS_AS(text::parse_count("4x", 3), ParseError);
}

TEST_CASE("read_file reports missing files as I/O errors") {
  try {
    text::read_file(test::data_path("nope.txt"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}

TEST_CASE("PG(2,q) has the projective plane axioms for small primes") {
  for (int q : {2, 3, 5, 7}) {
    const auto p = plane::build_pg2(q);
    const std::size_t n = q * q + q + 1;
    CHECK(p.point_count() == n);
    CHECK(p.line_count() == n);
    CHECK(plane::validate_plane(p).ok);
    // Independent count: every pair of points on exactly one line.
    for (Index a = 0; a < n; ++a)
      for (Index b = a + 1; b < n; ++b) {
        int shared = 0;
        for (Index l = 0; l < n; ++l) shared += p.incident(a, l) && p.incident(b, l);
        CHECK(shared == 1);
      }
  }
}

TEST_CASE("PG(2,q) scope") {
  CHECK_THROWS_AS(plane::build_pg2(1), DomainError);
  try {
    plane::build_pg2(4);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unsupported);
  }
}

TEST_CASE("validate_plane names the first violated axiom") {
  auto lines = plane::build_pg2(2).lines();
  SUBCASE("short line") {
    lines[3].pop_back();
    const auto r = plane::validate_plane(plane::ProjectivePlane(2, 7, lines));
    CHECK_FALSE(r.ok);
    CHECK(r.axiom == "line with 2 points");
    CHECK(r.witness == "line 3");
  }
  SUBCASE("duplicated line") {
    lines[1] = lines[0];
    const auto r = plane::validate_plane(plane::ProjectivePlane(2, 7, lines));
    CHECK_FALSE(r.ok);
  }
  SUBCASE("wrong line count") {
    lines.pop_back();
    CHECK(plane::validate_plane(plane::ProjectivePlane(2, 7, lines)).axiom == "line count");
  }
}

TEST_CASE("incidence tables round-trip") {
  const auto p = plane::build_pg2(3);
  const auto text = plane::serialize_incidence_table(p);
  CHECK(plane::parse_incidence_table(text) == p);
  CHECK_THROWS_AS(plane::parse_incidence_table("plane q 2\nline 1 0 1 2\n"), ParseError);
}

TEST_CASE("correspondence files default to PG(2,q) and validate lambda") {
  std::string text = "format 1\nplane q 2\n";
  for (int i = 0; i < 7; ++i) text += "lambda " + std::to_string(i) + " " + std::to_string((i + 1) % 7) + "\n";
  const auto corr = plane::parse_correspondence(text);
  CHECK(corr.plane == plane::build_pg2(2));
  CHECK(plane::validate_correspondence(corr).ok);
  CHECK(plane::parse_correspondence(plane::serialize_correspondence(corr)).lambda == corr.lambda);

  auto bad = corr;
  bad.lambda[1] = bad.lambda[0];
  CHECK(plane::validate_correspondence(bad).axiom == "lambda not injective");
  bad.lambda.pop_back();
  CHECK(plane::validate_correspondence(bad).axiom == "lambda not total");
}
