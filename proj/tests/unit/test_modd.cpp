#include <iostream>

#include "doctest.h"
#include "generators.hpp"
#include "widthlab/modd.hpp"

using namespace widthlab;
using widthlab::testing::Rng;
using widthlab::testing::uniform;

namespace {

const Alphabet G = Alphabet::group_default();

VerbalWord V(const char* text) { return VerbalWord::parse(text); }
Substitution S(const VerbalWord& w, const char* text) {
  return parse_substitution(text, w.variable_count(), G);
}

std::vector<std::string> pieces_of(const ModDDecomposition& d) {
  std::vector<std::string> out;
  for (const auto& y : d.pieces) {
    out.push_back(format_word(y));
  }
  return out;
}

}  // namespace

TEST_SUITE("modd") {

TEST_CASE("commutator of two letters") {
  const auto w = V("x1 x2 x1^-1 x2^-1");
  const auto s = S(w, "x1=b;x2=f0");
  const auto d = decompose(w, s);
  CHECK(pieces_of(d) == std::vector<std::string>{"b", "f0"});
  CHECK(d.sequence
        == std::vector<SignedPiece>{{0, 1}, {1, 1}, {0, -1}, {1, -1}});
  CHECK(d.piece_counts == std::vector<std::int64_t>{0, 0});
  CHECK(d.d == 0);
  CHECK(verify_decomposition(d, w, s));
}

TEST_CASE("x1^2 x2^2 with mutually inverse images") {
  const auto w = V("x1^2 x2^2");
  const auto s = S(w, "x1=b f0^-1;x2=f0 b^-1");
  CHECK(evaluate(w, s).empty());
  const auto d = decompose(w, s);
  CHECK(pieces_of(d) == std::vector<std::string>{"b f0^-1"});
  CHECK(d.sequence.empty());
  CHECK(d.pre_cancellation_length == 4);
  CHECK(verify_decomposition(d, w, s));
}

TEST_CASE("partial cancellation splits images") {
  const auto w = V("x1^2 x2^2");
  const auto s = S(w, "x1=b f0 f1;x2=f1^-1 b");
  // b f0 f1 b f0 f1 f1^-1 b f1^-1 b
  const auto d = decompose(w, s);
  const auto check = check_decomposition(d, w, s);
  CHECK_MESSAGE(check.ok, check.reason);
  CHECK(reconstruct(d, G) == evaluate(w, s));
  for (auto c : d.piece_counts) {
    CHECK(c % 2 == 0);
  }
}

TEST_CASE("a single variable is a single piece") {
  const auto w = V("x1");
  const auto s = S(w, "x1=b f0^3 f1^-1");
  const auto d = decompose(w, s);
  CHECK(pieces_of(d) == std::vector<std::string>{"b f0^3 f1^-1"});
  CHECK(d.piece_counts == std::vector<std::int64_t>{1});
  CHECK(verify_decomposition(d, w, s));
}

TEST_CASE("empty images give no pieces") {
  const auto w = V("x1 x2^2 x1^-1");
  const auto s = S(w, "x1=;x2=");
  const auto d = decompose(w, s);
  CHECK(d.pieces.empty());
  CHECK(d.sequence.empty());
  CHECK(verify_decomposition(d, w, s));
}

TEST_CASE("tampering is detected") {
  const auto w = V("x1 x2 x1^-1 x2^-1");
  const auto s = S(w, "x1=b f1;x2=f0 b^2");
  const auto d = decompose(w, s);
  REQUIRE(verify_decomposition(d, w, s));

  auto flipped = d;
  flipped.sequence[0].sign = -flipped.sequence[0].sign;
  CHECK_FALSE(verify_decomposition(flipped, w, s));

  auto counts = d;
  counts.piece_counts[0] += 1;
  CHECK_FALSE(verify_decomposition(counts, w, s));

  auto swapped = d;
  std::swap(swapped.sequence[0], swapped.sequence[1]);
  CHECK_FALSE(verify_decomposition(swapped, w, s));

  auto modulus = d;
  modulus.d = 2;
  CHECK_FALSE(verify_decomposition(modulus, w, s));

  auto repeated = d;
  repeated.pieces.push_back(repeated.pieces[0]);
  repeated.piece_counts.push_back(0);
  CHECK_FALSE(verify_decomposition(repeated, w, s));

  // inserting y y^-1 keeps the product but cancels at the junction
  auto padded = d;
  padded.sequence.insert(padded.sequence.begin() + 1, {{0, 1}, {0, -1}});
  CHECK_FALSE(verify_decomposition(padded, w, s));
}

TEST_CASE("random words and substitutions") {
  Rng rng(2024);
  double worst_ratio = 0;
  std::size_t worst_pieces = 0;
  int commutator_cases = 0;
  int divisible_cases = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
    const auto w = widthlab::testing::random_verbal(rng, n, 6);
    const auto s = widthlab::testing::random_substitution(rng, n, G, 8);
    const auto d = decompose(w, s);
    const auto check = check_decomposition(d, w, s);
    REQUIRE_MESSAGE(check.ok, format_verbal(w) << " / "
                                  << format_substitution(s) << ": "
                                  << check.reason);
    CHECK(d == decompose(w, s));
    const double r1 = static_cast<double>(w.letter_length() + 1);
    worst_ratio = std::max(worst_ratio, static_cast<double>(d.N()) / (r1 * r1 * r1));
    worst_pieces = std::max(worst_pieces, d.pieces.size());
    commutator_cases += w.exponent_gcd() == 0;
    divisible_cases += w.exponent_gcd() >= 2;
  }
  CHECK(commutator_cases > 0);
  CHECK(divisible_cases > 0);
  MESSAGE("max N/(r+1)^3 = " << worst_ratio << ", max pieces = " << worst_pieces);
}

TEST_CASE("nested cancellation across occurrences") {
  // Images built to cancel deep into their neighbours.
  Rng rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const auto u = widthlab::testing::random_word(rng, G, 4);
    const auto v = widthlab::testing::random_word(rng, G, 4);
    const auto a = widthlab::testing::random_word(rng, G, 3);
    const auto w = V(trial % 2 ? "x1^2 x2 x1^-1 x2^-1 x3^2" : "x1 x2 x3 x1^-1 x3^-1 x2^-1");
    Substitution s{{multiply(u, a), multiply(invert(a), v), multiply(invert(v), u)}};
    const auto d = decompose(w, s);
    const auto check = check_decomposition(d, w, s);
    CHECK_MESSAGE(check.ok, format_substitution(s) << ": " << check.reason);
  }
}

}  // TEST_SUITE
