#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "widthlab/error.hpp"
#include "widthlab/verbal.hpp"

using namespace widthlab;
using widthlab::testing::Rng;
using widthlab::testing::uniform;

namespace {

const Alphabet G = Alphabet::group_default();

ReducedWord W(const char* text) { return parse_word(text, G); }
VerbalWord V(const char* text) { return VerbalWord::parse(text); }
Substitution S(const VerbalWord& w, const char* text) {
  return parse_substitution(text, w.variable_count(), G);
}

}  // namespace

TEST_SUITE("verbal") {

TEST_CASE("e(w) and properness") {
  CHECK(exponent_gcd(V("x1 x2 x1^-1 x2^-1")) == 0);
  CHECK(exponent_gcd(V("x1^2 x2^4")) == 2);
  CHECK(exponent_gcd(V("x1 x2^2")) == 1);
  CHECK_FALSE(is_proper(V("x1 x2^2")));
  CHECK(is_proper(V("x1 x2 x1^-1 x2^-1")));
  CHECK(is_proper(V("x1^2")));
  CHECK(exponent_gcd(V("x1^-6 x2^4")) == 2);
  // an unused variable has exponent sum 0 and leaves the gcd alone
  CHECK(exponent_gcd(V("x3^3")) == 3);
  CHECK(V("x3^3").variable_count() == 3);
}

TEST_CASE("trivial and malformed words are rejected") {
  CHECK_THROWS_AS(V("x1 x1^-1"), Error);
  CHECK_THROWS_AS(V(""), Error);
  CHECK_THROWS_AS(V("b"), Error);
  CHECK_THROWS_AS(V("x0"), Error);
  CHECK_THROWS_AS(V("x01"), Error);
}

TEST_CASE("evaluate") {
  const auto sq = V("x1^2");
  CHECK(format_word(evaluate(sq, S(sq, "x1=b f0"))) == "b f0 b f0");
  const auto c = V("x1 x2 x1^-1 x2^-1");
  CHECK(evaluate(c, S(c, "x1=b;x2=b")).empty());
  CHECK(format_word(evaluate(c, S(c, "x2=f1;x1=f0^2"))) == "f0^2 f1 f0^-2 f1^-1");
  CHECK_THROWS_AS(evaluate(c, Substitution{{W("b")}}), Error);
}

TEST_CASE("substitution syntax") {
  const auto c = V("x1 x2 x1^-1 x2^-1");
  CHECK(format_substitution(S(c, "x1=;x2=b f0")) == "x1=;x2=b f0");
  CHECK_THROWS_AS(S(c, "x1=b"), Error);
  CHECK_THROWS_AS(S(c, "x1=b;x1=f0"), Error);
  CHECK_THROWS_AS(S(c, "x1=b;x3=f0"), Error);
  CHECK_THROWS_AS(S(c, "x1=b;x2=q"), Error);
}

TEST_CASE("power witness") {
  auto check = [](const char* w_text, const char* g_text,
                  std::vector<const char*> images, const char* value) {
    const auto w = V(w_text);
    const auto s = power_witness(w, W(g_text));
    REQUIRE(s.images.size() == images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      CHECK(format_word(s.images[i]) == images[i]);
    }
    CHECK(format_word(evaluate(w, s)) == value);
  };
  check("x1^2 x2^4", "b", {"b", ""}, "b^2");
  check("x1^6 x2^4", "f0", {"f0", "f0^-1"}, "f0^2");
  check("x1", "b", {"b"}, "b");
  CHECK_THROWS_AS(power_witness(V("x1 x2 x1^-1 x2^-1"), W("b")), Error);

  Rng rng(5);
  int tried = 0;
  while (tried < 100) {
    const auto w = widthlab::testing::random_verbal(rng, 3, 6);
    if (w.exponent_gcd() == 0) {
      continue;
    }
    ++tried;
    const auto g = widthlab::testing::random_word(rng, G, 6);
    CHECK(evaluate(w, power_witness(w, g)) == power(g, w.exponent_gcd()));
  }
}

TEST_CASE("evaluate substitutes products letterwise") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = widthlab::testing::random_verbal(rng, 2, 6);
    auto s = widthlab::testing::random_substitution(rng, 2, G, 4);
    const auto u = widthlab::testing::random_word(rng, G, 3);
    const auto v = widthlab::testing::random_word(rng, G, 3);
    s.images[0] = multiply(u, v);
    // substitute x1 -> x1 x3 first, then x1 -> u, x3 -> v
    WordBuilder b(Alphabet::variables(3));
    for (const auto& syl : w.body().syllables()) {
      for (std::int64_t i = 0; i < std::abs(syl.exponent); ++i) {
        const int sign = syl.exponent > 0 ? 1 : -1;
        if (syl.letter == 0 && sign > 0) {
          b.append(SignedLetter{0, 1}).append(SignedLetter{2, 1});
        } else if (syl.letter == 0) {
          b.append(SignedLetter{2, -1}).append(SignedLetter{0, -1});
        } else {
          b.append(SignedLetter{syl.letter, sign});
        }
      }
    }
    const auto expanded = std::move(b).build();
    if (expanded.empty()) {
      continue;
    }
    const Substitution s3{{u, s.images[1], v}};
    CHECK(evaluate(VerbalWord(expanded), s3) == evaluate(w, s));
  }
}

TEST_CASE("W^(l)") {
  const auto sq = V("x1^2");
  auto one = wl_words(sq, 1);
  REQUIRE(one.size() == 2);
  CHECK(format_verbal(one[0]) == "x1^2");
  CHECK(format_verbal(one[1]) == "x1^-2");
  auto two = wl_words(sq, 2);
  REQUIRE(two.size() == 4);
  CHECK(format_verbal(two[0]) == "x1^2 x2^2");
  CHECK(format_verbal(two[1]) == "x1^2 x2^-2");
  for (const auto& u : two) {
    CHECK(u.exponent_gcd() == 2);
  }
  CHECK(distinct_wl_words(sq, 2).size() == 4);
  // [x1,x2]^{-1} is [x2,x1], a renaming of [x1,x2]
  CHECK(distinct_wl_words(V("x1 x2 x1^-1 x2^-1"), 1).size() == 1);
  CHECK(format_verbal(canonical_renaming(V("x2 x1^-1 x2^-1 x1")))
        == "x1 x2^-1 x1^-1 x2");

  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto w = widthlab::testing::random_verbal(rng, 3, 5);
    const auto l = uniform(rng, 1, 4);
    const auto all = wl_words(w, l);
    CHECK(all.size() == (std::size_t{1} << l));
    for (const auto& u : all) {
      CHECK(u.exponent_gcd() == w.exponent_gcd());
      CHECK(u.letter_length() == l * w.letter_length());
    }
  }
}

TEST_CASE("words up to a length") {
  // 1 + 6 (5^L - 1) / 4 reduced words over three letters
  CHECK(words_up_to(G, 0).size() == 1);
  CHECK(words_up_to(G, 1).size() == 7);
  CHECK(words_up_to(G, 3).size() == 187);
  CHECK(words_up_to(G, 4).size() == 937);
  const auto ws = words_up_to(G, 3);
  CHECK(std::set<ReducedWord>(ws.begin(), ws.end()).size() == ws.size());
  CHECK(std::is_sorted(ws.begin(), ws.end()));
}

TEST_CASE("value enumeration") {
  const auto sq = V("x1^2");
  std::vector<std::string> got;
  for (const auto& g : enumerate_values(sq, G, 1)) {
    got.push_back(format_word(g));
  }
  CHECK(got == std::vector<std::string>{"", "b^-2", "b^2", "f0^-2", "f0^2",
                                        "f1^-2", "f1^2"});
  const auto c = V("x1 x2 x1^-1 x2^-1");
  CHECK(enumerate_values(c, G, 0).size() == 1);

  const auto serial = enumerate_value_table(c, G, 2, {}, 1);
  const auto parallel = enumerate_value_table(c, G, 2, {}, 3);
  CHECK(serial.values == parallel.values);
  CHECK(serial.substitutions == parallel.substitutions);
  for (std::size_t i = 0; i < serial.values.size(); ++i) {
    CHECK(evaluate(c, serial.substitutions[i]) == serial.values[i]);
  }
  EnumerationLimits tight;
  tight.max_values = 10;
  CHECK_THROWS_AS(enumerate_values(c, G, 2, tight), Error);
}

TEST_CASE("membership oracle") {
  const auto sq = V("x1^2");
  auto v = membership_oracle(W("b^2"), sq, 1, 1);
  REQUIRE(v.outcome == OracleOutcome::kMember);
  CHECK(evaluate_product(sq, v.factorization, G) == W("b^2"));

  const auto c = V("x1 x2 x1^-1 x2^-1");
  v = membership_oracle(W("b f0 b^-1 f0^-1"), c, 1, 1);
  REQUIRE(v.outcome == OracleOutcome::kMember);
  CHECK(evaluate_product(c, v.factorization, G) == W("b f0 b^-1 f0^-1"));

  for (std::int64_t L = 0; L <= 4; ++L) {
    CHECK(membership_oracle(W("b"), sq, 1, L).outcome
          == OracleOutcome::kNotFoundWithinBound);
  }
  // b^2 f0^2 needs two squares
  CHECK(membership_oracle(W("b^2 f0^2"), sq, 1, 2).outcome
        == OracleOutcome::kNotFoundWithinBound);
  v = membership_oracle(W("b^2 f0^2"), sq, 2, 1);
  REQUIRE(v.outcome == OracleOutcome::kMember);
  CHECK(v.factorization.size() == 2);
  CHECK(evaluate_product(sq, v.factorization, G) == W("b^2 f0^2"));

  v = membership_oracle(W("b f0 b^-1 f0^-1 f1 b f1^-1 b^-1"), c, 2, 1);
  REQUIRE(v.outcome == OracleOutcome::kMember);
  CHECK(evaluate_product(c, v.factorization, G)
        == W("b f0 b^-1 f0^-1 f1 b f1^-1 b^-1"));
}

TEST_CASE("oracle members stay members with one more factor") {
  const auto sq = V("x1^2");
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = widthlab::testing::random_word(rng, G, 1);
    const auto b = widthlab::testing::random_word(rng, G, 1);
    const auto g = multiply(power(a, 2), power(b, -2));
    const auto v2 = membership_oracle(g, sq, 2, 1);
    REQUIRE(v2.outcome == OracleOutcome::kMember);
    CHECK(evaluate_product(sq, v2.factorization, G) == g);
    // the identity is a value, so a width-2 member is a width-3 member
    const auto v3 = membership_oracle(g, sq, 3, 1);
    REQUIRE(v3.outcome == OracleOutcome::kMember);
    CHECK(evaluate_product(sq, v3.factorization, G) == g);
  }
}

}  // TEST_SUITE
