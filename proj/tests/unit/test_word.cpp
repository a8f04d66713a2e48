#include "doctest.h"
#include "generators.hpp"
#include "widthlab/error.hpp"
#include "widthlab/word.hpp"

using namespace widthlab;
using widthlab::testing::Rng;

namespace {

const Alphabet G = Alphabet::group_default();

ReducedWord W(const char* text) { return parse_word(text, G); }

ErrorCode code_of(const char* text) {
  try {
    parse_word(text, G);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse failure for " << text);
  return ErrorCode::kInternal;
}

}  // namespace

TEST_SUITE("word") {

TEST_CASE("parse reduces") {
  CHECK(W("b^2 b^-2").empty());
  CHECK(format_word(W("f0^2 f0^3")) == "f0^5");
  CHECK(format_word(W("b f0 f0^-1 b")) == "b^2");
  CHECK(format_word(W("")) == "");
  CHECK(format_word(W("f1^+3\tb")) == "f1^3 b");
  CHECK(W("b^3 f0^-2").length() == 5);
}

TEST_CASE("parse errors carry a position") {
  CHECK(code_of("b^0") == ErrorCode::kSyntax);
  CHECK(code_of(" b") == ErrorCode::kSyntax);
  CHECK(code_of("b ") == ErrorCode::kSyntax);
  CHECK(code_of("b^") == ErrorCode::kSyntax);
  CHECK(code_of("b^-x") == ErrorCode::kSyntax);
  CHECK(code_of("q") == ErrorCode::kUnknownLetter);
  try {
    parse_word("b f2", G);
    FAIL("accepted an unknown letter");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("exponent overflow is a resource error") {
  CHECK_THROWS_AS(parse_word("b^99999999999999999999", G), Error);
  WordBuilder b(G);
  b.append(Syllable{0, std::numeric_limits<std::int64_t>::max()});
  CHECK_THROWS_AS(b.append(Syllable{0, 1}), Error);
}

TEST_CASE("multiply and invert") {
  CHECK(format_word(multiply(W("b f0"), W("f0^-1 b"))) == "b^2");
  CHECK(format_word(invert(W("b^3 f0^-2"))) == "f0^2 b^-3");
  CHECK(invert(W("")).empty());
  CHECK(format_word(invert(W("f1"))) == "f1^-1");
  const auto u = W("b f0^-7 f1^2 b^-1");
  CHECK(multiply(u, invert(u)).empty());
  CHECK(multiply(W(""), u) == u);
  CHECK(format_word(power(W("f0 b f0^-1"), 5)) == "f0 b^5 f0^-1");
  CHECK(format_word(power(W("b f1"), -2)) == "f1^-1 b^-1 f1^-1 b^-1");
}

TEST_CASE("stack pairing") {
  auto pairs_of = [](std::vector<SignedLetter> letters) {
    return reduce_with_pairing(G, letters);
  };
  // b=0, f0=1, f1=2
  auto r = pairs_of({{0, 1}, {1, 1}, {1, -1}, {0, -1}});
  CHECK(r.word.empty());
  using P = std::pair<std::size_t, std::size_t>;
  CHECK(r.record.pairs == std::vector<P>{{1, 2}, {0, 3}});
  r = pairs_of({{0, 1}, {1, -1}, {1, 1}, {2, 1}});
  CHECK(format_word(r.word) == "b f1");
  CHECK(r.record.pairs == std::vector<P>{{1, 2}});
  CHECK(r.record.survivors == std::vector<std::size_t>{0, 3});
  r = pairs_of({{0, 1}});
  CHECK(r.record.pairs.empty());
}

TEST_CASE("stack pairing is non-crossing and partitions positions") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<SignedLetter> letters;
    const auto n = widthlab::testing::uniform(rng, 0, 30);
    for (int i = 0; i < n; ++i) {
      letters.push_back({static_cast<LetterIndex>(widthlab::testing::uniform(rng, 0, 1)),
                         widthlab::testing::uniform(rng, 0, 1) ? 1 : -1});
    }
    const auto r = reduce_with_pairing(G, letters);
    std::vector<int> seen(letters.size(), 0);
    for (auto s : r.record.survivors) {
      ++seen[s];
    }
    for (const auto& [i, j] : r.record.pairs) {
      REQUIRE(i < j);
      CHECK(letters[i] == letters[j].inverse());
      ++seen[i];
      ++seen[j];
      for (const auto& [a, b] : r.record.pairs) {
        CHECK_FALSE((i < a && a < j && j < b));
      }
    }
    for (int s : seen) {
      CHECK(s == 1);
    }
    CHECK(r.word == ReducedWord::from_letters(G, letters));
    CHECK(static_cast<std::int64_t>(r.record.survivors.size()) == r.word.length());
  }
}

TEST_CASE("cyclic reduction") {
  auto check = [](const char* u, const char* core, const char* conj) {
    const auto cr = cyclic_reduce(W(u));
    CHECK(format_word(cr.core) == core);
    CHECK(format_word(cr.conjugator) == conj);
    CHECK(multiply(multiply(cr.conjugator, cr.core), invert(cr.conjugator))
          == W(u));
  };
  check("f0 b f0^-1", "b", "f0");
  check("b f1", "b f1", "");
  check("f0^2 b f1 f0^-2", "b f1", "f0^2");
  check("b^3 f0 b^-1", "b^2 f0", "b");
  check("", "", "");
}

TEST_CASE("alphabets compare by content") {
  CHECK(Alphabet::group_default() == Alphabet({"b", "f0", "f1"}));
  CHECK_FALSE(Alphabet::variables(2) == Alphabet::group_default());
  CHECK_THROWS_AS(multiply(W("b"), parse_word("x1", Alphabet::variables(1))),
                  Error);
  CHECK_THROWS_AS(Alphabet({"b", "b"}), Error);
}

TEST_CASE("format then parse is the identity") {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto g = widthlab::testing::random_syllabic(
        rng, G, widthlab::testing::uniform(rng, 0, 12), 1000);
    CHECK(parse_word(format_word(g), G) == g);
  }
}

TEST_CASE("ordering is length first") {
  CHECK(W("f1") < W("b^2"));
  CHECK(W("") < W("b"));
  CHECK_FALSE(W("b") < W("b"));
}

}  // TEST_SUITE
