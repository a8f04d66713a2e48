#ifndef WIDTHLAB_WORD_HPP_
#define WIDTHLAB_WORD_HPP_

// Exact free-group arithmetic. Words are kept in syllable (run-length) form
// so that powers with very large exponents cost one entry each.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace widthlab {

using LetterIndex = std::uint32_t;

// A finite ordered set of letter names. Copies share storage; equality is by
// content, so two independently built {b, f0, f1} alphabets compare equal.
class Alphabet {
 public:
  Alphabet();
  explicit Alphabet(std::vector<std::string> names);

  // {b, f0, f1}
  static Alphabet group_default();
  // {x1, ..., xn}
  static Alphabet variables(std::size_t n);

  std::size_t size() const noexcept { return names_->size(); }
  const std::string& name(LetterIndex i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const noexcept { return *names_; }
  std::optional<LetterIndex> index_of(std::string_view name) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b);

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

struct Syllable {
  LetterIndex letter;
  std::int64_t exponent;  // never zero inside a ReducedWord

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// One letter of the expanded view, a^{+1} or a^{-1}.
struct SignedLetter {
  LetterIndex letter;
  int sign;

  SignedLetter inverse() const { return {letter, -sign}; }
  friend bool operator==(const SignedLetter&, const SignedLetter&) = default;
};

// A freely reduced word: adjacent syllables carry distinct letters and every
// exponent is nonzero. The empty word is the identity.
class ReducedWord {
 public:
  explicit ReducedWord(Alphabet alphabet);

  // Reduces an arbitrary syllable list (zero exponents allowed, adjacent
  // letters may repeat or cancel).
  static ReducedWord from_syllables(Alphabet alphabet,
                                    std::span<const Syllable> syllables);
  static ReducedWord from_letters(Alphabet alphabet,
                                  std::span<const SignedLetter> letters);
  static ReducedWord generator(Alphabet alphabet, LetterIndex letter,
                               std::int64_t exponent = 1);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::span<const Syllable> syllables() const noexcept { return syllables_; }
  std::size_t syllable_count() const noexcept { return syllables_.size(); }
  bool empty() const noexcept { return syllables_.empty(); }
  // Geodesic length |g|: the sum of |exponent| over syllables.
  std::int64_t length() const noexcept { return length_; }

  SignedLetter first_letter() const;
  SignedLetter last_letter() const;

  // Letter-by-letter view; only meant for words of modest length.
  std::vector<SignedLetter> letters() const;

  friend bool operator==(const ReducedWord& a, const ReducedWord& b);
  // Shortlex-style total order: length first, then syllables.
  friend std::strong_ordering operator<=>(const ReducedWord& a,
                                          const ReducedWord& b);

 private:
  friend class WordBuilder;

  Alphabet alphabet_;
  std::vector<Syllable> syllables_;
  std::int64_t length_ = 0;
};

// Accumulates a product in place, reducing at the right end as it goes.
class WordBuilder {
 public:
  explicit WordBuilder(Alphabet alphabet);

  WordBuilder& append(Syllable syllable);
  WordBuilder& append(SignedLetter letter) {
    return append(Syllable{letter.letter, letter.sign});
  }
  WordBuilder& append(const ReducedWord& word);
  WordBuilder& append_inverse(const ReducedWord& word);
  // Appends word^exponent.
  WordBuilder& append_power(const ReducedWord& word, std::int64_t exponent);

  std::int64_t length() const noexcept { return word_.length_; }
  const ReducedWord& peek() const noexcept { return word_; }
  ReducedWord build() &&;
  ReducedWord build() const&;

 private:
  ReducedWord word_;
};

// Records how a letter sequence cancels down to its reduced form.
// Positions are indices into the unreduced sequence.
struct CancellationRecord {
  std::vector<std::size_t> survivors;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (i, j), i < j
};

struct PairingResult {
  ReducedWord word;
  CancellationRecord record;
};

struct CyclicReduction {
  ReducedWord core;
  ReducedWord conjugator;  // input = conjugator * core * conjugator^-1
};

// One syntactic term of the word grammar, before alphabet lookup.
struct Term {
  std::string name;
  std::int64_t exponent;
  std::size_t position;
};

// Tokenizes `word := term (WS term)* | ""`. Throws ParseError.
std::vector<Term> parse_terms(std::string_view text);

ReducedWord parse_word(std::string_view text, const Alphabet& alphabet);
// Canonical form: syllables separated by single spaces, exponent omitted
// when it is 1. The identity formats as "".
std::string format_word(const ReducedWord& word);

ReducedWord multiply(const ReducedWord& u, const ReducedWord& v);
ReducedWord invert(const ReducedWord& u);
ReducedWord power(const ReducedWord& u, std::int64_t exponent);

// Stack pairing: scanning left to right, each letter cancels the nearest
// unmatched inverse immediately to its left. The pairing is non-crossing.
PairingResult reduce_with_pairing(const Alphabet& alphabet,
                                  std::span<const SignedLetter> letters);

CyclicReduction cyclic_reduce(const ReducedWord& u);

// Throws kAlphabetMismatch unless both alphabets agree.
void require_same_alphabet(const Alphabet& a, const Alphabet& b);

}  // namespace widthlab

template <>
struct std::hash<widthlab::ReducedWord> {
  std::size_t operator()(const widthlab::ReducedWord& w) const noexcept;
};

#endif  // WIDTHLAB_WORD_HPP_
