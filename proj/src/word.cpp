#include "widthlab/word.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "widthlab/error.hpp"

namespace widthlab {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t'; }
bool is_alpha(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::int64_t sign_of(std::int64_t v) { return v < 0 ? -1 : 1; }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::kResourceLimit, "exponent overflow");
  }
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::kResourceLimit, "exponent overflow");
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Alphabet
// ---------------------------------------------------------------------------

Alphabet::Alphabet()
    : names_(std::make_shared<const std::vector<std::string>>()) {}

Alphabet::Alphabet(std::vector<std::string> names)
    : names_(std::make_shared<const std::vector<std::string>>(
          std::move(names))) {
  const auto& n = *names_;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i].empty() || !is_alpha(n[i][0])
        || !std::all_of(n[i].begin(), n[i].end(),
                        [](char c) { return is_alpha(c) || is_digit(c); })) {
      throw Error(ErrorCode::kInvalidArgument,
                  "invalid letter name '" + n[i] + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (n[i] == n[j]) {
        throw Error(ErrorCode::kInvalidArgument,
                    "duplicate letter name '" + n[i] + "'");
      }
    }
  }
}

Alphabet Alphabet::group_default() {
  static const Alphabet kDefault({"b", "f0", "f1"});
  return kDefault;
}

Alphabet Alphabet::variables(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    names.push_back("x" + std::to_string(i));
  }
  return Alphabet(std::move(names));
}

std::optional<LetterIndex> Alphabet::index_of(std::string_view name) const {
  const auto& n = *names_;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] == name) {
      return static_cast<LetterIndex>(i);
    }
  }
  return std::nullopt;
}

bool operator==(const Alphabet& a, const Alphabet& b) {
  return a.names_ == b.names_ || *a.names_ == *b.names_;
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (!(a == b)) {
    throw Error(ErrorCode::kAlphabetMismatch,
                "words are over different alphabets");
  }
}

// ---------------------------------------------------------------------------
// ReducedWord
// ---------------------------------------------------------------------------

ReducedWord::ReducedWord(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

ReducedWord ReducedWord::from_syllables(Alphabet alphabet,
                                        std::span<const Syllable> syllables) {
  WordBuilder builder(std::move(alphabet));
  for (const auto& s : syllables) {
    builder.append(s);
  }
  return std::move(builder).build();
}

ReducedWord ReducedWord::from_letters(Alphabet alphabet,
                                      std::span<const SignedLetter> letters) {
  WordBuilder builder(std::move(alphabet));
  for (const auto& l : letters) {
    builder.append(l);
  }
  return std::move(builder).build();
}

ReducedWord ReducedWord::generator(Alphabet alphabet, LetterIndex letter,
                                   std::int64_t exponent) {
  WordBuilder builder(std::move(alphabet));
  builder.append(Syllable{letter, exponent});
  return std::move(builder).build();
}

SignedLetter ReducedWord::first_letter() const {
  const auto& s = syllables_.front();
  return {s.letter, static_cast<int>(sign_of(s.exponent))};
}

SignedLetter ReducedWord::last_letter() const {
  const auto& s = syllables_.back();
  return {s.letter, static_cast<int>(sign_of(s.exponent))};
}

std::vector<SignedLetter> ReducedWord::letters() const {
  std::vector<SignedLetter> out;
  out.reserve(static_cast<std::size_t>(length_));
  for (const auto& s : syllables_) {
    const int sign = static_cast<int>(sign_of(s.exponent));
    for (std::int64_t i = 0; i < std::abs(s.exponent); ++i) {
      out.push_back({s.letter, sign});
    }
  }
  return out;
}

bool operator==(const ReducedWord& a, const ReducedWord& b) {
  return a.length_ == b.length_ && a.syllables_ == b.syllables_
         && a.alphabet_ == b.alphabet_;
}

std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) {
  if (auto c = a.length_ <=> b.length_; c != 0) {
    return c;
  }
  return std::lexicographical_compare_three_way(
      a.syllables_.begin(), a.syllables_.end(), b.syllables_.begin(),
      b.syllables_.end());
}

// ---------------------------------------------------------------------------
// WordBuilder
// ---------------------------------------------------------------------------

WordBuilder::WordBuilder(Alphabet alphabet) : word_(std::move(alphabet)) {}

WordBuilder& WordBuilder::append(Syllable syllable) {
  if (syllable.letter >= word_.alphabet_.size()) {
    throw Error(ErrorCode::kUnknownLetter, "letter index out of range");
  }
  if (syllable.exponent == 0) {
    return *this;
  }
  auto& syl = word_.syllables_;
  if (syl.empty() || syl.back().letter != syllable.letter) {
    syl.push_back(syllable);
    word_.length_ = checked_add(word_.length_, std::abs(syllable.exponent));
    return *this;
  }
  // Same letter at the junction: merge, possibly cancelling down to zero.
  const std::int64_t before = std::abs(syl.back().exponent);
  syl.back().exponent = checked_add(syl.back().exponent, syllable.exponent);
  const std::int64_t after = std::abs(syl.back().exponent);
  word_.length_ += after - before;
  if (syl.back().exponent == 0) {
    syl.pop_back();
  }
  return *this;
}

WordBuilder& WordBuilder::append(const ReducedWord& word) {
  require_same_alphabet(word_.alphabet_, word.alphabet_);
  auto src = word.syllables();
  std::size_t i = 0;
  // Cancellation can only cascade while the builder's tail is consumed.
  while (i < src.size()) {
    const bool cancels = !word_.syllables_.empty()
                         && word_.syllables_.back().letter == src[i].letter;
    append(src[i]);
    ++i;
    if (!cancels) {
      break;
    }
  }
  if (i < src.size()) {
    word_.syllables_.insert(word_.syllables_.end(), src.begin() + i,
                            src.end());
    for (; i < src.size(); ++i) {
      word_.length_ = checked_add(word_.length_, std::abs(src[i].exponent));
    }
  }
  return *this;
}

WordBuilder& WordBuilder::append_inverse(const ReducedWord& word) {
  require_same_alphabet(word_.alphabet_, word.alphabet_);
  auto src = word.syllables();
  for (auto it = src.rbegin(); it != src.rend(); ++it) {
    append(Syllable{it->letter, -it->exponent});
  }
  return *this;
}

WordBuilder& WordBuilder::append_power(const ReducedWord& word,
                                       std::int64_t exponent) {
  if (exponent == 0 || word.empty()) {
    return *this;
  }
  if (exponent == 1) {
    return append(word);
  }
  if (exponent == -1) {
    return append_inverse(word);
  }
  return append(power(word, exponent));
}

ReducedWord WordBuilder::build() && { return std::move(word_); }
ReducedWord WordBuilder::build() const& { return word_; }

// ---------------------------------------------------------------------------
// Grammar
// ---------------------------------------------------------------------------

std::vector<Term> parse_terms(std::string_view text) {
  std::vector<Term> terms;
  std::size_t pos = 0;
  const std::size_t n = text.size();
  if (n == 0) {
    return terms;
  }
  while (true) {
    if (pos >= n || !is_alpha(text[pos])) {
      throw ParseError(ErrorCode::kSyntax, pos, "expected letter");
    }
    Term term{{}, 1, pos};
    const std::size_t name_start = pos;
    while (pos < n && (is_alpha(text[pos]) || is_digit(text[pos]))) {
      ++pos;
    }
    term.name = std::string(text.substr(name_start, pos - name_start));
    if (pos < n && text[pos] == '^') {
      ++pos;
      const std::size_t int_start = pos;
      bool negative = false;
      if (pos < n && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
      }
      const std::size_t digits_start = pos;
      while (pos < n && is_digit(text[pos])) {
        ++pos;
      }
      if (pos == digits_start) {
        throw ParseError(ErrorCode::kSyntax, int_start, "expected integer");
      }
      std::uint64_t magnitude = 0;
      auto [ptr, ec] = std::from_chars(text.data() + digits_start,
                                       text.data() + pos, magnitude);
      (void)ptr;
      if (ec != std::errc()
          || magnitude > static_cast<std::uint64_t>(INT64_MAX)) {
        throw ParseError(ErrorCode::kSyntax, int_start, "exponent overflow");
      }
      if (magnitude == 0) {
        throw ParseError(ErrorCode::kSyntax, int_start, "zero exponent");
      }
      term.exponent = negative ? -static_cast<std::int64_t>(magnitude)
                               : static_cast<std::int64_t>(magnitude);
    }
    terms.push_back(std::move(term));
    if (pos == n) {
      return terms;
    }
    if (!is_space(text[pos])) {
      throw ParseError(ErrorCode::kSyntax, pos, "expected whitespace");
    }
    while (pos < n && is_space(text[pos])) {
      ++pos;
    }
  }
}

ReducedWord parse_word(std::string_view text, const Alphabet& alphabet) {
  WordBuilder builder(alphabet);
  for (const auto& term : parse_terms(text)) {
    auto index = alphabet.index_of(term.name);
    if (!index) {
      throw ParseError(ErrorCode::kUnknownLetter, term.position,
                       "letter '" + term.name + "' not in alphabet");
    }
    builder.append(Syllable{*index, term.exponent});
  }
  return std::move(builder).build();
}

std::string format_word(const ReducedWord& word) {
  std::string out;
  for (const auto& s : word.syllables()) {
    if (!out.empty()) {
      out += ' ';
    }
    out += word.alphabet().name(s.letter);
    if (s.exponent != 1) {
      out += '^';
      out += std::to_string(s.exponent);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Group operations
// ---------------------------------------------------------------------------

ReducedWord multiply(const ReducedWord& u, const ReducedWord& v) {
  require_same_alphabet(u.alphabet(), v.alphabet());
  WordBuilder builder(u.alphabet());
  builder.append(u).append(v);
  return std::move(builder).build();
}

ReducedWord invert(const ReducedWord& u) {
  WordBuilder builder(u.alphabet());
  builder.append_inverse(u);
  return std::move(builder).build();
}

ReducedWord power(const ReducedWord& u, std::int64_t exponent) {
  if (exponent == 0 || u.empty()) {
    return ReducedWord(u.alphabet());
  }
  auto [core, conjugator] = cyclic_reduce(u);
  WordBuilder builder(u.alphabet());
  builder.append(conjugator);
  if (core.syllable_count() == 1) {
    const auto& s = core.syllables().front();
    builder.append(Syllable{s.letter, checked_mul(s.exponent, exponent)});
  } else {
    const ReducedWord base = exponent > 0 ? core : invert(core);
    for (std::int64_t i = 0; i < std::abs(exponent); ++i) {
      builder.append(base);
    }
  }
  builder.append_inverse(conjugator);
  return std::move(builder).build();
}

PairingResult reduce_with_pairing(const Alphabet& alphabet,
                                  std::span<const SignedLetter> letters) {
  std::vector<std::size_t> stack;
  CancellationRecord record;
  for (std::size_t j = 0; j < letters.size(); ++j) {
    if (letters[j].letter >= alphabet.size()) {
      throw Error(ErrorCode::kUnknownLetter, "letter index out of range");
    }
    if (!stack.empty() && letters[stack.back()] == letters[j].inverse()) {
      record.pairs.emplace_back(stack.back(), j);
      stack.pop_back();
    } else {
      stack.push_back(j);
    }
  }
  record.survivors = stack;
  std::vector<SignedLetter> kept;
  kept.reserve(stack.size());
  for (auto i : stack) {
    kept.push_back(letters[i]);
  }
  return {ReducedWord::from_letters(alphabet, kept), std::move(record)};
}

CyclicReduction cyclic_reduce(const ReducedWord& u) {
  std::vector<Syllable> core(u.syllables().begin(), u.syllables().end());
  WordBuilder conjugator(u.alphabet());
  std::size_t lo = 0;
  std::size_t hi = core.size();  // live range [lo, hi)
  while (hi - lo >= 2) {
    auto& first = core[lo];
    auto& last = core[hi - 1];
    if (first.letter != last.letter
        || sign_of(first.exponent) == sign_of(last.exponent)) {
      break;
    }
    const std::int64_t peel
        = std::min(std::abs(first.exponent), std::abs(last.exponent));
    const std::int64_t s = sign_of(first.exponent);
    conjugator.append(Syllable{first.letter, s * peel});
    first.exponent -= s * peel;
    last.exponent += s * peel;
    if (first.exponent == 0) {
      ++lo;
    }
    if (last.exponent == 0) {
      --hi;
    }
  }
  auto core_word = ReducedWord::from_syllables(
      u.alphabet(), std::span<const Syllable>(core).subspan(lo, hi - lo));
  return {std::move(core_word), std::move(conjugator).build()};
}

}  // namespace widthlab

std::size_t std::hash<widthlab::ReducedWord>::operator()(
    const widthlab::ReducedWord& w) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& s : w.syllables()) {
    h ^= std::hash<std::uint64_t>{}(
             (static_cast<std::uint64_t>(s.letter) << 48)
             ^ static_cast<std::uint64_t>(s.exponent))
         + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}
