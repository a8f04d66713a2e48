#ifndef WIDTHLAB_VERBAL_HPP_
#define WIDTHLAB_VERBAL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "widthlab/word.hpp"

namespace widthlab {

// A nontrivial word w(x1, ..., xn) with cached exponent sums t_i and
// e(w) = gcd(t_1, ..., t_n) (0 when every t_i vanishes).
class VerbalWord {
 public:
  // `body` must be nonempty and use a variable alphabet {x1, ..., xn}.
  explicit VerbalWord(ReducedWord body);

  // Parses a word in the letters x1, x2, ...; n is the largest index seen,
  // raised to `min_variables` if that is larger.
  static VerbalWord parse(std::string_view text, std::size_t min_variables = 0);

  const ReducedWord& body() const noexcept { return body_; }
  std::size_t variable_count() const noexcept { return exponent_sums_.size(); }
  std::span<const std::int64_t> exponent_sums() const noexcept {
    return exponent_sums_;
  }
  std::int64_t exponent_gcd() const noexcept { return gcd_; }
  // r, the letter length of w.
  std::int64_t letter_length() const noexcept { return body_.length(); }

  friend bool operator==(const VerbalWord& a, const VerbalWord& b) {
    return a.body_ == b.body_;
  }

 private:
  ReducedWord body_;
  std::vector<std::int64_t> exponent_sums_;
  std::int64_t gcd_ = 0;
};

std::string format_verbal(const VerbalWord& w);

// Images of x1, ..., xn in the group.
struct Substitution {
  std::vector<ReducedWord> images;

  friend bool operator==(const Substitution&, const Substitution&) = default;
};

// "x1=<word>;x2=<word>;..." in any order, each variable exactly once.
Substitution parse_substitution(std::string_view text, std::size_t n,
                                const Alphabet& alphabet);
std::string format_substitution(const Substitution& s);

// One factor w(s)^sign of a product of values.
struct SignedFactor {
  int sign;
  Substitution substitution;
};

// Caps for the bounded enumerations. `max_bytes` approximates the memory
// held by stored values.
struct EnumerationLimits {
  std::uint64_t max_values = 20'000'000;
  std::uint64_t max_bytes = 2ULL << 30;
};

std::int64_t exponent_gcd(const VerbalWord& w);
bool is_proper(const VerbalWord& w);

ReducedWord evaluate(const VerbalWord& w, const Substitution& s);
// Product of w(s_i)^{sign_i} over the factors, in order.
ReducedWord evaluate_product(const VerbalWord& w,
                             std::span<const SignedFactor> factors,
                             const Alphabet& alphabet);

// Images g^{r_i} with sum r_i t_i = e(w), so that w(s) = g^{e(w)}.
// Throws kNoPowerWitness for commutator words.
Substitution power_witness(const VerbalWord& w, const ReducedWord& g);

// Integers r_i with sum r_i t_i = gcd(t).
std::vector<std::int64_t> bezout_coefficients(std::span<const std::int64_t> t);

// All 2^l products w^{±1}(x1..xn) w^{±1}(x_{n+1}..x_{2n}) ..., indexed by the
// sign mask (bit l-1-j set means block j is inverted).
std::vector<VerbalWord> wl_words(const VerbalWord& w, std::int64_t l);
// wl_words with words equal up to renaming of variables collapsed onto the
// first occurrence.
std::vector<VerbalWord> distinct_wl_words(const VerbalWord& w, std::int64_t l);
// Renames variables in order of first appearance.
VerbalWord canonical_renaming(const VerbalWord& w);

// Reduced words of length <= max_length, sorted.
std::vector<ReducedWord> words_up_to(const Alphabet& alphabet,
                                     std::int64_t max_length);

struct ValueTable {
  std::vector<ReducedWord> values;          // sorted, distinct
  std::vector<Substitution> substitutions;  // first witness for each value
};

// {w(s) : every |image| <= max_length}, deduplicated and sorted. The result
// does not depend on `workers`.
std::vector<ReducedWord> enumerate_values(const VerbalWord& w,
                                          const Alphabet& alphabet,
                                          std::int64_t max_length,
                                          const EnumerationLimits& limits = {},
                                          unsigned workers = 1);
ValueTable enumerate_value_table(const VerbalWord& w, const Alphabet& alphabet,
                                 std::int64_t max_length,
                                 const EnumerationLimits& limits = {},
                                 unsigned workers = 1);

enum class OracleOutcome { kMember, kNotFoundWithinBound };

struct OracleVerdict {
  OracleOutcome outcome;
  std::vector<SignedFactor> factorization;  // l factors when kMember
};

// Bounded search for g as a product of l values of w^{±1} whose substitution
// images all have length <= max_length. kMember is always sound;
// kNotFoundWithinBound only speaks about the searched range.
OracleVerdict membership_oracle(const ReducedWord& g, const VerbalWord& w,
                                std::int64_t l, std::int64_t max_length,
                                const EnumerationLimits& limits = {});

}  // namespace widthlab

#endif  // WIDTHLAB_VERBAL_HPP_
