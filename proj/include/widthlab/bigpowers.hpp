#ifndef WIDTHLAB_BIGPOWERS_HPP_
#define WIDTHLAB_BIGPOWERS_HPP_

// Big-powers products g_1^{m_1} ... g_k^{m_k} over D = {b, f0, f1}^{±1}.
// With b, f0, f1 taken as distinct free basis letters the product is already
// a reduced word, so its factor sequence is just its syllable sequence.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "widthlab/word.hpp"

namespace widthlab {

enum class Generator : std::uint8_t { kB = 0, kF0 = 1, kF1 = 2 };

// One of b^{±1}, f0^{±1}, f1^{±1}.
struct Base {
  Generator generator;
  int sign;

  friend bool operator==(const Base&, const Base&) = default;
};

struct Factor {
  Base base;
  std::int64_t power;  // m >= 1

  friend bool operator==(const Factor&, const Factor&) = default;
};

class BigPowersTuple {
 public:
  explicit BigPowersTuple(std::int64_t big_power = 1, std::string b = "b",
                          std::string f0 = "f0", std::string f1 = "f1");

  // The alphabet {b, f0, f1} in that order.
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::int64_t big_power() const noexcept { return big_power_; }
  const std::string& name(Generator g) const {
    return alphabet_.name(static_cast<LetterIndex>(g));
  }
  LetterIndex letter(Generator g) const { return static_cast<LetterIndex>(g); }

  friend bool operator==(const BigPowersTuple&, const BigPowersTuple&) = default;

 private:
  Alphabet alphabet_;
  std::int64_t big_power_;  // M
};

class BigPowersProduct {
 public:
  // Throws kInvalidArgument if k = 0, some m < 1, or consecutive bases are
  // equal or mutually inverse.
  BigPowersProduct(BigPowersTuple tuple, std::vector<Factor> factors);

  const BigPowersTuple& tuple() const noexcept { return tuple_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return factors_.size(); }
  // All m_i >= M.
  bool in_R() const;

  friend bool operator==(const BigPowersProduct&,
                         const BigPowersProduct&) = default;

 private:
  BigPowersTuple tuple_;
  std::vector<Factor> factors_;
};

ReducedWord to_word(const BigPowersProduct& p);
BigPowersProduct invert(const BigPowersProduct& p);

// The unique factor sequence of g; nullopt for the identity. Throws
// kAlphabetMismatch if g is not over the tuple's alphabet.
std::optional<BigPowersProduct> parse_big_powers(const ReducedWord& g,
                                                 const BigPowersTuple& t);
// As above but throws kNotInR unless g is a product with every m_i >= M.
BigPowersProduct parse_in_R(const ReducedWord& g, const BigPowersTuple& t);

std::string format_base(const Base& base, const BigPowersTuple& t);

// left * core * right, with the padding words short and the interior
// exponents of the core large.
struct PaddedProduct {
  ReducedWord left;
  BigPowersProduct core;
  ReducedWord right;
};

enum class MatchOption {
  kA,      // (g_2..g_{k-1}) = (g'_2..g'_{l-1})
  kB,      // (g_2..g_{k-1}) = (g'_2..g'_l)
  kC,      // (g_2..g_{k-1}) = (g'_1..g'_{l-1})
  kD,      // (g_2..g_{k-1}) = (g'_1..g'_l)
  kOther,  // aligned, but v's window starts at g'_3 or ends at g'_{l-2}
};

char option_letter(MatchOption option);

struct MatchReport {
  MatchOption option;
  // alignment[i] is the 0-based factor of v that carries u's interior factor
  // i + 1 (so alignment[0] is the partner of g_2).
  std::vector<std::size_t> alignment;
  // Bases read off the reduced word at the positions of each interior.
  std::vector<Base> recovered_u;
  std::vector<Base> recovered_v;
  // Whether the index lists (g'_1, g'_3, ..., g'_{l-1}) resp.
  // (g'_1, g'_3, ..., g'_l), read literally, also equal u's interior.
  bool literal_c = false;
  bool literal_d = false;
};

// Relates the interior factor sequences of two presentations of one element.
// Requires |padding| <= K, interior exponents >= M and M > 2K + 1; throws
// kPreconditionViolation otherwise and kNoMatch if u != v as elements.
MatchReport match_modulo_padding(const PaddedProduct& u, const PaddedProduct& v,
                                 std::int64_t max_padding,
                                 const BigPowersTuple& t);

}  // namespace widthlab

#endif  // WIDTHLAB_BIGPOWERS_HPP_
