#ifndef WIDTHLAB_WIDTH_HPP_
#define WIDTHLAB_WIDTH_HPP_

// Width lower bounds for proper words in F(b, f0, f1).
//
// Why a certificate is sound. Let g = u(h) for some u in W^(l) (a product of
// l values of w^{±1}, so u has letter length lr) and split g into pieces as
// in modd: g = y_{i_1}^{δ_1} ... y_{i_N}^{δ_N}, N <= (lr+1)^3, every piece's
// signed count divisible by d = e(w), and no cancellation between
// neighbours. In a free group this product is literally the reduced word, so
// each b^{±1}-syllable of g either lies inside one piece occurrence or
// contains one of the N-1 junctions. An occurrence of y with sign +1 adds
// y's inner b-syllables with gap ω to δ_ω and its inner b^{-1}-syllables to
// δ*_ω; sign -1 swaps the kinds and negates ω. Either way the inner
// syllables add (p+ - p-)(A_ω - A*_{-ω}) to Δ_ω, which is ≡ 0 (mod d). A
// syllable spans from one b-block to the next one, so a junction lies inside
// at most one syllable. Hence at most N-1 values of ω pick up a non-inner
// contribution and γ(g) <= N-1 < 6(lr+1)^3 = B(w, l). This holds for every M
// and every g in R; no small-cancellation threshold is needed.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "widthlab/bigpowers.hpp"
#include "widthlab/verbal.hpp"
#include "widthlab/word.hpp"

namespace widthlab {

// 6 (l r + 1)^3, r the letter length of w.
std::int64_t bound_B(const VerbalWord& w, std::int64_t l);

// Sum of the signs of the f0-blocks of a word f0^α1 f1^β1 ... f0^α_{s+1}.
// Throws kMalformedAlternation for anything else (including b letters).
std::int64_t epsilon_of(const ReducedWord& g, const BigPowersTuple& t);

struct Witness {
  ReducedWord element;
  std::int64_t k;
  // Values of w (not of a normalized form) multiplying to `element`.
  std::vector<SignedFactor> factorization;
  std::int64_t expected_gamma;
  // Case 2 only: ε(g_1), ..., ε(g_k).
  std::vector<std::int64_t> epsilons;
};

// h_k = X_1^d ... X_k^d with X_j = f1 (f0 f1)^j b (f1 f0)^j, every exponent M.
// Requires d = e(w) >= 2.
Witness witness_case1(const VerbalWord& w, std::int64_t k,
                      const BigPowersTuple& t);

// w' = renamed, inverted and rotated w with shape x1 ... x2.
struct CommutatorNormalization {
  VerbalWord normalized;
  std::size_t original_variables;
  // For each original variable: index in w' (nullopt if it does not occur in
  // the cyclic core) and the sign it is substituted with.
  std::vector<std::optional<std::size_t>> target;
  std::vector<int> sign;
  // z with w = z w_rot z^{-1}, as a word in the original variables.
  ReducedWord conjugator;

  // A substitution s of w with w(s) = w'(s').
  Substitution pull_back(const Substitution& s_prime) const;
};

// Requires e(w) = 0; throws kCase2Inapplicable if the cyclic core of w
// involves fewer than two variables.
CommutatorNormalization normalize_commutator_word(const VerbalWord& w);

// h_k = B g_1 B g_2 ... B g_k B. Every step of the construction is checked;
// a failed check throws kInternal naming the step.
Witness witness_case2(const VerbalWord& w, std::int64_t k,
                      const BigPowersTuple& t);

inline constexpr const char* kVerdict = "LOWER-BOUND-HOLDS";

struct UpperBound {
  std::int64_t count;
  std::vector<SignedFactor> factors;
};

struct WidthCertificate {
  VerbalWord w;
  std::int64_t l;
  ReducedWord element;
  std::int64_t gamma;
  std::int64_t bound;
  BigPowersTuple tuple;
  std::optional<UpperBound> upper;
};

// Throws kNotInR or kNoCertificate. A supplied factorization is checked to
// multiply to g (kInvalidArgument otherwise).
WidthCertificate certify(const ReducedWord& g, const VerbalWord& w,
                         std::int64_t l, const BigPowersTuple& t,
                         std::optional<std::vector<SignedFactor>> upper = {});

struct WidthResult {
  Witness witness;
  WidthCertificate certificate;
};

// Throws kNotProper when e(w) = 1.
WidthResult produce_width_exceeding(const VerbalWord& w, std::int64_t l,
                                    const BigPowersTuple& t);

// Every value of every u in W^(l) with images of length <= max_length,
// checked against γ <= B(w, l).
struct SweepReport {
  std::uint64_t words = 0;
  std::uint64_t values = 0;
  std::uint64_t in_R = 0;
  std::int64_t max_gamma = 0;
  std::vector<ReducedWord> violations;
};

SweepReport soundness_sweep(const VerbalWord& w, std::int64_t l,
                            std::int64_t max_length, const BigPowersTuple& t,
                            const EnumerationLimits& limits = {},
                            unsigned workers = 1);

}  // namespace widthlab

#endif  // WIDTHLAB_WIDTH_HPP_
