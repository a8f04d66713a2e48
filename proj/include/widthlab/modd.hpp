#ifndef WIDTHLAB_MODD_HPP_
#define WIDTHLAB_MODD_HPP_

// Splits g = w(h_1, ..., h_n) into a cancellation-free product of signed
// pieces y_1^{±1} ... y_N^{±1} in which every piece occurs a multiple of
// d = e(w) times (an inverse occurrence counts -1; for d = 0 the count is 0).
//
// The pieces come from the canonical stack cancellation of the letter
// sequence h_{i_1}^{ε_1} ... h_{i_r}^{ε_r}. Each image is cut wherever the
// cancellation partner of its letters changes, cuts are shared between all
// occurrences of one variable and carried across cancelling stretches until
// stable, and pieces are identified by value up to inversion. Cancelled
// piece occurrences then pair off as y against y^{-1}, and the survivors
// spell g.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "widthlab/verbal.hpp"
#include "widthlab/word.hpp"

namespace widthlab {

struct SignedPiece {
  std::size_t piece;
  int sign;

  friend bool operator==(const SignedPiece&, const SignedPiece&) = default;
};

struct ModDDecomposition {
  std::vector<ReducedWord> pieces;       // distinct, nonempty
  std::vector<SignedPiece> sequence;     // spells g with no cancellation
  std::vector<std::int64_t> piece_counts;  // signed occurrences per piece
  std::int64_t d = 0;
  // Length of the piece sequence before cancelled pairs are removed.
  std::size_t pre_cancellation_length = 0;

  std::size_t N() const noexcept { return sequence.size(); }

  friend bool operator==(const ModDDecomposition&,
                         const ModDDecomposition&) = default;
};

ModDDecomposition decompose(const VerbalWord& w, const Substitution& s);

struct DecompositionCheck {
  bool ok;
  std::string reason;  // empty when ok
};

// Re-checks every invariant from scratch: reconstruction of w(s), no
// cancellation between neighbours, tallies, divisibility, N <= (r+1)^3 and
// s <= n(r+1)^2.
DecompositionCheck check_decomposition(const ModDDecomposition& dec,
                                       const VerbalWord& w,
                                       const Substitution& s);
bool verify_decomposition(const ModDDecomposition& dec, const VerbalWord& w,
                          const Substitution& s);

// Spells the sequence as one word (reducing, in case it was tampered with).
ReducedWord reconstruct(const ModDDecomposition& dec, const Alphabet& alphabet);

}  // namespace widthlab

#endif  // WIDTHLAB_MODD_HPP_
