#ifndef WIDTHLAB_GAPS_HPP_
#define WIDTHLAB_GAPS_HPP_

// b-syllables and their gaps. A b-syllable is a stretch
//   b^{m} g_{μ+1}^{m_{μ+1}} ... g_{μ+ν}^{m_{μ+ν}} b^{m'}
// between two consecutive b-blocks of the same sign; its gap ω counts the
// interior f0-blocks with sign (f1-blocks count 0). δ_ω and δ*_ω count b-
// and b^{-1}-syllables with gap ω, Δ_ω = δ_ω - δ*_{-ω}, and γ(x, d) is the
// number of ω with Δ_ω ≢ 0 (mod d), where d = 0 means Δ_ω ≠ 0.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "widthlab/bigpowers.hpp"

namespace widthlab {

enum class SyllableKind { kB, kBInverse };

struct GapSyllable {
  SyllableKind kind;
  std::size_t first_factor;  // the bounding b^{±1} blocks
  std::size_t last_factor;
  std::int64_t omega;

  friend bool operator==(const GapSyllable&, const GapSyllable&) = default;
};

// Left to right; neighbouring syllables of one kind share a bounding block.
std::vector<GapSyllable> extract_syllables(const BigPowersProduct& p);

class GapProfile {
 public:
  GapProfile(const BigPowersProduct& p, std::int64_t d);

  std::int64_t modulus() const noexcept { return d_; }
  // Sparse maps; absent keys are 0.
  const std::map<std::int64_t, std::int64_t>& delta_map() const noexcept {
    return delta_;
  }
  const std::map<std::int64_t, std::int64_t>& delta_star_map() const noexcept {
    return delta_star_;
  }

  std::int64_t delta(std::int64_t omega) const;
  std::int64_t delta_star(std::int64_t omega) const;
  std::int64_t Delta(std::int64_t omega) const;

  // Every ω with Δ_ω ≠ 0, with its value.
  std::map<std::int64_t, std::int64_t> nonzero_Delta() const;
  // The ω counted by γ, with Δ_ω.
  std::map<std::int64_t, std::int64_t> counted_Delta() const;
  std::int64_t gamma() const;
  std::size_t syllable_count() const noexcept { return syllables_; }

 private:
  std::map<std::int64_t, std::int64_t> delta_;
  std::map<std::int64_t, std::int64_t> delta_star_;
  std::int64_t d_;
  std::size_t syllables_ = 0;
};

std::int64_t delta(const BigPowersProduct& p, std::int64_t omega);
std::int64_t delta_star(const BigPowersProduct& p, std::int64_t omega);
std::int64_t Delta(const BigPowersProduct& p, std::int64_t omega);
std::int64_t gamma(const BigPowersProduct& p, std::int64_t d);

// Whether Δ counts toward γ under modulus d.
bool counts_toward_gamma(std::int64_t Delta, std::int64_t d);

}  // namespace widthlab

#endif  // WIDTHLAB_GAPS_HPP_
