#include "widthlab/modd.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "widthlab/error.hpp"

namespace widthlab {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Occurrence {
  std::size_t variable;
  int sign;
  std::size_t start;  // offset in the letter sequence
  std::size_t length;
};

std::int64_t cube(std::int64_t x) { return x * x * x; }

}  // namespace

ModDDecomposition decompose(const VerbalWord& w, const Substitution& s) {
  const std::size_t n = w.variable_count();
  if (s.images.size() != n) {
    throw Error(ErrorCode::kArityMismatch, "substitution arity differs from w");
  }
  const Alphabet& alphabet = s.images.front().alphabet();
  std::vector<std::vector<SignedLetter>> image_letters(n);
  for (std::size_t v = 0; v < n; ++v) {
    require_same_alphabet(alphabet, s.images[v].alphabet());
    image_letters[v] = s.images[v].letters();
  }

  // Letter sequence h_{i_1}^{ε_1} ... h_{i_r}^{ε_r}.
  std::vector<Occurrence> occurrences;
  std::vector<SignedLetter> letters;
  std::vector<std::size_t> occurrence_of;
  for (const auto& syl : w.body().syllables()) {
    const int sign = syl.exponent > 0 ? 1 : -1;
    const auto& h = image_letters[syl.letter];
    for (std::int64_t rep = 0; rep < std::abs(syl.exponent); ++rep) {
      occurrences.push_back({syl.letter, sign, letters.size(), h.size()});
      if (sign > 0) {
        letters.insert(letters.end(), h.begin(), h.end());
      } else {
        for (auto it = h.rbegin(); it != h.rend(); ++it) {
          letters.push_back(it->inverse());
        }
      }
      occurrence_of.resize(letters.size(), occurrences.size() - 1);
    }
  }

  const auto pairing = reduce_with_pairing(alphabet, letters);
  std::vector<std::size_t> partner(letters.size(), kNone);
  for (const auto& [i, j] : pairing.record.pairs) {
    partner[i] = j;
    partner[j] = i;
  }
  auto region = [&](std::size_t pos) {
    return partner[pos] == kNone ? kNone : occurrence_of[partner[pos]];
  };

  // Cuts per variable, in coordinates of h_ν (1 .. |h_ν| - 1).
  std::vector<std::set<std::size_t>> cuts(n);
  std::vector<std::vector<std::size_t>> occurrences_of_variable(n);
  for (std::size_t j = 0; j < occurrences.size(); ++j) {
    occurrences_of_variable[occurrences[j].variable].push_back(j);
  }
  std::vector<std::pair<std::size_t, std::size_t>> worklist;

  // `boundary` separates letters boundary - 1 and boundary of one occurrence.
  auto add_cut = [&](std::size_t boundary) {
    const auto& occ = occurrences[occurrence_of[boundary]];
    const std::size_t local = boundary - occ.start;
    const std::size_t c = occ.sign > 0 ? local : occ.length - local;
    if (cuts[occ.variable].insert(c).second) {
      worklist.emplace_back(occ.variable, c);
    }
  };

  for (const auto& occ : occurrences) {
    for (std::size_t q = 1; q < occ.length; ++q) {
      const std::size_t b = occ.start + q;
      if (region(b - 1) != region(b)) {
        add_cut(b);
      }
    }
  }
  while (!worklist.empty()) {
    const auto [variable, c] = worklist.back();
    worklist.pop_back();
    for (auto j : occurrences_of_variable[variable]) {
      const auto& occ = occurrences[j];
      const std::size_t b = occ.start + (occ.sign > 0 ? c : occ.length - c);
      const std::size_t left = partner[b - 1];
      const std::size_t right = partner[b];
      // Nested pairs: the partners of b - 1 and b sit side by side in
      // reverse order, and the same cut is needed between them.
      if (left != kNone && right != kNone
          && occurrence_of[left] == occurrence_of[right] && left == right + 1) {
        add_cut(left);
      }
    }
  }

  // Pieces, identified by value up to inversion, oriented as first seen.
  ModDDecomposition dec;
  dec.d = w.exponent_gcd();
  std::unordered_map<ReducedWord, std::pair<std::size_t, int>> lookup;
  // For each variable: (piece, orientation, start, end) in h_ν coordinates.
  struct Slice {
    std::size_t piece;
    int orientation;
    std::size_t begin;
    std::size_t end;
  };
  std::vector<std::vector<Slice>> slices(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& h = image_letters[v];
    if (h.empty()) {
      continue;
    }
    std::vector<std::size_t> points{0};
    points.insert(points.end(), cuts[v].begin(), cuts[v].end());
    points.push_back(h.size());
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
      const auto begin = points[k];
      const auto end = points[k + 1];
      ReducedWord y = ReducedWord::from_letters(
          alphabet, std::span<const SignedLetter>(h).subspan(begin, end - begin));
      std::size_t piece;
      int orientation;
      if (auto it = lookup.find(y); it != lookup.end()) {
        std::tie(piece, orientation) = it->second;
      } else {
        piece = dec.pieces.size();
        orientation = 1;
        lookup.emplace(invert(y), std::make_pair(piece, -1));
        lookup.emplace(y, std::make_pair(piece, 1));
        dec.pieces.push_back(std::move(y));
      }
      slices[v].push_back({piece, orientation, begin, end});
    }
  }

  // Piece occurrences along the letter sequence.
  struct Placed {
    SignedPiece entry;
    std::size_t begin;  // global letter range [begin, end)
    std::size_t end;
  };
  std::vector<Placed> placed;
  for (const auto& occ : occurrences) {
    const auto& sl = slices[occ.variable];
    if (occ.sign > 0) {
      for (const auto& x : sl) {
        placed.push_back({{x.piece, x.orientation},
                          occ.start + x.begin,
                          occ.start + x.end});
      }
    } else {
      for (auto it = sl.rbegin(); it != sl.rend(); ++it) {
        placed.push_back({{it->piece, -it->orientation},
                          occ.start + occ.length - it->end,
                          occ.start + occ.length - it->begin});
      }
    }
  }
  dec.pre_cancellation_length = placed.size();

  std::unordered_map<std::size_t, std::size_t> placed_at;  // begin -> index
  for (std::size_t k = 0; k < placed.size(); ++k) {
    placed_at[placed[k].begin] = k;
  }
  dec.piece_counts.assign(dec.pieces.size(), 0);
  for (const auto& p : placed) {
    const bool survives = partner[p.begin] == kNone;
    for (std::size_t pos = p.begin; pos < p.end; ++pos) {
      if ((partner[pos] == kNone) != survives) {
        throw Error(ErrorCode::kInternal, "piece straddles a cancellation");
      }
    }
    if (survives) {
      dec.sequence.push_back(p.entry);
      dec.piece_counts[p.entry.piece] += p.entry.sign;
      continue;
    }
    // The cancelling partner must be the inverse occurrence of the same piece.
    const std::size_t mate_begin = partner[p.end - 1];
    auto it = placed_at.find(mate_begin);
    if (it == placed_at.end() || placed[it->second].end != partner[p.begin] + 1
        || placed[it->second].entry.piece != p.entry.piece
        || placed[it->second].entry.sign != -p.entry.sign) {
      throw Error(ErrorCode::kInternal, "cancelled piece has no inverse mate");
    }
  }
  return dec;
}

ReducedWord reconstruct(const ModDDecomposition& dec, const Alphabet& alphabet) {
  WordBuilder b(alphabet);
  for (const auto& e : dec.sequence) {
    if (e.sign > 0) {
      b.append(dec.pieces.at(e.piece));
    } else {
      b.append_inverse(dec.pieces.at(e.piece));
    }
  }
  return std::move(b).build();
}

DecompositionCheck check_decomposition(const ModDDecomposition& dec,
                                       const VerbalWord& w,
                                       const Substitution& s) {
  auto fail = [](std::string why) { return DecompositionCheck{false, why}; };
  const ReducedWord g = evaluate(w, s);
  const Alphabet& alphabet = g.alphabet();

  for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
    if (dec.pieces[i].empty()) {
      return fail("empty piece");
    }
    if (!(dec.pieces[i].alphabet() == alphabet)) {
      return fail("piece over a foreign alphabet");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (dec.pieces[i] == dec.pieces[j]) {
        return fail("repeated piece");
      }
    }
  }
  std::vector<std::int64_t> tally(dec.pieces.size(), 0);
  std::int64_t spelled = 0;
  for (std::size_t k = 0; k < dec.sequence.size(); ++k) {
    const auto& e = dec.sequence[k];
    if (e.piece >= dec.pieces.size() || (e.sign != 1 && e.sign != -1)) {
      return fail("malformed sequence entry");
    }
    tally[e.piece] += e.sign;
    spelled += dec.pieces[e.piece].length();
    if (k + 1 < dec.sequence.size()) {
      const auto& next = dec.sequence[k + 1];
      if (next.piece >= dec.pieces.size()) {
        return fail("malformed sequence entry");
      }
      const auto& y = dec.pieces[e.piece];
      const auto& z = dec.pieces[next.piece];
      const SignedLetter tail = e.sign > 0 ? y.last_letter()
                                           : y.first_letter().inverse();
      const SignedLetter head = next.sign > 0 ? z.first_letter()
                                              : z.last_letter().inverse();
      if (tail == head.inverse()) {
        return fail("cancellation between neighbours " + std::to_string(k));
      }
    }
  }
  const ReducedWord product = reconstruct(dec, alphabet);
  if (!(product == g)) {
    return fail("sequence does not spell w(s)");
  }
  if (product.length() != spelled) {
    return fail("sequence is not cancellation-free");
  }
  if (tally != dec.piece_counts) {
    return fail("piece counts do not match the sequence");
  }
  if (dec.d != w.exponent_gcd()) {
    return fail("modulus differs from e(w)");
  }
  for (auto c : dec.piece_counts) {
    if (dec.d == 0 ? c != 0 : c % dec.d != 0) {
      return fail("piece count not divisible by d");
    }
  }
  const std::int64_t r = w.letter_length();
  if (static_cast<std::int64_t>(dec.N()) > cube(r + 1)) {
    return fail("N exceeds (r+1)^3");
  }
  if (static_cast<std::int64_t>(dec.pieces.size())
      > static_cast<std::int64_t>(w.variable_count()) * (r + 1) * (r + 1)) {
    return fail("piece count exceeds n(r+1)^2");
  }
  return {true, {}};
}

bool verify_decomposition(const ModDDecomposition& dec, const VerbalWord& w,
                          const Substitution& s) {
  return check_decomposition(dec, w, s).ok;
}

}  // namespace widthlab
