#include "widthlab/width.hpp"

#include <cstdlib>
#include <deque>
#include <limits>

#include "widthlab/error.hpp"
#include "widthlab/gaps.hpp"

namespace widthlab {

namespace {

// word(images), where word is over variables and may be empty.
void append_substituted(WordBuilder& out, const ReducedWord& word,
                        const std::vector<ReducedWord>& images) {
  for (const auto& syl : word.syllables()) {
    out.append_power(images.at(syl.letter), syl.exponent);
  }
}

ReducedWord substituted(const ReducedWord& word,
                        const std::vector<ReducedWord>& images,
                        const Alphabet& alphabet) {
  WordBuilder b(alphabet);
  append_substituted(b, word, images);
  return std::move(b).build();
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::kResourceLimit, "integer overflow");
  }
  return out;
}

void require_positive(std::int64_t x, const char* name) {
  if (x < 1) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must be >= 1");
  }
}

[[noreturn]] void step_failed(std::int64_t i, const std::string& what) {
  throw Error(ErrorCode::kInternal,
              "case 2 construction, step " + std::to_string(i) + ": " + what);
}

}  // namespace

std::int64_t bound_B(const VerbalWord& w, std::int64_t l) {
  require_positive(l, "l");
  const std::int64_t base = checked_mul(l, w.letter_length()) + 1;
  return checked_mul(6, checked_mul(base, checked_mul(base, base)));
}

std::int64_t epsilon_of(const ReducedWord& g, const BigPowersTuple& t) {
  require_same_alphabet(g.alphabet(), t.alphabet());
  const auto syl = g.syllables();
  const LetterIndex f0 = t.letter(Generator::kF0);
  const LetterIndex f1 = t.letter(Generator::kF1);
  if (syl.empty() || syl.front().letter != f0 || syl.back().letter != f0) {
    throw Error(ErrorCode::kMalformedAlternation,
                "expected f0-powers at both ends");
  }
  std::int64_t eps = 0;
  for (std::size_t i = 0; i < syl.size(); ++i) {
    const LetterIndex expected = i % 2 == 0 ? f0 : f1;
    if (syl[i].letter != expected) {
      throw Error(ErrorCode::kMalformedAlternation,
                  "f0- and f1-powers do not alternate");
    }
    if (expected == f0) {
      eps += syl[i].exponent > 0 ? 1 : -1;
    }
  }
  return eps;
}

Witness witness_case1(const VerbalWord& w, std::int64_t k,
                      const BigPowersTuple& t) {
  require_positive(k, "k");
  const std::int64_t d = w.exponent_gcd();
  if (d < 2) {
    throw Error(ErrorCode::kInvalidArgument, "case 1 needs e(w) >= 2");
  }
  const std::int64_t M = t.big_power();
  const LetterIndex b = t.letter(Generator::kB);
  const LetterIndex f0 = t.letter(Generator::kF0);
  const LetterIndex f1 = t.letter(Generator::kF1);

  Witness out{ReducedWord(t.alphabet()), k, {}, 2 * k - 1, {}};
  WordBuilder h(t.alphabet());
  for (std::int64_t j = 1; j <= k; ++j) {
    std::vector<Syllable> x{{f1, M}};
    for (std::int64_t q = 0; q < j; ++q) {
      x.push_back({f0, M});
      x.push_back({f1, M});
    }
    x.push_back({b, M});
    for (std::int64_t q = 0; q < j; ++q) {
      x.push_back({f1, M});
      x.push_back({f0, M});
    }
    const ReducedWord X = ReducedWord::from_syllables(t.alphabet(), x);
    h.append_power(X, d);
    out.factorization.push_back({1, power_witness(w, X)});
  }
  out.element = std::move(h).build();
  return out;
}

Substitution CommutatorNormalization::pull_back(
    const Substitution& s_prime) const {
  if (s_prime.images.size() != normalized.variable_count()) {
    throw Error(ErrorCode::kArityMismatch, "substitution arity differs from w'");
  }
  const Alphabet& alphabet = s_prime.images.front().alphabet();
  std::vector<ReducedWord> hat(original_variables, ReducedWord(alphabet));
  for (std::size_t v = 0; v < original_variables; ++v) {
    if (target[v]) {
      hat[v] = sign[v] > 0 ? s_prime.images[*target[v]]
                           : invert(s_prime.images[*target[v]]);
    }
  }
  // w(hat) = Z w'(s') Z^{-1}; conjugating every image by Z^{-1} removes Z.
  const ReducedWord Z = substituted(conjugator, hat, alphabet);
  Substitution s;
  for (const auto& x : hat) {
    WordBuilder b(alphabet);
    b.append_inverse(Z).append(x).append(Z);
    s.images.push_back(std::move(b).build());
  }
  return s;
}

CommutatorNormalization normalize_commutator_word(const VerbalWord& w) {
  if (w.exponent_gcd() != 0) {
    throw Error(ErrorCode::kInvalidArgument, "expected a commutator word");
  }
  const auto [core, c] = cyclic_reduce(w.body());
  const auto letters = core.letters();
  const std::size_t r = letters.size();

  // Rotate to the first position whose cyclic predecessor is another variable.
  std::size_t p = r;
  for (std::size_t q = 0; q < r; ++q) {
    if (letters[(q + r - 1) % r].letter != letters[q].letter) {
      p = q;
      break;
    }
  }
  if (p == r) {
    throw Error(ErrorCode::kCase2Inapplicable,
                "the cyclic core involves a single variable");
  }
  std::vector<SignedLetter> rotated(letters.begin() + p, letters.end());
  rotated.insert(rotated.end(), letters.begin(), letters.begin() + p);
  WordBuilder z(w.body().alphabet());
  z.append(c);
  for (std::size_t q = 0; q < p; ++q) {
    z.append(letters[q]);
  }

  const std::size_t n = w.variable_count();
  std::vector<std::optional<std::size_t>> target(n);
  std::vector<int> sign(n, 1);
  const auto first = rotated.front();
  const auto last = rotated.back();
  target[first.letter] = 0;
  sign[first.letter] = first.sign;
  target[last.letter] = 1;
  sign[last.letter] = last.sign;
  std::size_t next = 2;
  for (const auto& x : rotated) {
    if (!target[x.letter]) {
      target[x.letter] = next++;
    }
  }
  // Substituting x_v -> y_{target}^{sign} in w_rot gives w'.
  std::vector<SignedLetter> renamed;
  renamed.reserve(r);
  for (const auto& x : rotated) {
    renamed.push_back({static_cast<LetterIndex>(*target[x.letter]),
                       x.sign * sign[x.letter]});
  }
  VerbalWord normalized(
      ReducedWord::from_letters(Alphabet::variables(next), renamed));
  return {std::move(normalized), n, std::move(target), std::move(sign),
          std::move(z).build()};
}

Witness witness_case2(const VerbalWord& w, std::int64_t k,
                      const BigPowersTuple& t) {
  require_positive(k, "k");
  if (w.exponent_gcd() != 0) {
    throw Error(ErrorCode::kInvalidArgument, "case 2 needs e(w) = 0");
  }
  const CommutatorNormalization norm = normalize_commutator_word(w);
  const ReducedWord& wp = norm.normalized.body();
  const auto n = static_cast<std::int64_t>(norm.normalized.variable_count());
  const std::int64_t M = t.big_power();
  const Alphabet& alphabet = t.alphabet();
  const LetterIndex b = t.letter(Generator::kB);
  const LetterIndex f0 = t.letter(Generator::kF0);
  const LetterIndex f1 = t.letter(Generator::kF1);

  // Images X_{i1}^{-1}, X_{i2}, ..., X_{in} and Y_1, ..., Y_n.
  auto v_images = [&](std::int64_t i) {
    std::vector<ReducedWord> images;
    for (std::int64_t j = 1; j <= n; ++j) {
      const std::int64_t a = checked_mul(checked_mul(i, n), M) + (j - 1) * M;
      const std::int64_t s = j == 1 ? -1 : 1;
      const Syllable x[] = {{f0, s * a}, {f1, s * M}, {f0, s * a}};
      images.push_back(ReducedWord::from_syllables(alphabet, x));
    }
    return images;
  };
  std::vector<ReducedWord> y_images;
  for (std::int64_t j = 1; j <= n; ++j) {
    const Syllable y[] = {{b, j * M}, {f1, M}, {b, j * M}};
    y_images.push_back(ReducedWord::from_syllables(alphabet, y));
  }
  const ReducedWord B = substituted(wp, y_images, alphabet);

  Witness out{ReducedWord(alphabet), k, {}, k, {}};
  auto factor_for = [&](std::vector<ReducedWord> images) {
    return SignedFactor{1, norm.pull_back(Substitution{std::move(images)})};
  };
  const SignedFactor B_factor = factor_for(y_images);

  WordBuilder h(alphabet);
  h.append(B);
  out.factorization.push_back(B_factor);
  ReducedWord g(alphabet);
  std::deque<std::int64_t> order;  // which v_i make up g_i, left to right
  for (std::int64_t i = 1; i <= k; ++i) {
    const ReducedWord v = substituted(wp, v_images(i), alphabet);
    if (i == 1) {
      g = v;
      order.push_back(1);
    } else if (out.epsilons.back() > 0) {
      g = multiply(v, g);
      order.push_front(i);
    } else {
      g = multiply(g, v);
      order.push_back(i);
    }
    std::int64_t eps;
    try {
      eps = epsilon_of(g, t);
    } catch (const Error& e) {
      step_failed(i, e.what());
    }
    if (eps == 0) {
      step_failed(i, "ε(g_i) = 0");
    }
    const auto syl = g.syllables();
    if (syl.front().exponent >= 0 || syl.back().exponent <= 0) {
      step_failed(i, "g_i must open with f0^- and close with f0^+");
    }
    if (!out.epsilons.empty() && std::abs(eps) <= std::abs(out.epsilons.back())) {
      step_failed(i, "|ε(g_i)| did not increase");
    }
    out.epsilons.push_back(eps);
    h.append(g).append(B);
    for (auto m : order) {
      out.factorization.push_back(factor_for(v_images(m)));
    }
    out.factorization.push_back(B_factor);
  }
  out.element = std::move(h).build();

  std::optional<BigPowersProduct> p;
  try {
    p = parse_in_R(out.element, t);
  } catch (const Error& e) {
    step_failed(k, std::string("h_k is not in R: ") + e.what());
  }
  const GapProfile profile(*p, 0);
  for (std::size_t i = 0; i < out.epsilons.size(); ++i) {
    if (profile.Delta(out.epsilons[i]) != 1) {
      step_failed(static_cast<std::int64_t>(i) + 1, "Δ_ε(g_i)(h_k) != 1");
    }
  }
  if (profile.gamma() < k) {
    step_failed(k, "γ(h_k) < k");
  }
  return out;
}

WidthCertificate certify(const ReducedWord& g, const VerbalWord& w,
                         std::int64_t l, const BigPowersTuple& t,
                         std::optional<std::vector<SignedFactor>> upper) {
  const std::int64_t bound = bound_B(w, l);
  const BigPowersProduct p = parse_in_R(g, t);
  const std::int64_t gam = gamma(p, w.exponent_gcd());
  if (gam <= bound) {
    throw Error(ErrorCode::kNoCertificate,
                "gamma = " + std::to_string(gam) + " does not exceed B = "
                    + std::to_string(bound));
  }
  WidthCertificate cert{w, l, g, gam, bound, t, std::nullopt};
  if (upper) {
    if (!(evaluate_product(w, *upper, t.alphabet()) == g)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "the factorization does not multiply to g");
    }
    const auto count = static_cast<std::int64_t>(upper->size());
    cert.upper = UpperBound{count, std::move(*upper)};
  }
  return cert;
}

WidthResult produce_width_exceeding(const VerbalWord& w, std::int64_t l,
                                    const BigPowersTuple& t) {
  const std::int64_t d = w.exponent_gcd();
  if (d == 1) {
    throw Error(ErrorCode::kNotProper, "e(w) = 1");
  }
  const std::int64_t B = bound_B(w, l);
  if (d == 0) {
    Witness witness = witness_case2(w, B + 1, t);
    auto cert = certify(witness.element, w, l, t, witness.factorization);
    return {std::move(witness), std::move(cert)};
  }
  // Smallest k with 2k - 1 > B; if that rate does not verify, fall back to
  // the weaker guarantee γ >= k - 2.
  for (const std::int64_t k : {(B + 1) / 2 + 1, B + 3}) {
    Witness witness = witness_case1(w, k, t);
    const std::int64_t gam = gamma(parse_in_R(witness.element, t), d);
    if (gam > B) {
      auto cert = certify(witness.element, w, l, t, witness.factorization);
      return {std::move(witness), std::move(cert)};
    }
  }
  throw Error(ErrorCode::kInternal, "case 1 witness failed to exceed B");
}

SweepReport soundness_sweep(const VerbalWord& w, std::int64_t l,
                            std::int64_t max_length, const BigPowersTuple& t,
                            const EnumerationLimits& limits, unsigned workers) {
  const std::int64_t B = bound_B(w, l);
  const std::int64_t d = w.exponent_gcd();
  SweepReport report;
  for (const auto& u : distinct_wl_words(w, l)) {
    ++report.words;
    for (const auto& g : enumerate_values(u, t.alphabet(), max_length, limits,
                                          workers)) {
      ++report.values;
      auto p = parse_big_powers(g, t);
      if (!p || !p->in_R()) {
        continue;
      }
      ++report.in_R;
      const std::int64_t gam = gamma(*p, d);
      report.max_gamma = std::max(report.max_gamma, gam);
      if (gam > B) {
        report.violations.push_back(g);
      }
    }
  }
  return report;
}

}  // namespace widthlab
