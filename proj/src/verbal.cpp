#include "widthlab/verbal.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "widthlab/error.hpp"

namespace widthlab {

namespace {

// Index k >= 1 if `name` is "x<k>" without leading zeros.
std::optional<std::size_t> variable_index(std::string_view name) {
  if (name.size() < 2 || name[0] != 'x' || name[1] == '0') {
    return std::nullopt;
  }
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
  if (ec != std::errc() || ptr != name.data() + name.size() || k == 0) {
    return std::nullopt;
  }
  return k;
}

bool is_variable_alphabet(const Alphabet& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.name(static_cast<LetterIndex>(i)) != "x" + std::to_string(i + 1)) {
      return false;
    }
  }
  return true;
}

struct ExtendedGcd {
  std::int64_t gcd;
  std::int64_t x;  // gcd = x * a + y * b
  std::int64_t y;
};

ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) {
    return {-old_r, -old_s, -old_t};
  }
  return {old_r, old_s, old_t};
}

std::uint64_t approx_bytes(const ReducedWord& w) {
  return sizeof(ReducedWord) + w.syllable_count() * sizeof(Syllable) + 32;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp,
                          std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) {
      return cap + 1;
    }
    out *= base;
  }
  return out;
}

VerbalWord shifted(const VerbalWord& w, std::size_t offset, std::size_t total,
                   bool inverted) {
  WordBuilder b(Alphabet::variables(total));
  auto syl = w.body().syllables();
  if (!inverted) {
    for (const auto& s : syl) {
      b.append(Syllable{static_cast<LetterIndex>(s.letter + offset), s.exponent});
    }
  } else {
    for (auto it = syl.rbegin(); it != syl.rend(); ++it) {
      b.append(Syllable{static_cast<LetterIndex>(it->letter + offset),
                        -it->exponent});
    }
  }
  return VerbalWord(std::move(b).build());
}

Substitution substitution_at(std::uint64_t index,
                             const std::vector<ReducedWord>& words,
                             std::size_t n) {
  Substitution s;
  s.images.resize(n, ReducedWord(words.front().alphabet()));
  const std::uint64_t base = words.size();
  for (std::size_t i = n; i-- > 0;) {
    s.images[i] = words[index % base];
    index /= base;
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// VerbalWord
// ---------------------------------------------------------------------------

VerbalWord::VerbalWord(ReducedWord body) : body_(std::move(body)) {
  if (body_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "the trivial word is rejected");
  }
  if (!is_variable_alphabet(body_.alphabet())) {
    throw Error(ErrorCode::kAlphabetMismatch,
                "verbal words use the variables x1, ..., xn");
  }
  exponent_sums_.assign(body_.alphabet().size(), 0);
  for (const auto& s : body_.syllables()) {
    exponent_sums_[s.letter] += s.exponent;
  }
  gcd_ = 0;
  for (auto t : exponent_sums_) {
    gcd_ = std::gcd(gcd_, t);
  }
}

VerbalWord VerbalWord::parse(std::string_view text, std::size_t min_variables) {
  std::size_t n = min_variables;
  for (const auto& term : parse_terms(text)) {
    auto k = variable_index(term.name);
    if (!k) {
      throw ParseError(ErrorCode::kUnknownLetter, term.position,
                       "'" + term.name + "' is not a variable x1, x2, ...");
    }
    n = std::max(n, *k);
  }
  return VerbalWord(parse_word(text, Alphabet::variables(n)));
}

std::string format_verbal(const VerbalWord& w) { return format_word(w.body()); }

// ---------------------------------------------------------------------------
// Substitutions
// ---------------------------------------------------------------------------

Substitution parse_substitution(std::string_view text, std::size_t n,
                                const Alphabet& alphabet) {
  std::vector<std::optional<ReducedWord>> slots(n);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view entry = text.substr(pos, end - pos);
    if (!entry.empty()) {
      const auto eq = entry.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError(ErrorCode::kSyntax, pos, "expected 'x<i>=<word>'");
      }
      auto k = variable_index(entry.substr(0, eq));
      if (!k || *k > n) {
        throw ParseError(ErrorCode::kArityMismatch, pos,
                         "unknown variable '" + std::string(entry.substr(0, eq))
                             + "'");
      }
      if (slots[*k - 1]) {
        throw ParseError(ErrorCode::kSyntax, pos,
                         "variable assigned twice");
      }
      try {
        slots[*k - 1] = parse_word(entry.substr(eq + 1), alphabet);
      } catch (const ParseError& e) {
        throw ParseError(e.code(), pos + eq + 1 + e.position(),
                         "in image of x" + std::to_string(*k));
      }
    }
    if (end == text.size()) {
      break;
    }
    pos = end + 1;
  }
  Substitution s;
  for (std::size_t i = 0; i < n; ++i) {
    if (!slots[i]) {
      throw Error(ErrorCode::kArityMismatch,
                  "no image for x" + std::to_string(i + 1));
    }
    s.images.push_back(std::move(*slots[i]));
  }
  return s;
}

std::string format_substitution(const Substitution& s) {
  std::string out;
  for (std::size_t i = 0; i < s.images.size(); ++i) {
    if (i > 0) {
      out += ';';
    }
    out += "x" + std::to_string(i + 1) + "=" + format_word(s.images[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exponent invariant and evaluation
// ---------------------------------------------------------------------------

std::int64_t exponent_gcd(const VerbalWord& w) { return w.exponent_gcd(); }

bool is_proper(const VerbalWord& w) { return w.exponent_gcd() != 1; }

ReducedWord evaluate(const VerbalWord& w, const Substitution& s) {
  if (s.images.size() != w.variable_count()) {
    throw Error(ErrorCode::kArityMismatch,
                "substitution has " + std::to_string(s.images.size())
                    + " images for " + std::to_string(w.variable_count())
                    + " variables");
  }
  const Alphabet& alphabet = s.images.front().alphabet();
  for (const auto& image : s.images) {
    require_same_alphabet(alphabet, image.alphabet());
  }
  WordBuilder builder(alphabet);
  for (const auto& syl : w.body().syllables()) {
    builder.append_power(s.images[syl.letter], syl.exponent);
  }
  return std::move(builder).build();
}

ReducedWord evaluate_product(const VerbalWord& w,
                             std::span<const SignedFactor> factors,
                             const Alphabet& alphabet) {
  WordBuilder builder(alphabet);
  for (const auto& f : factors) {
    const ReducedWord value = evaluate(w, f.substitution);
    if (f.sign > 0) {
      builder.append(value);
    } else {
      builder.append_inverse(value);
    }
  }
  return std::move(builder).build();
}

std::vector<std::int64_t> bezout_coefficients(std::span<const std::int64_t> t) {
  std::vector<std::int64_t> r(t.size(), 0);
  std::int64_t g = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto e = extended_gcd(g, t[i]);
    for (std::size_t j = 0; j < i; ++j) {
      r[j] *= e.x;
    }
    r[i] = e.y;
    g = e.gcd;
  }
  return r;
}

Substitution power_witness(const VerbalWord& w, const ReducedWord& g) {
  if (w.exponent_gcd() == 0) {
    throw Error(ErrorCode::kNoPowerWitness,
                "no power witness for commutator words");
  }
  const auto r = bezout_coefficients(w.exponent_sums());
  Substitution s;
  for (auto ri : r) {
    s.images.push_back(power(g, ri));
  }
  return s;
}

// ---------------------------------------------------------------------------
// W^(l)
// ---------------------------------------------------------------------------

std::vector<VerbalWord> wl_words(const VerbalWord& w, std::int64_t l) {
  if (l < 1) {
    throw Error(ErrorCode::kInvalidArgument, "l must be positive");
  }
  if (l > 24) {
    throw Error(ErrorCode::kResourceLimit, "2^l words requested with l > 24");
  }
  const std::size_t n = w.variable_count();
  const std::size_t total = n * static_cast<std::size_t>(l);
  const auto count = std::uint64_t{1} << l;
  std::vector<VerbalWord> out;
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    WordBuilder b(Alphabet::variables(total));
    for (std::int64_t j = 0; j < l; ++j) {
      const bool inverted = (mask >> (l - 1 - j)) & 1U;
      b.append(shifted(w, static_cast<std::size_t>(j) * n, total, inverted)
                   .body());
    }
    out.emplace_back(std::move(b).build());
  }
  return out;
}

VerbalWord canonical_renaming(const VerbalWord& w) {
  const std::size_t n = w.variable_count();
  std::vector<LetterIndex> rename(n, static_cast<LetterIndex>(n));
  LetterIndex next = 0;
  for (const auto& s : w.body().syllables()) {
    if (rename[s.letter] == n) {
      rename[s.letter] = next++;
    }
  }
  for (auto& r : rename) {
    if (r == n) {
      r = next++;
    }
  }
  WordBuilder b(Alphabet::variables(n));
  for (const auto& s : w.body().syllables()) {
    b.append(Syllable{rename[s.letter], s.exponent});
  }
  return VerbalWord(std::move(b).build());
}

std::vector<VerbalWord> distinct_wl_words(const VerbalWord& w, std::int64_t l) {
  std::vector<VerbalWord> out;
  std::vector<ReducedWord> seen;
  for (auto& u : wl_words(w, l)) {
    auto key = canonical_renaming(u).body();
    if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
      seen.push_back(std::move(key));
      out.push_back(std::move(u));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bounded enumeration
// ---------------------------------------------------------------------------

std::vector<ReducedWord> words_up_to(const Alphabet& alphabet,
                                     std::int64_t max_length) {
  if (max_length < 0) {
    throw Error(ErrorCode::kInvalidArgument, "length bound must be >= 0");
  }
  std::vector<ReducedWord> out{ReducedWord(alphabet)};
  std::size_t frontier_begin = 0;
  for (std::int64_t len = 1; len <= max_length; ++len) {
    const std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (LetterIndex a = 0; a < alphabet.size(); ++a) {
        for (int sign : {1, -1}) {
          const ReducedWord& base = out[i];
          if (!base.empty() && base.last_letter() == SignedLetter{a, -sign}) {
            continue;
          }
          WordBuilder b(alphabet);
          b.append(base).append(SignedLetter{a, sign});
          out.push_back(std::move(b).build());
        }
      }
    }
    frontier_begin = frontier_end;
  }
  std::sort(out.begin(), out.end());
  return out;
}

ValueTable enumerate_value_table(const VerbalWord& w, const Alphabet& alphabet,
                                 std::int64_t max_length,
                                 const EnumerationLimits& limits,
                                 unsigned workers) {
  const auto words = words_up_to(alphabet, max_length);
  const std::size_t n = w.variable_count();
  const std::uint64_t total = checked_pow(words.size(), n, limits.max_values);
  if (total > limits.max_values) {
    throw Error(ErrorCode::kResourceLimit,
                "enumeration exceeds " + std::to_string(limits.max_values)
                    + " substitutions");
  }
  workers = std::max(1U, workers);

  // Each worker keeps the smallest substitution index per value, so the merge
  // is independent of the partition.
  using Partial = std::unordered_map<ReducedWord, std::uint64_t>;
  std::vector<Partial> partials(workers);
  std::vector<std::exception_ptr> failures(workers);
  const std::uint64_t byte_cap = limits.max_bytes / workers;
  auto run = [&](unsigned id) {
    try {
      Partial& local = partials[id];
      std::uint64_t bytes = 0;
      const std::uint64_t begin = total * id / workers;
      const std::uint64_t end = total * (id + 1) / workers;
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        auto value = evaluate(w, substitution_at(idx, words, n));
        auto [it, inserted] = local.try_emplace(std::move(value), idx);
        if (inserted) {
          bytes += approx_bytes(it->first);
          if (bytes > byte_cap) {
            throw Error(ErrorCode::kResourceLimit,
                        "enumeration exceeds the memory cap");
          }
        } else if (idx < it->second) {
          it->second = idx;
        }
      }
    } catch (...) {
      failures[id] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned id = 0; id < workers; ++id) {
      threads.emplace_back(run, id);
    }
    for (auto& t : threads) {
      t.join();
    }
  }
  for (auto& f : failures) {
    if (f) {
      std::rethrow_exception(f);
    }
  }

  Partial merged = std::move(partials.front());
  for (unsigned id = 1; id < workers; ++id) {
    for (auto& [value, idx] : partials[id]) {
      auto [it, inserted] = merged.try_emplace(value, idx);
      if (!inserted && idx < it->second) {
        it->second = idx;
      }
    }
  }
  std::vector<std::pair<ReducedWord, std::uint64_t>> sorted(merged.begin(),
                                                            merged.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  ValueTable table;
  table.values.reserve(sorted.size());
  table.substitutions.reserve(sorted.size());
  for (auto& [value, idx] : sorted) {
    table.values.push_back(std::move(value));
    table.substitutions.push_back(substitution_at(idx, words, n));
  }
  return table;
}

std::vector<ReducedWord> enumerate_values(const VerbalWord& w,
                                          const Alphabet& alphabet,
                                          std::int64_t max_length,
                                          const EnumerationLimits& limits,
                                          unsigned workers) {
  return enumerate_value_table(w, alphabet, max_length, limits, workers).values;
}

// ---------------------------------------------------------------------------
// Membership oracle
// ---------------------------------------------------------------------------

OracleVerdict membership_oracle(const ReducedWord& g, const VerbalWord& w,
                                std::int64_t l, std::int64_t max_length,
                                const EnumerationLimits& limits) {
  if (l < 1) {
    throw Error(ErrorCode::kInvalidArgument, "l must be positive");
  }
  const OracleVerdict not_found{OracleOutcome::kNotFoundWithinBound, {}};
  const Alphabet& alphabet = g.alphabet();
  auto table = enumerate_value_table(w, alphabet, max_length, limits);

  struct Entry {
    ReducedWord element;
    int sign;
    std::size_t value;
  };
  std::vector<Entry> entries;
  {
    std::unordered_map<ReducedWord, std::size_t> seen;
    for (std::size_t k = 0; k < table.values.size(); ++k) {
      for (int sign : {1, -1}) {
        ReducedWord e = sign > 0 ? table.values[k] : invert(table.values[k]);
        if (seen.try_emplace(e, entries.size()).second) {
          entries.push_back({std::move(e), sign, k});
        }
      }
    }
  }
  std::int64_t max_len = 0;
  for (const auto& e : entries) {
    max_len = std::max(max_len, e.element.length());
  }
  // A product of l values is no longer than l * max_len.
  if (g.length() > l * max_len) {
    return not_found;
  }

  auto to_factors = [&](const std::vector<std::size_t>& picks) {
    std::vector<SignedFactor> out;
    for (auto p : picks) {
      out.push_back({entries[p].sign, table.substitutions[entries[p].value]});
    }
    return out;
  };

  const std::int64_t left_count = l / 2;
  const std::int64_t right_count = l - left_count;
  const std::uint64_t cap = limits.max_values;
  if (checked_pow(entries.size(), static_cast<std::uint64_t>(right_count), cap)
      > cap) {
    throw Error(ErrorCode::kResourceLimit, "oracle search exceeds the cap");
  }

  // Enumerates products of `count` entries in index order.
  auto for_each_product
      = [&](std::int64_t count,
            const std::function<bool(const ReducedWord&,
                                     const std::vector<std::size_t>&)>& visit) {
          std::vector<std::size_t> picks;
          std::function<bool(const ReducedWord&)> rec
              = [&](const ReducedWord& prefix) -> bool {
            if (static_cast<std::int64_t>(picks.size()) == count) {
              return visit(prefix, picks);
            }
            for (std::size_t i = 0; i < entries.size(); ++i) {
              picks.push_back(i);
              const bool stop = rec(multiply(prefix, entries[i].element));
              picks.pop_back();
              if (stop) {
                return true;
              }
            }
            return false;
          };
          return rec(ReducedWord(alphabet));
        };

  std::unordered_map<ReducedWord, std::vector<std::size_t>> left;
  left.emplace(ReducedWord(alphabet), std::vector<std::size_t>{});
  if (left_count > 0) {
    left.clear();
    const std::int64_t keep = g.length() + right_count * max_len;
    std::uint64_t bytes = 0;
    for_each_product(left_count, [&](const ReducedWord& p,
                                     const std::vector<std::size_t>& picks) {
      if (p.length() <= keep) {
        auto [it, inserted] = left.try_emplace(p, picks);
        if (inserted) {
          bytes += approx_bytes(p) + picks.size() * sizeof(std::size_t);
          if (bytes > limits.max_bytes || left.size() > cap) {
            throw Error(ErrorCode::kResourceLimit,
                        "oracle table exceeds the cap");
          }
        }
      }
      return false;
    });
  }

  OracleVerdict verdict = not_found;
  const std::int64_t reach = g.length() + left_count * max_len;
  for_each_product(right_count, [&](const ReducedWord& q,
                                    const std::vector<std::size_t>& picks) {
    if (q.length() > reach) {
      return false;
    }
    WordBuilder target(alphabet);
    target.append(g).append_inverse(q);
    auto it = left.find(std::move(target).build());
    if (it == left.end()) {
      return false;
    }
    std::vector<std::size_t> all = it->second;
    all.insert(all.end(), picks.begin(), picks.end());
    verdict = {OracleOutcome::kMember, to_factors(all)};
    return true;
  });
  return verdict;
}

}  // namespace widthlab
