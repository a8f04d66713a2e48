#include "widthlab/bigpowers.hpp"

#include <algorithm>
#include <cstdlib>

#include "widthlab/error.hpp"

namespace widthlab {

namespace {

Base base_of(const Syllable& s) {
  return {static_cast<Generator>(s.letter), s.exponent > 0 ? 1 : -1};
}

bool conflicts(const Base& a, const Base& b) {
  return a.generator == b.generator;  // equal or mutually inverse
}

// The first `count` letters of w.
ReducedWord prefix(const ReducedWord& w, std::int64_t count) {
  WordBuilder b(w.alphabet());
  for (const auto& s : w.syllables()) {
    if (count <= 0) {
      break;
    }
    const std::int64_t take = std::min(count, std::abs(s.exponent));
    b.append(Syllable{s.letter, s.exponent > 0 ? take : -take});
    count -= take;
  }
  return std::move(b).build();
}

// Where each factor of a padded core ends up in the reduced word of
// left * core * right. Factors consumed by the padding map to nullopt.
struct Located {
  ReducedWord whole;
  std::vector<std::optional<std::size_t>> position;
};

Located locate(const PaddedProduct& p) {
  const ReducedWord core = to_word(p.core);
  const ReducedWord with_left = multiply(p.left, core);
  const std::int64_t cut_left
      = (p.left.length() + core.length() - with_left.length()) / 2;
  ReducedWord whole = multiply(with_left, p.right);
  const std::int64_t cut_right
      = (with_left.length() + p.right.length() - whole.length()) / 2;

  const auto& factors = p.core.factors();
  const std::size_t k = factors.size();
  std::vector<std::int64_t> remaining(k);
  for (std::size_t i = 0; i < k; ++i) {
    remaining[i] = factors[i].power;
  }
  std::int64_t eat = cut_left;
  for (std::size_t i = 0; i < k && eat > 0; ++i) {
    const std::int64_t take = std::min(eat, remaining[i]);
    remaining[i] -= take;
    eat -= take;
  }
  eat = cut_right;
  for (std::size_t i = k; i-- > 0 && eat > 0;) {
    const std::int64_t take = std::min(eat, remaining[i]);
    remaining[i] -= take;
    eat -= take;
  }

  Located out{std::move(whole), std::vector<std::optional<std::size_t>>(k)};
  if (eat > 0) {
    return out;  // the right padding swallowed the whole core
  }
  const ReducedWord kept_left = prefix(p.left, p.left.length() - cut_left);
  std::size_t next = kept_left.syllable_count();
  bool first = true;
  for (std::size_t i = 0; i < k; ++i) {
    if (remaining[i] == 0) {
      continue;
    }
    if (first && !kept_left.empty()
        && kept_left.last_letter().letter
               == static_cast<LetterIndex>(factors[i].base.generator)) {
      --next;  // merges with the surviving padding
    }
    first = false;
    out.position[i] = next++;
  }
  return out;
}

void check_padded(const PaddedProduct& p, std::int64_t max_padding,
                  const BigPowersTuple& t, const char* which) {
  require_same_alphabet(p.left.alphabet(), t.alphabet());
  require_same_alphabet(p.right.alphabet(), t.alphabet());
  if (p.left.length() > max_padding || p.right.length() > max_padding) {
    throw Error(ErrorCode::kPreconditionViolation,
                std::string("padding of ") + which + " longer than K");
  }
  const auto& f = p.core.factors();
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    if (f[i].power < t.big_power()) {
      throw Error(ErrorCode::kPreconditionViolation,
                  std::string("interior exponent of ") + which
                      + " is below M");
    }
  }
}

}  // namespace

BigPowersTuple::BigPowersTuple(std::int64_t big_power, std::string b,
                               std::string f0, std::string f1)
    : alphabet_(std::vector<std::string>{std::move(b), std::move(f0),
                                         std::move(f1)}),
      big_power_(big_power) {
  if (big_power_ < 1) {
    throw Error(ErrorCode::kInvalidArgument, "M must be positive");
  }
}

BigPowersProduct::BigPowersProduct(BigPowersTuple tuple,
                                   std::vector<Factor> factors)
    : tuple_(std::move(tuple)), factors_(std::move(factors)) {
  if (factors_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "a product needs k >= 1 factors");
  }
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.power < 1 || (f.base.sign != 1 && f.base.sign != -1)) {
      throw Error(ErrorCode::kInvalidArgument, "factor exponents must be >= 1");
    }
    if (i > 0 && conflicts(factors_[i - 1].base, f.base)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "consecutive bases are equal or mutually inverse");
    }
  }
}

bool BigPowersProduct::in_R() const {
  return std::all_of(factors_.begin(), factors_.end(), [&](const Factor& f) {
    return f.power >= tuple_.big_power();
  });
}

ReducedWord to_word(const BigPowersProduct& p) {
  std::vector<Syllable> syl;
  syl.reserve(p.size());
  for (const auto& f : p.factors()) {
    syl.push_back({p.tuple().letter(f.base.generator), f.base.sign * f.power});
  }
  return ReducedWord::from_syllables(p.tuple().alphabet(), syl);
}

BigPowersProduct invert(const BigPowersProduct& p) {
  std::vector<Factor> f(p.factors().rbegin(), p.factors().rend());
  for (auto& x : f) {
    x.base.sign = -x.base.sign;
  }
  return BigPowersProduct(p.tuple(), std::move(f));
}

std::optional<BigPowersProduct> parse_big_powers(const ReducedWord& g,
                                                 const BigPowersTuple& t) {
  require_same_alphabet(g.alphabet(), t.alphabet());
  if (g.empty()) {
    return std::nullopt;
  }
  std::vector<Factor> factors;
  factors.reserve(g.syllable_count());
  for (const auto& s : g.syllables()) {
    factors.push_back({base_of(s), std::abs(s.exponent)});
  }
  return BigPowersProduct(t, std::move(factors));
}

BigPowersProduct parse_in_R(const ReducedWord& g, const BigPowersTuple& t) {
  auto p = parse_big_powers(g, t);
  if (!p) {
    throw Error(ErrorCode::kNotInR, "the identity is not a big-powers product");
  }
  if (!p->in_R()) {
    throw Error(ErrorCode::kNotInR,
                "some exponent is below M = " + std::to_string(t.big_power()));
  }
  return std::move(*p);
}

std::string format_base(const Base& base, const BigPowersTuple& t) {
  std::string out = t.name(base.generator);
  if (base.sign < 0) {
    out += "^-1";
  }
  return out;
}

char option_letter(MatchOption option) {
  switch (option) {
    case MatchOption::kA:
      return 'a';
    case MatchOption::kB:
      return 'b';
    case MatchOption::kC:
      return 'c';
    case MatchOption::kD:
      return 'd';
    case MatchOption::kOther:
      break;
  }
  return '?';
}

MatchReport match_modulo_padding(const PaddedProduct& u, const PaddedProduct& v,
                                 std::int64_t max_padding,
                                 const BigPowersTuple& t) {
  if (max_padding < 0) {
    throw Error(ErrorCode::kPreconditionViolation, "K must be >= 0");
  }
  if (t.big_power() <= 2 * max_padding + 1) {
    throw Error(ErrorCode::kPreconditionViolation, "requires M > 2K + 1");
  }
  check_padded(u, max_padding, t, "u");
  check_padded(v, max_padding, t, "v");

  const Located lu = locate(u);
  const Located lv = locate(v);
  if (!(lu.whole == lv.whole)) {
    throw Error(ErrorCode::kNoMatch, "u and v are different elements");
  }
  const auto syl = lu.whole.syllables();
  const auto& fu = u.core.factors();
  const auto& fv = v.core.factors();
  const std::size_t k = fu.size();
  const std::size_t l = fv.size();

  MatchReport report{MatchOption::kOther, {}, {}, {}, false, false};
  auto recover = [&](const Located& loc, const std::vector<Factor>& f,
                     std::vector<Base>& out) {
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
      if (!loc.position[i] || *loc.position[i] >= syl.size()) {
        throw Error(ErrorCode::kInternal, "interior factor was consumed");
      }
      out.push_back(base_of(syl[*loc.position[i]]));
    }
  };
  recover(lu, fu, report.recovered_u);
  recover(lv, fv, report.recovered_v);

  std::vector<Base> interior_u;
  for (std::size_t i = 1; i + 1 < k; ++i) {
    interior_u.push_back(fu[i].base);
  }
  auto window = [&](std::vector<std::size_t> idx) {
    if (idx.size() != interior_u.size()) {
      return false;
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= l || !(fv[idx[i]].base == interior_u[i])) {
        return false;
      }
    }
    return true;
  };
  auto literal = [&](std::size_t last) {
    std::vector<std::size_t> idx{0};
    for (std::size_t i = 2; i <= last && last != static_cast<std::size_t>(-1);
         ++i) {
      idx.push_back(i);
    }
    return window(idx);
  };
  if (l >= 1) {
    report.literal_c = l >= 2 && literal(l - 2);
    report.literal_d = literal(l - 1);
  }

  if (interior_u.empty()) {
    // Nothing to align: option (a) holds exactly when v has no interior
    // either.
    if (l <= 2) {
      report.option = MatchOption::kA;
    }
    return report;
  }

  for (std::size_t i = 1; i + 1 < k; ++i) {
    std::optional<std::size_t> partner;
    for (std::size_t j = 0; j < l; ++j) {
      if (lv.position[j] && *lv.position[j] == *lu.position[i]) {
        partner = j;
        break;
      }
    }
    if (!partner || !(fv[*partner].base == fu[i].base)) {
      throw Error(ErrorCode::kInternal,
                  "interior factor has no partner in v");
    }
    report.alignment.push_back(*partner);
  }
  const std::size_t lo = report.alignment.front();
  const std::size_t hi = report.alignment.back();
  if (lo == 1 && hi + 2 == l) {
    report.option = MatchOption::kA;
  } else if (lo == 1 && hi + 1 == l) {
    report.option = MatchOption::kB;
  } else if (lo == 0 && hi + 2 == l) {
    report.option = MatchOption::kC;
  } else if (lo == 0 && hi + 1 == l) {
    report.option = MatchOption::kD;
  }
  return report;
}

}  // namespace widthlab
