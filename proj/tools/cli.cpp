#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "widthlab/bigpowers.hpp"
#include "widthlab/certificate.hpp"
#include "widthlab/error.hpp"
#include "widthlab/gaps.hpp"
#include "widthlab/modd.hpp"
#include "widthlab/verbal.hpp"
#include "widthlab/width.hpp"
#include "widthlab/word.hpp"

namespace widthlab::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct Config {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::uint64_t max_values = EnumerationLimits{}.max_values;
  std::int64_t M = 1;
  std::string letters = "b,f0,f1";

  bool json() const { return format == "json"; }
};

class Usage : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

BigPowersTuple tuple_of(const Config& c) {
  std::vector<std::string> names;
  std::stringstream ss(c.letters);
  for (std::string name; std::getline(ss, name, ',');) {
    names.push_back(name);
  }
  if (names.size() != 3) {
    throw Usage("--letters takes three comma-separated names");
  }
  return BigPowersTuple(c.M, names[0], names[1], names[2]);
}

std::uint64_t parse_bytes(const std::string& text) {
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw Usage("WIDTHLAB_MAX_MEM is not a byte count: " + text);
  }
  const std::string suffix = text.substr(used);
  if (suffix.empty()) {
    return value;
  }
  if (suffix == "K") {
    return value << 10;
  }
  if (suffix == "M") {
    return value << 20;
  }
  if (suffix == "G") {
    return value << 30;
  }
  throw Usage("WIDTHLAB_MAX_MEM has an unknown suffix: " + suffix);
}

EnumerationLimits limits_of(const Config& c) {
  EnumerationLimits limits;
  limits.max_values = c.max_values;
  if (const char* mem = std::getenv("WIDTHLAB_MAX_MEM")) {
    limits.max_bytes = parse_bytes(mem);
  }
  return limits;
}

// The identity prints as "1" in text mode.
std::string show(const ReducedWord& g) {
  return g.empty() ? "1" : format_word(g);
}

Json header(const char* command) {
  return Json{{"schema_version", kSchemaVersion}, {"command", command}};
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

Json int_map(const std::map<std::int64_t, std::int64_t>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) {
    out[std::to_string(k)] = v;
  }
  return out;
}

Json factors_json(const std::vector<SignedFactor>& factors) {
  Json out = Json::array();
  for (const auto& f : factors) {
    out.push_back({{"sign", f.sign},
                   {"substitution", format_substitution(f.substitution)}});
  }
  return out;
}

ReducedWord random_word(std::mt19937_64& rng, const Alphabet& alphabet,
                        std::int64_t max_length) {
  std::uniform_int_distribution<std::int64_t> length(0, max_length);
  std::uniform_int_distribution<int> pick(0, 2 * static_cast<int>(alphabet.size()) - 1);
  const std::int64_t n = length(rng);
  std::vector<SignedLetter> letters;
  while (static_cast<std::int64_t>(letters.size()) < n) {
    const int x = pick(rng);
    const SignedLetter s{static_cast<LetterIndex>(x / 2), x % 2 == 0 ? 1 : -1};
    if (!letters.empty() && letters.back() == s.inverse()) {
      continue;
    }
    letters.push_back(s);
  }
  return ReducedWord::from_letters(alphabet, letters);
}

// ---------------------------------------------------------------------------

int cmd_reduce(const Config& c, const std::string& word, bool cyclic,
               std::ostream& out) {
  const auto t = tuple_of(c);
  const ReducedWord g = parse_word(word, t.alphabet());
  if (c.json()) {
    Json j = header("reduce");
    j["word"] = format_word(g);
    j["length"] = g.length();
    if (cyclic) {
      const auto cr = cyclic_reduce(g);
      j["core"] = format_word(cr.core);
      j["conjugator"] = format_word(cr.conjugator);
    }
    emit(out, j);
  } else if (cyclic) {
    const auto cr = cyclic_reduce(g);
    out << show(g) << "\ncore: " << show(cr.core)
        << "\nconjugator: " << show(cr.conjugator) << '\n';
  } else {
    out << show(g) << '\n';
  }
  return kOk;
}

int cmd_eval(const Config& c, const std::string& w_text,
             const std::string& subst, std::ostream& out) {
  const auto t = tuple_of(c);
  const VerbalWord w = VerbalWord::parse(w_text);
  const Substitution s = parse_substitution(subst, w.variable_count(),
                                            t.alphabet());
  const ReducedWord g = evaluate(w, s);
  if (c.json()) {
    Json j = header("eval");
    j["word"] = format_verbal(w);
    j["substitution"] = format_substitution(s);
    j["value"] = format_word(g);
    j["length"] = g.length();
    emit(out, j);
  } else {
    out << show(g) << '\n';
  }
  return kOk;
}

int cmd_ew(const Config& c, const std::string& w_text, std::ostream& out) {
  const VerbalWord w = VerbalWord::parse(w_text);
  const std::int64_t e = w.exponent_gcd();
  if (c.json()) {
    Json j = header("ew");
    j["word"] = format_verbal(w);
    j["exponent_sums"] = std::vector<std::int64_t>(w.exponent_sums().begin(),
                                                   w.exponent_sums().end());
    j["e"] = e;
    j["proper"] = is_proper(w);
    j["commutator"] = e == 0;
    emit(out, j);
  } else {
    out << "e(w) = " << e << " ("
        << (e == 0 ? "commutator word, proper" : e == 1 ? "not proper" : "proper")
        << ")\n";
  }
  return kOk;
}

int cmd_gamma(const Config& c, std::optional<std::int64_t> d_flag,
              const std::string& w_text, const std::string& word,
              std::ostream& out) {
  std::int64_t d = 0;
  if (!w_text.empty()) {
    d = VerbalWord::parse(w_text).exponent_gcd();
    if (d_flag && *d_flag != d) {
      throw Usage("--d disagrees with e(w) = " + std::to_string(d));
    }
  } else if (d_flag) {
    d = *d_flag;
  } else {
    throw Usage("gamma needs --d or --w");
  }
  const auto t = tuple_of(c);
  const BigPowersProduct p = parse_in_R(parse_word(word, t.alphabet()), t);
  const GapProfile profile(p, d);
  const auto counted = profile.counted_Delta();
  if (c.json()) {
    Json j = header("gamma");
    j["element"] = format_word(to_word(p));
    j["d"] = d;
    j["M"] = t.big_power();
    j["delta"] = int_map(profile.delta_map());
    j["delta_star"] = int_map(profile.delta_star_map());
    j["counted"] = int_map(counted);
    j["gamma"] = profile.gamma();
    emit(out, j);
  } else {
    out << "gamma = " << profile.gamma();
    for (const auto& [omega, value] : counted) {
      out << "; Delta[" << omega << "] = " << value;
    }
    out << '\n';
  }
  return kOk;
}

int cmd_decompose(const Config& c, const std::string& w_text,
                  const std::string& subst, std::optional<std::int64_t> random,
                  std::ostream& out) {
  const auto t = tuple_of(c);
  const VerbalWord w = VerbalWord::parse(w_text);
  Substitution s;
  if (random) {
    if (!subst.empty()) {
      throw Usage("give either a substitution or --random-images");
    }
    std::mt19937_64 rng(c.seed);
    for (std::size_t v = 0; v < w.variable_count(); ++v) {
      s.images.push_back(random_word(rng, t.alphabet(), *random));
    }
  } else {
    s = parse_substitution(subst, w.variable_count(), t.alphabet());
  }
  const auto dec = decompose(w, s);
  const auto check = check_decomposition(dec, w, s);
  if (!check.ok) {
    throw Error(ErrorCode::kInternal, "decomposition failed its check: "
                                          + check.reason);
  }
  const std::int64_t r1 = w.letter_length() + 1;
  if (c.json()) {
    Json j = header("decompose");
    j["word"] = format_verbal(w);
    j["substitution"] = format_substitution(s);
    j["value"] = format_word(evaluate(w, s));
    j["d"] = dec.d;
    Json pieces = Json::array();
    for (const auto& y : dec.pieces) {
      pieces.push_back(format_word(y));
    }
    j["pieces"] = std::move(pieces);
    Json seq = Json::array();
    for (const auto& e : dec.sequence) {
      seq.push_back({e.piece, e.sign});
    }
    j["sequence"] = std::move(seq);
    j["counts"] = dec.piece_counts;
    j["N"] = dec.N();
    j["N_bound"] = r1 * r1 * r1;
    emit(out, j);
    return kOk;
  }
  out << "g = " << show(evaluate(w, s)) << '\n';
  out << "substitution: " << format_substitution(s) << '\n';
  out << "pieces:";
  for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
    out << (i ? ", " : " ") << "y" << i + 1 << " = " << format_word(dec.pieces[i]);
  }
  out << "\nsequence:";
  for (const auto& e : dec.sequence) {
    out << " y" << e.piece + 1 << (e.sign < 0 ? "^-1" : "");
  }
  out << "\ncounts:";
  for (std::size_t i = 0; i < dec.piece_counts.size(); ++i) {
    out << (i ? ", " : " ") << "y" << i + 1 << ": " << dec.piece_counts[i];
  }
  out << " (d = " << dec.d << ")\n";
  out << "N = " << dec.N() << " <= (r+1)^3 = " << r1 * r1 * r1 << '\n';
  return kOk;
}

Witness make_witness(const VerbalWord& w, std::int64_t k,
                     const BigPowersTuple& t) {
  const std::int64_t d = w.exponent_gcd();
  if (d == 1) {
    throw Error(ErrorCode::kNotProper, "e(w) = 1");
  }
  return d == 0 ? witness_case2(w, k, t) : witness_case1(w, k, t);
}

int cmd_witness(const Config& c, const std::string& w_text, std::int64_t k,
                std::ostream& out) {
  const auto t = tuple_of(c);
  const VerbalWord w = VerbalWord::parse(w_text);
  const Witness wit = make_witness(w, k, t);
  const BigPowersProduct p = parse_in_R(wit.element, t);
  const std::int64_t gam = gamma(p, w.exponent_gcd());
  const int which = w.exponent_gcd() == 0 ? 2 : 1;
  if (c.json()) {
    Json j = header("witness");
    j["word"] = format_verbal(w);
    j["case"] = which;
    j["k"] = k;
    j["M"] = t.big_power();
    j["gamma"] = gam;
    j["expected_gamma"] = wit.expected_gamma;
    j["syllables"] = p.size();
    j["length"] = wit.element.length();
    j["upper"] = wit.factorization.size();
    if (which == 2) {
      j["epsilons"] = wit.epsilons;
    }
    j["element"] = format_word(wit.element);
    emit(out, j);
    return kOk;
  }
  out << "case " << which << ", k = " << k << ", M = " << t.big_power() << '\n';
  out << "gamma = " << gam << " (expected "
      << (which == 1 ? "= " : ">= ") << wit.expected_gamma << ")\n";
  out << "syllables = " << p.size() << ", length = " << wit.element.length()
      << '\n';
  out << "upper bound on width: " << wit.factorization.size() << " factors\n";
  if (which == 2) {
    out << "epsilons:";
    for (auto e : wit.epsilons) {
      out << ' ' << e;
    }
    out << '\n';
  }
  out << show(wit.element) << '\n';
  return kOk;
}

int cmd_certify(const Config& c, const std::string& w_text, std::int64_t l,
                const std::string& word, bool from_witness,
                std::optional<std::int64_t> k, std::ostream& out) {
  const auto t = tuple_of(c);
  const VerbalWord w = VerbalWord::parse(w_text);
  WidthCertificate cert = [&] {
    if (!from_witness) {
      if (k) {
        throw Usage("--k needs --from-witness");
      }
      return certify(parse_word(word, t.alphabet()), w, l, t);
    }
    if (!word.empty()) {
      throw Usage("give either an element or --from-witness");
    }
    if (!k) {
      return produce_width_exceeding(w, l, t).certificate;
    }
    Witness wit = make_witness(w, *k, t);
    return certify(wit.element, w, l, t, std::move(wit.factorization));
  }();
  out << serialize_certificate(cert) << '\n';
  return kOk;
}

int cmd_oracle(const Config& c, const std::string& w_text, std::int64_t l,
               std::int64_t max_length, const std::string& word,
               std::ostream& out) {
  const auto t = tuple_of(c);
  const VerbalWord w = VerbalWord::parse(w_text);
  const ReducedWord g = parse_word(word, t.alphabet());
  const auto verdict = membership_oracle(g, w, l, max_length, limits_of(c));
  const bool member = verdict.outcome == OracleOutcome::kMember;
  if (c.json()) {
    Json j = header("oracle");
    j["word"] = format_verbal(w);
    j["element"] = format_word(g);
    j["l"] = l;
    j["L"] = max_length;
    j["outcome"] = member ? "MEMBER" : "NOT-FOUND-WITHIN-BOUND";
    if (member) {
      j["factors"] = factors_json(verdict.factorization);
    }
    emit(out, j);
    return kOk;
  }
  if (!member) {
    out << "NOT-FOUND-WITHIN-BOUND (l = " << l << ", L = " << max_length << ")\n";
    return kOk;
  }
  out << "MEMBER\n";
  for (const auto& f : verdict.factorization) {
    out << (f.sign > 0 ? "+1 " : "-1 ") << format_substitution(f.substitution)
        << '\n';
  }
  return kOk;
}

int cmd_verify(const Config& c, const std::string& path, std::istream& in,
               std::ostream& out) {
  std::string text;
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
      throw Usage("cannot read " + path);
    }
    text.assign(std::istreambuf_iterator<char>(file), {});
  }
  const auto check = verify_certificate(text);
  if (c.json()) {
    Json j = header("verify-certificate");
    j["ok"] = check.ok;
    if (check.ok) {
      j["l"] = check.l;
      j["gamma"] = check.gamma;
      j["bound"] = check.bound;
      if (check.upper > 0) {
        j["upper"] = check.upper;
      }
    } else {
      j["reason"] = check.reason;
    }
    emit(out, j);
  } else if (check.ok) {
    out << "OK: l_w(g) > " << check.l << " (gamma = " << check.gamma
        << " > B = " << check.bound << ")";
    if (check.upper > 0) {
      out << ", l_w(g) <= " << check.upper;
    }
    out << '\n';
  } else {
    out << "REJECTED: " << check.reason << '\n';
  }
  return check.ok ? kOk : kDomainError;
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax:
    case ErrorCode::kUnknownLetter:
    case ErrorCode::kAlphabetMismatch:
    case ErrorCode::kArityMismatch:
    case ErrorCode::kInvalidArgument:
      return kUsageError;
    case ErrorCode::kResourceLimit:
      return kResourceError;
    default:
      return kDomainError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Verbal width experiments in the free group F(b, f0, f1)",
               "widthlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", c.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", c.seed, "seed for random inputs");
  app.add_option("--max-values", c.max_values, "enumeration cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--M", c.M, "big power M")->check(CLI::PositiveNumber);
  app.add_option("--letters", c.letters, "names of b, f0, f1");

  std::string word, w_text, subst, path;
  bool cyclic = false;
  bool from_witness = false;
  std::int64_t l = 1;
  std::int64_t k = 1;
  std::int64_t max_length = 2;
  std::optional<std::int64_t> d_flag, k_flag, random_images;

  auto* reduce = app.add_subcommand("reduce", "freely reduce a word");
  reduce->add_option("word", word)->required();
  reduce->add_flag("--cyclic", cyclic, "also show the cyclic reduction");

  auto* eval = app.add_subcommand("eval", "evaluate w under a substitution");
  eval->add_option("--w", w_text)->required();
  eval->add_option("substitution", subst, "x1=<word>;x2=<word>;...")->required();

  auto* ew = app.add_subcommand("ew", "exponent gcd e(w)");
  ew->add_option("word", w_text)->required();

  auto* gam = app.add_subcommand("gamma", "gap profile of an element of R");
  gam->add_option("--d", d_flag)->check(CLI::NonNegativeNumber);
  gam->add_option("--w", w_text, "take d = e(w)");
  gam->add_option("element", word)->required();

  auto* dec = app.add_subcommand("decompose", "mod-d piece decomposition");
  dec->add_option("--w", w_text)->required();
  dec->add_option("substitution", subst);
  dec->add_option("--random-images", random_images,
                  "random images of length <= L (uses --seed)")
      ->check(CLI::NonNegativeNumber);

  auto* wit = app.add_subcommand("witness", "width witness h_k");
  wit->add_option("--w", w_text)->required();
  wit->add_option("--k", k)->required()->check(CLI::PositiveNumber);

  auto* cert = app.add_subcommand("certify", "width lower-bound certificate");
  cert->add_option("--w", w_text)->required();
  cert->add_option("--l", l)->required()->check(CLI::PositiveNumber);
  cert->add_option("element", word);
  cert->add_flag("--from-witness", from_witness);
  cert->add_option("--k", k_flag)->check(CLI::PositiveNumber);

  auto* orc = app.add_subcommand("oracle", "bounded width-l membership search");
  orc->add_option("--w", w_text)->required();
  orc->add_option("--l", l)->required()->check(CLI::PositiveNumber);
  orc->add_option("--L", max_length, "image length bound")
      ->check(CLI::NonNegativeNumber);
  orc->add_option("element", word)->required();

  auto* ver = app.add_subcommand("verify-certificate",
                                 "re-check a certificate (file or stdin)");
  ver->add_option("file", path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? kOk : kUsageError;
  }

  try {
    if (*reduce) return cmd_reduce(c, word, cyclic, out);
    if (*eval) return cmd_eval(c, w_text, subst, out);
    if (*ew) return cmd_ew(c, w_text, out);
    if (*gam) return cmd_gamma(c, d_flag, w_text, word, out);
    if (*dec) return cmd_decompose(c, w_text, subst, random_images, out);
    if (*wit) return cmd_witness(c, w_text, k, out);
    if (*cert) return cmd_certify(c, w_text, l, word, from_witness, k_flag, out);
    if (*orc) return cmd_oracle(c, w_text, l, max_length, word, out);
    if (*ver) return cmd_verify(c, path, in, out);
  } catch (const Usage& e) {
    if (c.json()) {
      Json j{{"schema_version", kSchemaVersion},
             {"error", {{"code", "USAGE"}, {"message", e.what()}}}};
      emit(out, j);
    } else {
      err << "error: USAGE: " << e.what() << '\n';
    }
    return kUsageError;
  } catch (const Error& e) {
    const std::string code(to_string(e.code()));
    if (c.json()) {
      Json j{{"schema_version", kSchemaVersion},
             {"error", {{"code", code}, {"message", e.what()}}}};
      emit(out, j);
    } else {
      err << "error: " << code << ": " << e.what() << '\n';
    }
    return exit_status(e.code());
  }
  return kUsageError;
}

}  // namespace widthlab::cli
