#include "widthlab/certificate.hpp"

#include <numeric>
#include <optional>

#include "json.hpp"
#include "widthlab/error.hpp"
#include "widthlab/gaps.hpp"

namespace widthlab {

using nlohmann::json;

std::string serialize_certificate(const WidthCertificate& cert) {
  json j;
  j["schema_version"] = kCertificateSchemaVersion;
  j["kind"] = "width-certificate";
  j["word"] = format_verbal(cert.w);
  j["l"] = cert.l;
  j["element"] = format_word(cert.element);
  j["gamma"] = cert.gamma;
  j["bound"] = cert.bound;
  j["tuple"] = {{"b", cert.tuple.name(Generator::kB)},
                {"f0", cert.tuple.name(Generator::kF0)},
                {"f1", cert.tuple.name(Generator::kF1)},
                {"M", cert.tuple.big_power()}};
  j["verdict"] = kVerdict;
  if (cert.upper) {
    json factors = json::array();
    for (const auto& f : cert.upper->factors) {
      factors.push_back({{"sign", f.sign},
                         {"substitution", format_substitution(f.substitution)}});
    }
    j["upper"] = {{"count", cert.upper->count}, {"factors", std::move(factors)}};
  }
  j["proof_mode"] = kProofMode;
  return j.dump();
}

namespace {

// Everything below re-derives the certificate's claims from primitives.

struct Rejected {
  std::string reason;
};

[[noreturn]] void reject(std::string reason) { throw Rejected{std::move(reason)}; }

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    reject("integer overflow while recomputing the bound");
  }
  return out;
}

// Variable index of "x<k>", k >= 1.
std::size_t variable_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x' || name[1] == '0') {
    reject("not a variable name: " + name);
  }
  std::size_t k = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9' || k > 1'000'000) {
      reject("not a variable name: " + name);
    }
    k = k * 10 + static_cast<std::size_t>(name[i] - '0');
  }
  return k - 1;
}

struct PlainWord {
  ReducedWord body;
  std::vector<std::int64_t> sums;
};

PlainWord read_verbal(const std::string& text) {
  std::size_t n = 0;
  for (const auto& t : parse_terms(text)) {
    n = std::max(n, variable_index(t.name) + 1);
  }
  if (n == 0) {
    reject("w is empty");
  }
  PlainWord out{parse_word(text, Alphabet::variables(n)),
                std::vector<std::int64_t>(n, 0)};
  if (out.body.empty()) {
    reject("w reduces to the identity");
  }
  for (const auto& s : out.body.syllables()) {
    out.sums[s.letter] += s.exponent;
  }
  return out;
}

std::vector<ReducedWord> read_images(const std::string& text, std::size_t n,
                                     const Alphabet& alphabet) {
  std::vector<std::optional<ReducedWord>> images(n);
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    const std::string item = text.substr(start, end - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      reject("malformed substitution: " + text);
    }
    const std::size_t v = variable_index(item.substr(0, eq));
    if (v >= n || images[v]) {
      reject("substitution names x" + std::to_string(v + 1) + " wrongly");
    }
    images[v] = parse_word(item.substr(eq + 1), alphabet);
    start = end + 1;
  }
  std::vector<ReducedWord> out;
  for (auto& image : images) {
    if (!image) {
      reject("substitution misses a variable");
    }
    out.push_back(std::move(*image));
  }
  return out;
}

CertificateCheck check(const json& j) {
  if (j.at("schema_version").get<int>() != kCertificateSchemaVersion) {
    reject("unsupported schema_version");
  }
  if (j.at("kind").get<std::string>() != "width-certificate") {
    reject("not a width certificate");
  }
  if (j.at("verdict").get<std::string>() != kVerdict) {
    reject("unknown verdict");
  }
  if (j.at("proof_mode").get<std::string>() != kProofMode) {
    reject("unknown proof_mode");
  }
  const PlainWord w = read_verbal(j.at("word").get<std::string>());
  std::int64_t d = 0;
  for (auto t : w.sums) {
    d = std::gcd(d, t);
  }
  if (d == 1) {
    reject("w is not proper");
  }
  CertificateCheck out;
  out.l = j.at("l").get<std::int64_t>();
  if (out.l < 1) {
    reject("l must be positive");
  }
  const std::int64_t base = mul(out.l, w.body.length()) + 1;
  out.bound = mul(6, mul(base, mul(base, base)));
  if (j.at("bound").get<std::int64_t>() != out.bound) {
    reject("bound differs from 6(lr+1)^3 = " + std::to_string(out.bound));
  }

  const json& tj = j.at("tuple");
  const BigPowersTuple t(tj.at("M").get<std::int64_t>(),
                         tj.at("b").get<std::string>(),
                         tj.at("f0").get<std::string>(),
                         tj.at("f1").get<std::string>());
  const ReducedWord g = parse_word(j.at("element").get<std::string>(),
                                   t.alphabet());
  const BigPowersProduct p = parse_in_R(g, t);
  out.gamma = gamma(p, d);
  if (j.at("gamma").get<std::int64_t>() != out.gamma) {
    reject("gamma differs from the recomputed value "
           + std::to_string(out.gamma));
  }
  if (out.gamma <= out.bound) {
    reject("gamma does not exceed the bound");
  }

  if (j.contains("upper")) {
    const json& u = j.at("upper");
    const json& factors = u.at("factors");
    out.upper = u.at("count").get<std::int64_t>();
    if (out.upper != static_cast<std::int64_t>(factors.size())) {
      reject("upper count differs from the number of factors");
    }
    if (out.upper <= out.l) {
      reject("upper bound is not above l");
    }
    WordBuilder product(t.alphabet());
    for (const auto& f : factors) {
      const int sign = f.at("sign").get<int>();
      if (sign != 1 && sign != -1) {
        reject("factor sign must be +1 or -1");
      }
      const auto images = read_images(f.at("substitution").get<std::string>(),
                                      w.sums.size(), t.alphabet());
      WordBuilder value(t.alphabet());
      for (const auto& s : w.body.syllables()) {
        value.append_power(images[s.letter], s.exponent);
      }
      if (sign > 0) {
        product.append(value.peek());
      } else {
        product.append_inverse(value.peek());
      }
    }
    if (!(product.peek() == g)) {
      reject("the factorization does not multiply to the element");
    }
  }
  out.ok = true;
  return out;
}

}  // namespace

CertificateCheck verify_certificate(std::string_view json_text) {
  try {
    return check(json::parse(json_text));
  } catch (const Rejected& r) {
    return {false, r.reason};
  } catch (const json::exception& e) {
    return {false, std::string("malformed JSON: ") + e.what()};
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
}

}  // namespace widthlab
