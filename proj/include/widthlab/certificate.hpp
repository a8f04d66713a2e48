#ifndef WIDTHLAB_CERTIFICATE_HPP_
#define WIDTHLAB_CERTIFICATE_HPP_

// Width certificates as JSON, plus a verifier that trusts none of the
// verbal/modd/width code: it re-derives e(w), B, γ and the product of the
// upper-bound factorization from the word, big-powers and gap primitives.

#include <cstdint>
#include <string>
#include <string_view>

#include "widthlab/width.hpp"

namespace widthlab {

inline constexpr int kCertificateSchemaVersion = 1;
inline constexpr const char* kProofMode = "gap-bound-6N";

// One line of JSON, no trailing newline.
std::string serialize_certificate(const WidthCertificate& cert);

struct CertificateCheck {
  bool ok = false;
  std::string reason;  // first failed check, empty when ok
  std::int64_t l = 0;
  std::int64_t gamma = 0;
  std::int64_t bound = 0;
  std::int64_t upper = 0;  // 0 when the certificate has no upper bound
};

// Never throws on malformed input; reports it as a failed check.
CertificateCheck verify_certificate(std::string_view json_text);

}  // namespace widthlab

#endif  // WIDTHLAB_CERTIFICATE_HPP_
