#include "widthlab/gaps.hpp"

#include <optional>

#include "widthlab/error.hpp"

namespace widthlab {

std::vector<GapSyllable> extract_syllables(const BigPowersProduct& p) {
  std::vector<GapSyllable> out;
  const auto& f = p.factors();
  std::optional<std::size_t> previous_block;
  std::int64_t omega = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    switch (f[i].base.generator) {
      case Generator::kB:
        if (previous_block && f[*previous_block].base.sign == f[i].base.sign) {
          out.push_back({f[i].base.sign > 0 ? SyllableKind::kB
                                            : SyllableKind::kBInverse,
                         *previous_block, i, omega});
        }
        previous_block = i;
        omega = 0;
        break;
      case Generator::kF0:
        omega += f[i].base.sign;
        break;
      case Generator::kF1:
        break;
    }
  }
  return out;
}

bool counts_toward_gamma(std::int64_t Delta, std::int64_t d) {
  if (d < 0) {
    throw Error(ErrorCode::kInvalidArgument, "modulus must be >= 0");
  }
  return d == 0 ? Delta != 0 : Delta % d != 0;
}

GapProfile::GapProfile(const BigPowersProduct& p, std::int64_t d) : d_(d) {
  if (d < 0) {
    throw Error(ErrorCode::kInvalidArgument, "modulus must be >= 0");
  }
  for (const auto& s : extract_syllables(p)) {
    auto& target = s.kind == SyllableKind::kB ? delta_ : delta_star_;
    ++target[s.omega];
    ++syllables_;
  }
}

std::int64_t GapProfile::delta(std::int64_t omega) const {
  auto it = delta_.find(omega);
  return it == delta_.end() ? 0 : it->second;
}

std::int64_t GapProfile::delta_star(std::int64_t omega) const {
  auto it = delta_star_.find(omega);
  return it == delta_star_.end() ? 0 : it->second;
}

std::int64_t GapProfile::Delta(std::int64_t omega) const {
  return delta(omega) - delta_star(-omega);
}

std::map<std::int64_t, std::int64_t> GapProfile::nonzero_Delta() const {
  std::map<std::int64_t, std::int64_t> out;
  for (const auto& [omega, count] : delta_) {
    out[omega] += count;
  }
  for (const auto& [omega, count] : delta_star_) {
    out[-omega] -= count;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::map<std::int64_t, std::int64_t> GapProfile::counted_Delta() const {
  auto out = nonzero_Delta();
  std::erase_if(out, [&](const auto& kv) {
    return !counts_toward_gamma(kv.second, d_);
  });
  return out;
}

std::int64_t GapProfile::gamma() const {
  return static_cast<std::int64_t>(counted_Delta().size());
}

std::int64_t delta(const BigPowersProduct& p, std::int64_t omega) {
  return GapProfile(p, 0).delta(omega);
}

std::int64_t delta_star(const BigPowersProduct& p, std::int64_t omega) {
  return GapProfile(p, 0).delta_star(omega);
}

std::int64_t Delta(const BigPowersProduct& p, std::int64_t omega) {
  return GapProfile(p, 0).Delta(omega);
}

std::int64_t gamma(const BigPowersProduct& p, std::int64_t d) {
  return GapProfile(p, d).gamma();
}

}  // namespace widthlab
