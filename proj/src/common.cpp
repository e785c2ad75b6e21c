#include "tgds/error.hpp"
#include "tgds/rng.hpp"

namespace tgds {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConstraintViolation: return "ConstraintViolation";
    case ErrorCode::kEmpty: return "Empty";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kNotExcursion: return "NotExcursion";
    case ErrorCode::kDuplicateWeights: return "DuplicateWeights";
    case ErrorCode::kDegreeMismatch: return "DegreeMismatch";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNotABridge: return "NotABridge";
    case ErrorCode::kNotLaminar: return "NotLaminar";
    case ErrorCode::kCrossingChords: return "CrossingChords";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Seed Seed::derive(std::uint64_t sub) const {
  return Seed{master, splitmix64(stream ^ splitmix64(sub + 0x632be59bd9b4e019ULL))};
}

Rng::Rng(Seed seed) {
  const std::uint64_t a = splitmix64(seed.master);
  const std::uint64_t b = splitmix64(a ^ splitmix64(seed.stream + 0x2545f4914f6cdd1dULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection keeps the result free of modulo bias.
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

}  // namespace tgds
