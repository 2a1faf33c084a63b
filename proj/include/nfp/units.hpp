#pragma once

#include <cmath>
#include <cstdint>

namespace nfp {

/// Data rates are integral bits per second so that sums and the backhaul cap compare exactly.
using bps = std::int64_t;

inline constexpr bps kMbps = 1'000'000;

// Every dB <-> linear conversion in the library goes through these two functions.
inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace nfp
