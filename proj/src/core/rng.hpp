#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace yf {

// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Identifies an independent family of sheets. Sheet k of a stream is a pure
// function of (seed, stream, k), so any partition of the sheet indices over
// workers reproduces the same variates.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  // Derived stream for auxiliary sheets (e.g. the inner sheets of a nested
  // estimator).
  RngStream substream(std::uint64_t k) const;

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

// Standard normals for sheet `sheet_index` (< 2^32), one per output slot.
// Slot 4p+k is normal_quantile applied to word k of the Philox block with
// counter (p, sheet_index, stream_lo, stream_hi) and key (seed_lo, seed_hi),
// the word mapped to the uniform (w + 0.5) / 2^32.
void fill_standard_normals(const RngStream& rng, std::uint64_t sheet_index,
                           std::span<double> out);

std::uint64_t mix64(std::uint64_t x);

// Inverse of the standard normal CDF for p in (0,1), AS 241 (about 1e-16
// relative accuracy).
double normal_quantile(double p);

// The |p - 1/2| > 0.425 branch of normal_quantile.
double normal_quantile_tail(double p);

}  // namespace yf
