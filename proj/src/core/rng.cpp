#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace yf {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// Open interval (0,1). 32-bit resolution bounds |z| by about 6.23.
inline double to_unit(std::uint32_t bits) {
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-32;
}

template <std::size_t N>
inline double horner(const double (&c)[N], double x) {
  double acc = c[N - 1];
  for (std::size_t k = N - 1; k-- > 0;) acc = acc * x + c[k];
  return acc;
}

// Wichura, Algorithm AS 241 (PPND16), Appl. Statist. 37 (1988).
constexpr double kA[] = {3.3871328727963666080e0, 1.3314166789178437745e+2,
                         1.9715909503065514427e+3, 1.3731693765509461125e+4,
                         4.5921953931549871457e+4, 6.7265770927008700853e+4,
                         3.3430575583588128105e+4, 2.5090809287301226727e+3};
constexpr double kB[] = {1.0,
                         4.2313330701600911252e+1, 6.8718700749205790830e+2,
                         5.3941960214247511077e+3, 2.1213794301586595867e+4,
                         3.9307895800092710610e+4, 2.8729085735721942674e+4,
                         5.2264952788528545610e+3};
constexpr double kC[] = {1.42343711074968357734e0, 4.63033784615654529590e0,
                         5.76949722146069140550e0, 3.64784832476320460504e0,
                         1.27045825245236838258e0, 2.41780725177450611770e-1,
                         2.27238449892691845833e-2, 7.74545014278341407640e-4};
constexpr double kD[] = {1.0,
                         2.05319162663775882187e0, 1.67638483018380384940e0,
                         6.89767334985100004550e-1, 1.48103976427480074590e-1,
                         1.51986665636164571966e-2, 5.47593808499534494600e-4,
                         1.05075007164441684324e-9};
constexpr double kE[] = {6.65790464350110377720e0, 5.46378491116411436990e0,
                         1.78482653991729133580e0, 2.96560571828504891230e-1,
                         2.65321895265761230930e-2, 1.24266094738807843860e-3,
                         2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr double kF[] = {1.0,
                         5.99832206555887937690e-1, 1.36929880922735805310e-1,
                         1.48753612908506148525e-2, 7.86869131145613259100e-4,
                         1.84631831751005468180e-5, 1.42151175831644588870e-7,
                         2.04426310338993978564e-15};

}  // namespace

double normal_quantile(double p) {
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * horner(kA, r) / horner(kB, r);
  }
  return normal_quantile_tail(p);
}

double normal_quantile_tail(double p) {
  const double q = p - 0.5;
  double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
  double z;
  if (r <= 5.0) {
    r -= 1.6;
    z = horner(kC, r) / horner(kD, r);
  } else {
    r -= 5.0;
    z = horner(kE, r) / horner(kF, r);
  }
  return q < 0.0 ? -z : z;
}

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RngStream RngStream::substream(std::uint64_t k) const {
  return RngStream{seed, mix64(stream ^ mix64(k + 1))};
}

void fill_standard_normals(const RngStream& rng, std::uint64_t sheet_index,
                           std::span<double> out) {
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(rng.seed),
                                            static_cast<std::uint32_t>(rng.seed >> 32)};
  const auto sheet = static_cast<std::uint32_t>(sheet_index);
  const auto stream_lo = static_cast<std::uint32_t>(rng.stream);
  const auto stream_hi = static_cast<std::uint32_t>(rng.stream >> 32);
  const std::size_t blocks = (out.size() + 3) / 4;

  // Uniforms first, then the central rational approximation over the whole
  // chunk (branch-free, vectorisable), then a pass that redoes the ~15% of
  // slots falling in the tails.
  constexpr std::size_t kChunk = 256;
  alignas(64) double u[4 * kChunk];
  alignas(64) double z[4 * kChunk];
  for (std::size_t base = 0; base < blocks; base += kChunk) {
    const std::size_t len = std::min(kChunk, blocks - base);
    for (std::size_t k = 0; k < len; ++k) {
      const auto r = philox4x32(
          {static_cast<std::uint32_t>(base + k), sheet, stream_lo, stream_hi}, key);
      for (std::size_t w = 0; w < 4; ++w) u[4 * k + w] = to_unit(r[w]);
    }
    const std::size_t slots = 4 * len;
    for (std::size_t k = 0; k < slots; ++k) {
      const double q = u[k] - 0.5;
      const double r = 0.180625 - q * q;
      z[k] = q * horner(kA, r) / horner(kB, r);
    }
    for (std::size_t k = 0; k < slots; ++k) {
      if (std::abs(u[k] - 0.5) > 0.425) z[k] = normal_quantile_tail(u[k]);
    }
    const std::size_t first = 4 * base;
    const std::size_t avail = std::min(slots, out.size() - first);
    std::copy_n(z, avail, out.begin() + static_cast<std::ptrdiff_t>(first));
  }
}

}  // namespace yf
