#pragma once

#include <array>
#include <cstdint>

// Counter-based random streams. Each (seed, trial, attempt) triple names an
// independent stream, so Monte Carlo trials can be evaluated in any order, on
// any number of workers, with bit-identical results. The block function is
// Philox-4x32 with 10 rounds.

namespace rgap::rng {

namespace philox {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

/// One 10-round block: 4 counter words + 2 key words -> 4 output words.
std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& ctr,
                                   const std::array<std::uint32_t, 2>& key);

} // namespace philox

/// Map a 64-bit word to (0,1) with 52-bit resolution; never returns 0 or 1.
inline double to_unit(std::uint64_t u) {
    return (static_cast<double>(u >> 12) + 0.5) * 0x1p-52;
}

/// Inverse standard normal CDF for p in [2^-54, 1 - 2^-54].
/// Rational approximations fitted for this library; relative error < 3e-9.
double inv_normal_cdf(double p);

/// Positive tail branch: returns |Phi^-1(p)| for p = exp(-r*r), p <= kTailSplit.
/// Exposed so the vector kernels can defer tail lanes to the exact scalar path.
double inv_normal_tail_pos(double r);

namespace detail {
constexpr double kTailSplit = 0.02425;  // central/tail boundary on p
extern const double kCentralNum[7];
extern const double kCentralDen[7];
extern const double kTailNum[6];
extern const double kTailDen[6];
} // namespace detail

/// Sequential word stream over the (seed, trial, attempt) counter space.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t trial, std::uint32_t attempt = 0)
        : ctr_{0u, attempt,
               static_cast<std::uint32_t>(trial),
               static_cast<std::uint32_t>(trial >> 32)},
          key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)} {}

    std::uint64_t next_u64() {
        if (idx_ == 2) refill();
        return buf_[idx_++];
    }

    double next_unit() { return to_unit(next_u64()); }

    double next_normal() { return inv_normal_cdf(next_unit()); }

    /// +1 or -1 from the top bit of the next word.
    double next_sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

    /// Poisson draw by inversion (sequential search); one uniform per draw.
    std::int64_t next_poisson(double lambda);

private:
    void refill();

    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 2> key_;
    std::uint64_t buf_[2] = {0, 0};
    int idx_ = 2;
};

} // namespace rgap::rng
