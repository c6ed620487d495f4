#include "robustgap/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rgap::rng {

namespace philox {

namespace {
inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}
} // namespace

std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& ctr,
                                   const std::array<std::uint32_t, 2>& key) {
    std::uint32_t x0 = ctr[0], x1 = ctr[1], x2 = ctr[2], x3 = ctr[3];
    std::uint32_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, x0, hi0, lo0);
        mulhilo(kMul1, x2, hi1, lo1);
        const std::uint32_t n0 = hi1 ^ x1 ^ k0;
        const std::uint32_t n1 = lo1;
        const std::uint32_t n2 = hi0 ^ x3 ^ k1;
        const std::uint32_t n3 = lo0;
        x0 = n0; x1 = n1; x2 = n2; x3 = n3;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return {x0, x1, x2, x3};
}

} // namespace philox

namespace detail {

// Rational minimax fits for the inverse normal CDF, derived for this library
// (central: |p-1/2| <= 0.47575; tail: p in [2^-54, 0.02425], r = sqrt(-ln p)).
const double kCentralNum[7] = {
    0x1.40d9320f280b0p+1, -0x1.8b1c13454561ap+4, 0x1.312327381b7ecp+6,
    -0x1.cb4f9100df9f7p+5, -0x1.ad657633366eap+5, -0x1.c84e7ade040c6p+2,
    0x1.e731fc6faac8ep+5,
};
const double kCentralDen[7] = {
    0x1.0000000000000p+0, -0x1.5cc31e5fe85d8p+3, 0x1.3c588d5cc7d38p+5,
    -0x1.6bb285655063ep+5, -0x1.f250b350ac4a3p+3, 0x1.045589d4891c6p+4,
    0x1.21dd0ac865c2bp+5,
};
const double kTailNum[6] = {
    -0x1.82458edf08102p+1, -0x1.619e4cbd3c58ap+2, 0x1.45233490f8606p+3,
    0x1.13cd637f48af1p+2, -0x1.b2ea4ea68451dp+1, -0x1.6509b65f8f69dp-1,
};
const double kTailDen[6] = {
    0x1.0000000000000p+0, 0x1.5358871873b7cp+2, 0x1.04a16ff70ac2dp+1,
    -0x1.3583c2addbd10p+1, -0x1.f88aaefb24782p-2, -0x1.9964978265e58p-18,
};

} // namespace detail

double inv_normal_tail_pos(double r) {
    using namespace detail;
    double num = kTailNum[5];
    double den = kTailDen[5];
    for (int i = 4; i >= 0; --i) {
        num = num * r + kTailNum[i];
        den = den * r + kTailDen[i];
    }
    return num / den;
}

double inv_normal_cdf(double p) {
    using namespace detail;
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inv_normal_cdf: p must be in (0,1)");
    if (p < kTailSplit)
        return -inv_normal_tail_pos(std::sqrt(-std::log(p)));
    if (p > 1.0 - kTailSplit)
        return inv_normal_tail_pos(std::sqrt(-std::log(1.0 - p)));
    const double q = p - 0.5;
    const double r = q * q;
    double num = kCentralNum[6];
    double den = kCentralDen[6];
    for (int i = 5; i >= 0; --i) {
        num = num * r + kCentralNum[i];
        den = den * r + kCentralDen[i];
    }
    return q * (num / den);
}

void Stream::refill() {
    const auto out = philox::block(ctr_, key_);
    buf_[0] = static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32);
    buf_[1] = static_cast<std::uint64_t>(out[2]) | (static_cast<std::uint64_t>(out[3]) << 32);
    idx_ = 0;
    ++ctr_[0];  // < 2^32 blocks per stream, plenty for any single trial
}

std::int64_t Stream::next_poisson(double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("next_poisson: lambda must be > 0");
    const double u = next_unit();
    double p = std::exp(-lambda);
    double cum = p;
    std::int64_t k = 0;
    const std::int64_t cap = 1000 + static_cast<std::int64_t>(100.0 * lambda);
    while (u > cum && k < cap) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cum += p;
    }
    return k;
}

} // namespace rgap::rng
