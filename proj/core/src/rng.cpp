#include "kage/rng.hpp"

#include <cmath>
#include <numbers>

namespace kage {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

constexpr std::uint32_t kFoldDomain = 0u;
constexpr std::uint32_t kSplitDomain = 0x85EBCA6Bu;

inline std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
inline std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }
inline std::uint64_t join(std::uint32_t lo, std::uint32_t hi) {
    return static_cast<std::uint64_t>(lo) | (static_cast<std::uint64_t>(hi) << 32);
}

RngKey derive(RngKey key, std::uint64_t data, std::uint32_t domain) {
    const auto out = philox4x32({lo32(data), hi32(data), lo32(key.hi) ^ domain, hi32(key.hi)},
                                {lo32(key.lo), hi32(key.lo)});
    return RngKey{join(out[0], out[1]), join(out[2], out[3])};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
        ctr = {hi32(p1) ^ ctr[1] ^ key[0], lo32(p1), hi32(p0) ^ ctr[3] ^ key[1], lo32(p0)};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

RngKey make_key(std::uint64_t seed) { return derive(RngKey{0, 0}, seed, kFoldDomain); }

RngKey fold_in(RngKey key, std::uint64_t data) { return derive(key, data, kFoldDomain); }

std::vector<RngKey> split(RngKey key, std::size_t n) {
    std::vector<RngKey> keys;
    keys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) keys.push_back(derive(key, i, kSplitDomain));
    return keys;
}

void RngStream::refill() {
    buffer_ = philox4x32({lo32(counter_), hi32(counter_), lo32(key_.hi), hi32(key_.hi)},
                         {lo32(key_.lo), hi32(key_.lo)});
    ++counter_;
    available_ = 4;
}

std::uint32_t RngStream::next_u32() {
    if (available_ == 0) refill();
    return buffer_[4 - available_--];
}

std::uint64_t RngStream::next_u64() {
    const std::uint32_t a = next_u32();
    const std::uint32_t b = next_u32();
    return join(a, b);
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1u;
    if (range == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit span
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % range);
}

bool RngStream::bernoulli(double p) { return uniform() < p; }

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

double RngStream::normal(double mean, double stddev) { return mean + stddev * normal(); }

double RngStream::poisson(double lambda) {
    if (lambda <= 0.0) return 0.0;
    if (lambda > 30.0) return std::max(0.0, std::round(lambda + std::sqrt(lambda) * normal()));
    const double u = uniform();
    double p = std::exp(-lambda);
    double cdf = p;
    int k = 0;
    while (u > cdf && k < 1000) {
        ++k;
        p *= lambda / k;
        cdf += p;
    }
    return static_cast<double>(k);
}

}  // namespace kage
