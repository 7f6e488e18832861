#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace kage {

// 128-bit key for a counter-based generator (Philox4x32-10). Keys are values:
// deriving a child key never mutates the parent, so any schedule of parallel
// work that derives the same keys sees the same numbers.
struct RngKey {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend bool operator==(const RngKey&, const RngKey&) = default;
};

// One Philox4x32-10 block.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

RngKey make_key(std::uint64_t seed);

// Derives an independent child key tagged by `data`.
RngKey fold_in(RngKey key, std::uint64_t data);

// n independent keys; split(key, n)[i] does not depend on n.
std::vector<RngKey> split(RngKey key, std::size_t n);

// Sequential draws from one key. The stream is a pure function of the key and
// the number of values drawn so far.
class RngStream {
public:
    explicit RngStream(RngKey key) : key_(key) {}

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);
    // Inclusive on both ends. Requires lo <= hi.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    bool bernoulli(double p);
    double normal();
    double normal(double mean, double stddev);
    // Exact inversion for lambda <= 30, normal approximation above.
    double poisson(double lambda);

private:
    void refill();

    RngKey key_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int available_ = 0;
    // Second Box-Muller variate of the last pair.
    double spare_ = 0;
    bool has_spare_ = false;
};

}  // namespace kage
