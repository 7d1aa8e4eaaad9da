#include "rmt/rng.hpp"

#include <cmath>

namespace rmt {

namespace {

constexpr std::uint32_t kW32A = 0x9E3779B9u;
constexpr std::uint32_t kW32B = 0xBB67AE85u;
constexpr std::uint32_t kM4x32A = 0xD2511F53u;
constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM4x32A, ctr[0], hi0, lo0);
        mulhilo(kM4x32B, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW32A;
        key[1] += kW32B;
    }
    return ctr;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t replica, std::uint64_t stream) {
    key_ = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    // replica and stream occupy the high 64 bits of the 128-bit counter;
    // the low 64 bits count blocks within the stream
    const std::uint64_t hi = replica * 0x9E3779B97F4A7C15ull + stream;
    prefix_ = {static_cast<std::uint32_t>(hi), static_cast<std::uint32_t>(hi >> 32)};
}

void CounterRng::refill() {
    const std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(block_index_),
                                              static_cast<std::uint32_t>(block_index_ >> 32),
                                              prefix_[0], prefix_[1]};
    buf_ = Philox4x32::block(ctr, key_);
    ++block_index_;
    pos_ = 0;
}

std::uint64_t CounterRng::next_u64() {
    if (pos_ > 2) refill();
    const std::uint64_t lo = buf_[static_cast<std::size_t>(pos_)];
    const std::uint64_t hi = buf_[static_cast<std::size_t>(pos_ + 1)];
    pos_ += 2;
    return (hi << 32) | lo;
}

double CounterRng::uniform() {
    // 53 random bits mapped to (0,1); offset by half an ulp to avoid 0
    const std::uint64_t r = next_u64() >> 11;
    return (static_cast<double>(r) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_normal_ = true;
    return r * std::cos(theta);
}

} // namespace rmt
