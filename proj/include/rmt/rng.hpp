#pragma once

#include <array>
#include <cstdint>

namespace rmt {

// Philox4x32-10 block cipher (Salmon et al., SC 2011). Counter-based, so a
// draw is a pure function of (key, counter); replicas and entries can be
// generated in any order, on any platform, with identical results.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);
};

// Stream of doubles keyed by (seed, replica, stream). Draw order within one
// stream is sequential; distinct (replica, stream) pairs never collide.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t replica = 0, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    // uniform on (0,1), never exactly 0 or 1
    double uniform();
    // standard normal via Box-Muller, pairs cached
    double normal();

  private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 2> prefix_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
    bool has_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

} // namespace rmt
