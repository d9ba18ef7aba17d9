#pragma once

#include <array>
#include <cstdint>

namespace aoc {

// Philox 4x32-10 counter-based generator (Salmon et al., SC 2011).
//
// Every draw in the project is a pure function of (key, counter): there is
// no sequential generator state, so results are bitwise identical no matter
// how work is scheduled across threads. The 64-bit key carries the user
// seed; the four counter words identify the draw site.
std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key);

// Fixed stream tags keep draw sites from colliding across subsystems.
enum class RngStream : uint32_t {
    battery_gen = 0x01,
    sfw_bernoulli = 0x02,
    test = 0xF0,
};

class CounterRng {
public:
    explicit CounterRng(uint64_t seed) : seed_(seed) {}

    uint64_t seed() const { return seed_; }

    // 64 uniform bits for counter (stream, a, b, c).
    uint64_t bits(RngStream stream, uint32_t a, uint32_t b = 0, uint32_t c = 0) const;

    // Uniform in [0,1) with 53-bit resolution.
    double uniform01(RngStream stream, uint32_t a, uint32_t b = 0, uint32_t c = 0) const;

    // Uniform real in [lo, hi).
    double uniform_real(double lo, double hi,
                        RngStream stream, uint32_t a, uint32_t b = 0, uint32_t c = 0) const;

    // Uniform integer in [lo, hi], both ends inclusive.
    int64_t uniform_int(int64_t lo, int64_t hi,
                        RngStream stream, uint32_t a, uint32_t b = 0, uint32_t c = 0) const;

    // One Bernoulli(p) draw.
    bool bernoulli(double p, RngStream stream, uint32_t a, uint32_t b = 0, uint32_t c = 0) const;

private:
    uint64_t seed_;
};

} // namespace aoc
