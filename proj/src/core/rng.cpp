#include "core/rng.hpp"

namespace aoc {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mul_hi_lo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    const uint64_t p = static_cast<uint64_t>(a) * b;
    hi = static_cast<uint32_t>(p >> 32);
    lo = static_cast<uint32_t>(p);
}

inline std::array<uint32_t, 4> round_once(const std::array<uint32_t, 4>& c,
                                          const std::array<uint32_t, 2>& k) {
    uint32_t hi0, lo0, hi1, lo1;
    mul_hi_lo(kPhiloxM0, c[0], hi0, lo0);
    mul_hi_lo(kPhiloxM1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

} // namespace

std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key) {
    std::array<uint32_t, 4> state = counter;
    std::array<uint32_t, 2> k = key;
    for (int round = 0; round < 10; ++round) {
        state = round_once(state, k);
        if (round < 9) {
            k[0] += kPhiloxW0;
            k[1] += kPhiloxW1;
        }
    }
    return state;
}

uint64_t CounterRng::bits(RngStream stream, uint32_t a, uint32_t b, uint32_t c) const {
    const std::array<uint32_t, 4> counter = {static_cast<uint32_t>(stream), a, b, c};
    const std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed_),
                                         static_cast<uint32_t>(seed_ >> 32)};
    const auto out = philox4x32(counter, key);
    return (static_cast<uint64_t>(out[1]) << 32) | out[0];
}

double CounterRng::uniform01(RngStream stream, uint32_t a, uint32_t b, uint32_t c) const {
    return static_cast<double>(bits(stream, a, b, c) >> 11) * 0x1.0p-53;
}

double CounterRng::uniform_real(double lo, double hi,
                                RngStream stream, uint32_t a, uint32_t b, uint32_t c) const {
    return lo + (hi - lo) * uniform01(stream, a, b, c);
}

int64_t CounterRng::uniform_int(int64_t lo, int64_t hi,
                                RngStream stream, uint32_t a, uint32_t b, uint32_t c) const {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(bits(stream, a, b, c) % span);
}

bool CounterRng::bernoulli(double p, RngStream stream, uint32_t a, uint32_t b, uint32_t c) const {
    return uniform01(stream, a, b, c) < p;
}

} // namespace aoc
