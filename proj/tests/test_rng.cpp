#include <doctest.h>

#include "core/rng.hpp"

using namespace aoc;

// Known-answer vectors for Philox 4x32-10 from the Random123 reference
// distribution (kat_vectors).
TEST_CASE("philox4x32-10 reference vectors") {
    {
        const auto out = philox4x32({0u, 0u, 0u, 0u}, {0u, 0u});
        CHECK(out[0] == 0x6627e8d5u);
        CHECK(out[1] == 0xe169c58du);
        CHECK(out[2] == 0xbc57ac4cu);
        CHECK(out[3] == 0x9b00dbd8u);
    }
    {
        const auto out = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                    {0xffffffffu, 0xffffffffu});
        CHECK(out[0] == 0x408f276du);
        CHECK(out[1] == 0x41c83b0eu);
        CHECK(out[2] == 0xa20bc7c6u);
        CHECK(out[3] == 0x6d5451fdu);
    }
    {
        const auto out = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                    {0xa4093822u, 0x299f31d0u});
        CHECK(out[0] == 0xd16cfe09u);
        CHECK(out[1] == 0x94fdccebu);
        CHECK(out[2] == 0x5001e420u);
        CHECK(out[3] == 0x24126ea1u);
    }
}

TEST_CASE("counter draws are pure functions of key and counter") {
    const CounterRng a(42), b(42), c(43);
    CHECK(a.bits(RngStream::test, 1, 2, 3) == b.bits(RngStream::test, 1, 2, 3));
    CHECK(a.bits(RngStream::test, 1, 2, 3) != c.bits(RngStream::test, 1, 2, 3));
    CHECK(a.bits(RngStream::test, 1, 2, 3) != a.bits(RngStream::test, 1, 2, 4));
    CHECK(a.bits(RngStream::test, 1, 2, 3) != a.bits(RngStream::battery_gen, 1, 2, 3));
}

TEST_CASE("uniform01 lies in [0,1) and fills the interval") {
    const CounterRng rng(7);
    double lo = 1.0, hi = 0.0;
    for (uint32_t i = 0; i < 10000; ++i) {
        const double u = rng.uniform01(RngStream::test, i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("uniform_int covers the inclusive range uniformly enough") {
    const CounterRng rng(11);
    int counts[5] = {0, 0, 0, 0, 0};
    for (uint32_t i = 0; i < 50000; ++i) {
        const int64_t v = rng.uniform_int(3, 7, RngStream::test, i);
        REQUIRE(v >= 3);
        REQUIRE(v <= 7);
        ++counts[v - 3];
    }
    for (int k = 0; k < 5; ++k) CHECK(counts[k] > 9000); // expected 10000 each
}

TEST_CASE("uniform_real respects half-open bounds") {
    const CounterRng rng(5);
    for (uint32_t i = 0; i < 1000; ++i) {
        const double v = rng.uniform_real(1.5, 2.5, RngStream::test, i);
        CHECK(v >= 1.5);
        CHECK(v < 2.5);
    }
}
