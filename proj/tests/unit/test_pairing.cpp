#include "doctest.h"

#include "csctop/pairing.hpp"

using namespace csctop;

TEST_CASE("pair_code enumerates the diagonal order") {
    CHECK(pair_code(0, 0) == 0);
    CHECK(pair_code(1, 0) == 1);
    CHECK(pair_code(0, 1) == 2);
    CHECK(pair_code(2, 0) == 3);
    CHECK(pair_code(1, 1) == 4);
    CHECK(pair_code(0, 2) == 5);
}

TEST_CASE("pair_code and unpair_code are mutually inverse") {
    for (std::uint64_t z = 0; z < 5000; ++z) {
        auto [a, b] = unpair_code(z);
        CHECK(pair_code(a, b) == z);
    }
    for (std::uint64_t a = 0; a < 60; ++a) {
        for (std::uint64_t b = 0; b < 60; ++b) {
            auto [x, y] = unpair_code(pair_code(a, b));
            CHECK(x == a);
            CHECK(y == b);
        }
    }
}

TEST_CASE("pair_code handles large inputs without overflow") {
    const std::uint64_t big = 2'000'000'000ULL;
    auto [a, b] = unpair_code(pair_code(big, big / 2));
    CHECK(a == big);
    CHECK(b == big / 2);
    CHECK_THROWS_AS(pair_code(1ULL << 63, 1ULL << 63), std::overflow_error);
}

TEST_CASE("zigzag_code is a bijection between integers and naturals") {
    CHECK(zigzag_code(0) == 0);
    CHECK(zigzag_code(-1) == 1);
    CHECK(zigzag_code(1) == 2);
    CHECK(zigzag_code(-2) == 3);
    CHECK(zigzag_code(2) == 4);
    for (std::int64_t n = -500; n <= 500; ++n) {
        CHECK(unzigzag_code(zigzag_code(n)) == n);
    }
    for (std::uint64_t z = 0; z < 1000; ++z) {
        CHECK(zigzag_code(unzigzag_code(z)) == z);
    }
}
