#include <doctest.h>

#include "buffon/bit_source.hpp"

using buffon::ReplaySource;
using buffon::SeededSource;

TEST_CASE("replay source yields its stored sequence") {
    ReplaySource source("101");
    CHECK(source.consumed() == 0);
    CHECK(source.next_bit() == 1);
    CHECK(source.next_bit() == 0);
    CHECK(source.next_bit() == 1);
    CHECK(source.consumed() == 3);
    CHECK_THROWS_AS(source.next_bit(), buffon::ExhaustedError);
}

TEST_CASE("replay source rejects non-binary input") {
    CHECK_THROWS_AS(ReplaySource("10x"), buffon::DomainError);
    CHECK_THROWS_AS(ReplaySource(std::vector<int>{0, 2}),
                    buffon::DomainError);
}

TEST_CASE("single-bit replay exhausts on the second call") {
    ReplaySource source("1");
    CHECK(source.next_bit() == 1);
    CHECK_THROWS_AS(source.next_bit(), buffon::ExhaustedError);
}

TEST_CASE("equal seeds give identical streams") {
    SeededSource a(42, 0);
    SeededSource b(42, 0);
    for (int i = 0; i < 10000; ++i) {
        CHECK(a.next_bit() == b.next_bit());
    }
}

TEST_CASE("distinct stream indices diverge quickly") {
    SeededSource a(42, 0);
    SeededSource b(42, 1);
    bool differ = false;
    for (int i = 0; i < 64 && !differ; ++i) {
        differ = a.next_bit() != b.next_bit();
    }
    CHECK(differ);
}

TEST_CASE("seeded bits pass a basic bias test") {
    SeededSource source(42, 0);
    const int n = 1'000'000;
    long long ones = 0;
    for (int i = 0; i < n; ++i) {
        ones += source.next_bit();
    }
    double mean = static_cast<double>(ones) / n;
    CHECK(std::abs(mean - 0.5) < 0.002);  // 4-sigma band for fair bits
    CHECK(source.consumed() == static_cast<std::uint64_t>(n));
}
