// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The gsdet authors

#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "gsdet/modem.hpp"
#include "gsdet/rng.hpp"

using namespace gsdet;

TEST_CASE("unit average energy for all supported sizes") {
    for (unsigned b : {2u, 4u, 6u}) {
        const Constellation& c = Constellation::from_bits_per_symbol(b);
        double e = 0.0;
        for (const cplx& p : c.points()) e += std::norm(p);
        CHECK(std::abs(e / static_cast<double>(c.size()) - 1.0) < 1e-12);
    }
}

TEST_CASE("qpsk points have unit magnitude") {
    const Constellation& c = Constellation::qpsk();
    for (const cplx& p : c.points()) CHECK(std::abs(p) == doctest::Approx(1.0));
}

TEST_CASE("64-QAM point set is the normalized odd grid") {
    const Constellation& c = Constellation::qam64();
    const double delta = 1.0 / std::sqrt(42.0);
    std::set<std::pair<int, int>> expected, got;
    for (int a = -7; a <= 7; a += 2)
        for (int b = -7; b <= 7; b += 2) expected.insert({a, b});
    for (const cplx& p : c.points()) {
        const double re = p.real() / delta;
        const double im = p.imag() / delta;
        CHECK(std::abs(re - std::round(re)) < 1e-9);
        CHECK(std::abs(im - std::round(im)) < 1e-9);
        got.insert({static_cast<int>(std::round(re)), static_cast<int>(std::round(im))});
    }
    CHECK(got == expected);
}

TEST_CASE("gray labelling: adjacent levels differ in one bit") {
    for (unsigned b : {2u, 4u, 6u}) {
        const Constellation& c = Constellation::from_bits_per_symbol(b);
        const unsigned ab = c.bits_per_axis();
        const std::uint32_t levels = 1u << ab;
        // Sort axis labels by amplitude and compare neighbours.
        std::vector<std::uint32_t> order(levels);
        for (std::uint32_t v = 0; v < levels; ++v) order[v] = v;
        std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
            return c.axis_level(x) < c.axis_level(y);
        });
        for (std::uint32_t i = 0; i + 1 < levels; ++i) {
            const std::uint32_t x = order[i] ^ order[i + 1];
            CHECK(std::popcount(x) == 1);
        }
    }
}

TEST_CASE("map then hard demap round-trips every label") {
    for (unsigned b : {2u, 4u, 6u}) {
        const Constellation& c = Constellation::from_bits_per_symbol(b);
        std::vector<std::uint8_t> bits;
        for (std::uint32_t label = 0; label < c.size(); ++label)
            for (unsigned j = 0; j < b; ++j)
                bits.push_back(static_cast<std::uint8_t>((label >> (b - 1 - j)) & 1u));
        const std::vector<cplx> sym = map_bits(c, bits);
        CHECK(hard_demap(c, sym) == bits);
    }
}

TEST_CASE("map rejects a bit count that is not a symbol multiple") {
    CHECK_THROWS_AS(map_bits(Constellation::qam64(), std::vector<std::uint8_t>(7)),
                    std::invalid_argument);
}

TEST_CASE("lambda sign convention: positive at a 1-labelled point") {
    // lambda_b = min over 0-labelled minus min over 1-labelled, so it is
    // strictly positive when z sits exactly on a point whose bit is 1.
    const Constellation& c = Constellation::qpsk();
    for (std::uint32_t label = 0; label < c.size(); ++label) {
        const cplx z = c.map_label(label);
        for (unsigned b = 0; b < 2; ++b) {
            const double l = c.lambda_brute(z, b);
            if ((label >> (1 - b)) & 1u)
                CHECK(l > 0.0);
            else
                CHECK(l < 0.0);
        }
    }
}

TEST_CASE("lambda is zero on a decision boundary") {
    const Constellation& c = Constellation::qpsk();
    CHECK(c.lambda_brute(cplx{0.0, 0.3}, 0) == 0.0);
    CHECK(c.lambda_brute(cplx{0.4, 0.0}, 1) == 0.0);
}

TEST_CASE("fast lambda equals the brute-force subset minimum") {
    Rng rng(2024);
    for (unsigned b : {2u, 4u, 6u}) {
        const Constellation& c = Constellation::from_bits_per_symbol(b);
        for (int t = 0; t < 10000; ++t) {
            const cplx z{3.0 * (rng.uniform() - 0.5), 3.0 * (rng.uniform() - 0.5)};
            for (unsigned bit = 0; bit < b; ++bit)
                CHECK(std::abs(c.lambda(z, bit) - c.lambda_brute(z, bit)) < 1e-12);
        }
    }
}

TEST_CASE("lambda sign matches the nearest point's bit off the boundaries") {
    Rng rng(77);
    const Constellation& c = Constellation::qam64();
    for (int t = 0; t < 2000; ++t) {
        const cplx z{2.6 * (rng.uniform() - 0.5), 2.6 * (rng.uniform() - 0.5)};
        const std::uint32_t label = c.hard_nearest(z);
        for (unsigned bit = 0; bit < 6; ++bit) {
            const double l = c.lambda(z, bit);
            if (l == 0.0) continue; // boundary
            const bool bit_is_one = (label >> (5 - bit)) & 1u;
            CHECK(bit_is_one == (l > 0.0));
        }
    }
}

TEST_CASE("real-axis bits depend on Re(z) only") {
    Rng rng(5);
    const Constellation& c = Constellation::qam64();
    for (int t = 0; t < 500; ++t) {
        const double x = 3.0 * (rng.uniform() - 0.5);
        const cplx z1{x, 3.0 * (rng.uniform() - 0.5)};
        const cplx z2{x, 3.0 * (rng.uniform() - 0.5)};
        for (unsigned bit = 0; bit < c.bits_per_axis(); ++bit)
            CHECK(c.lambda(z1, bit) == c.lambda(z2, bit));
    }
}

TEST_CASE("lambda rejects an out-of-range bit index") {
    CHECK_THROWS_AS(Constellation::qpsk().lambda(cplx{}, 2), std::invalid_argument);
    CHECK_THROWS_AS(Constellation::qpsk().lambda_brute(cplx{}, 2), std::invalid_argument);
}
