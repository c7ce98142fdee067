// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The gsdet authors

#include "doctest.h"

#include <cmath>

#include "gsdet/channel.hpp"
#include "gsdet/rng.hpp"

using namespace gsdet;

TEST_CASE("snr_to_n0 direct evaluations") {
    CHECK(snr_to_n0(16, 0.0) == doctest::Approx(16.0));
    CHECK(snr_to_n0(8, 10.0) == doctest::Approx(0.8));
    CHECK(snr_to_n0(1, 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(snr_to_n0(0, 0.0), std::invalid_argument);
}

TEST_CASE("gen_iid is deterministic in the seed") {
    const ComplexMatrix a = gen_iid(8, 4, 99);
    const ComplexMatrix b = gen_iid(8, 4, 99);
    CHECK(a.data() == b.data());
    const ComplexMatrix c = gen_iid(8, 4, 100);
    CHECK(a.data() != c.data());
}

TEST_CASE("gen_iid entries have unit variance") {
    // ~1e6 entries; the sample mean of |h|^2 (variance 1) is then accurate
    // to about 1e-3, comfortably inside the 1% check.
    double acc = 0.0;
    std::size_t count = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const ComplexMatrix h = gen_iid(128, 8, derive_seed(5, t));
        for (const cplx& v : h.data()) acc += std::norm(v);
        count += h.data().size();
    }
    CHECK(acc / static_cast<double>(count) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("columns are asymptotically orthogonal at n_r = 128") {
    // Mean of <h_i, h_j>/n_r over draws; single-draw std is ~1/sqrt(128).
    cplx acc = 0.0;
    const std::size_t draws = 200;
    for (std::uint64_t t = 0; t < draws; ++t) {
        const ComplexMatrix h = gen_iid(128, 2, derive_seed(6, t));
        cplx dot = 0.0;
        for (std::size_t r = 0; r < 128; ++r) dot += std::conj(h(r, 0)) * h(r, 1);
        acc += dot / 128.0;
    }
    CHECK(std::abs(acc / static_cast<double>(draws)) < 0.05);
}

TEST_CASE("kronecker with zero factors is the identity") {
    const ComplexMatrix h = gen_iid(6, 3, 1);
    const ComplexMatrix out = apply_kronecker(h, KroneckerSpec{0.0, 0.0});
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) CHECK(out(i, j) == h(i, j));
}

TEST_CASE("kronecker on a 1x1 system is the identity for any factor") {
    ComplexMatrix h(1, 1);
    h(0, 0) = cplx{0.7, -0.2};
    for (double z : {0.0, 0.3, 0.9, 0.999}) {
        const ComplexMatrix out = apply_kronecker(h, KroneckerSpec{z, z});
        CHECK(std::abs(out(0, 0) - h(0, 0)) < 1e-12);
    }
}

TEST_CASE("kronecker column correlation matches the transmit factor") {
    // E[<h_i, h_{i+1}>] / n_r = zeta_t for the exponential model.
    const double zeta_t = 0.5;
    const std::size_t n_r = 32, n_t = 4, draws = 10000;
    const ComplexMatrix c_r = correlation_sqrt(n_r, 0.0);
    const ComplexMatrix c_t = correlation_sqrt(n_t, zeta_t);
    cplx acc = 0.0;
    for (std::uint64_t t = 0; t < draws; ++t) {
        const ComplexMatrix h = apply_kronecker(gen_iid(n_r, n_t, derive_seed(8, t)), c_r, c_t);
        cplx dot = 0.0;
        for (std::size_t r = 0; r < n_r; ++r) dot += std::conj(h(r, 1)) * h(r, 2);
        acc += dot / static_cast<double>(n_r);
    }
    const double est = (acc / static_cast<double>(draws)).real();
    CHECK(est == doctest::Approx(zeta_t).epsilon(0.1));
    CHECK(std::abs(est - zeta_t) < 0.05);
}

TEST_CASE("transmit is exact without noise") {
    ComplexMatrix h = ComplexMatrix::identity(3);
    const ChannelRealization ch{std::move(h), 0.0, 3, 3};
    const std::vector<cplx> s{cplx{1.0}, cplx{}, cplx{}};
    const std::vector<cplx> y = transmit(ch, s, 1);
    CHECK(y == s);
}

TEST_CASE("transmit noise variance estimator") {
    // 1e6 noise samples through zero channel input.
    const std::size_t n_r = 16;
    const double n0 = 0.37;
    ComplexMatrix h = gen_iid(n_r, 2, 4);
    const ChannelRealization ch{std::move(h), n0, n_r, 2};
    const std::vector<cplx> s(2, cplx{});
    double acc = 0.0;
    const std::size_t draws = 62500;
    Rng rng(31);
    for (std::size_t t = 0; t < draws; ++t) {
        const std::vector<cplx> y = transmit(ch, s, rng);
        for (const cplx& v : y) acc += std::norm(v);
    }
    CHECK(acc / static_cast<double>(draws * n_r) == doctest::Approx(n0).epsilon(0.01));
}

TEST_CASE("transmit rejects a wrong-length symbol vector") {
    ComplexMatrix h = gen_iid(4, 2, 9);
    const ChannelRealization ch{std::move(h), 0.1, 4, 2};
    CHECK_THROWS_AS(transmit(ch, std::vector<cplx>(3), 1), std::invalid_argument);
}

TEST_CASE("received energy matches n_r for unit-energy input") {
    // E || H s ||^2 = n_r * ||s||^2 for i.i.d. H.
    const std::size_t n_r = 64, n_t = 8;
    std::vector<cplx> s(n_t, cplx{1.0 / std::sqrt(static_cast<double>(n_t)), 0.0});
    double acc = 0.0;
    const std::size_t draws = 400;
    for (std::uint64_t t = 0; t < draws; ++t) {
        ComplexMatrix h = gen_iid(n_r, n_t, derive_seed(12, t));
        const ChannelRealization ch{std::move(h), 0.0, n_r, n_t};
        const std::vector<cplx> y = transmit(ch, s, t);
        for (const cplx& v : y) acc += std::norm(v);
    }
    CHECK(acc / static_cast<double>(draws) ==
          doctest::Approx(static_cast<double>(n_r)).epsilon(0.05));
}

TEST_CASE("derived seed streams differ") {
    CHECK(derive_seed(1, 0, 0) != derive_seed(1, 1, 0));
    CHECK(derive_seed(1, 0, 0) != derive_seed(2, 0, 0));
    CHECK(derive_seed(1, 0, 1) != derive_seed(1, 1, 0));
}
