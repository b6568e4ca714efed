#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <random>

#include "maskspread/mask_ensemble.hpp"

using maskspread::MaskEnsemble;
using maskspread::Matrix;

TEST_CASE("from_efficiencies builds the outer-product matrix") {
    auto e = MaskEnsemble::from_efficiencies({0.2, 0.5, 1.0}, {0.3, 0.5, 1.0}, 0.6,
                                             {0.3, 0.6, 0.1});
    CHECK(e.rank_one());
    // row 3 (no-mask transmitter): eps_out = 1, so entries are eps_in_j * T
    CHECK(e.t(2, 0) == doctest::Approx(0.12).epsilon(1e-15));
    CHECK(e.t(2, 1) == doctest::Approx(0.30).epsilon(1e-15));
    CHECK(e.t(2, 2) == doctest::Approx(0.60).epsilon(1e-15));
    // exact product round-trip everywhere
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(e.t(i, j) == e.eps_out()[i] * e.eps_in()[j] * 0.6);
}

TEST_CASE("single no-mask type reduces to the baseline") {
    auto e = MaskEnsemble::from_efficiencies({1.0}, {1.0}, 0.6, {1.0});
    CHECK(e.t(0, 0) == doctest::Approx(0.6));
    CHECK(e.labels()[0] == "type-1");
}

TEST_CASE("inward/outward trade-off ensemble has equal diagonal products") {
    auto e = MaskEnsemble::from_efficiencies({0.3, 0.7, 1.0}, {0.7, 0.3, 1.0}, 0.5,
                                             {0.4, 0.4, 0.2});
    CHECK(e.eps_in()[0] * e.eps_out()[0] == doctest::Approx(0.21).epsilon(1e-15));
    CHECK(e.eps_in()[1] * e.eps_out()[1] == doctest::Approx(0.21).epsilon(1e-15));
    CHECK(e.eps_in()[2] * e.eps_out()[2] == doctest::Approx(1.0));
}

TEST_CASE("from_matrix validation") {
    CHECK_NOTHROW(MaskEnsemble::from_matrix({{0.5}}, {1.0}));
    CHECK_NOTHROW(MaskEnsemble::from_matrix({{0.9, 0.1}, {0.1, 0.9}}, {0.5, 0.5}));
    CHECK_THROWS_AS(MaskEnsemble::from_matrix({{0.9, 1.5}, {0.1, 0.9}}, {0.5, 0.5}),
                    std::invalid_argument);
    // zero entries only allowed in permissive mode
    CHECK_THROWS_AS(MaskEnsemble::from_matrix({{0.0}}, {1.0}), std::invalid_argument);
    CHECK_NOTHROW(MaskEnsemble::from_matrix({{0.0}}, {1.0}, {}, false));
    auto e = MaskEnsemble::from_matrix({{0.9, 0.1}, {0.1, 0.9}}, {0.5, 0.5});
    CHECK_FALSE(e.rank_one());
}

TEST_CASE("prevalence validation") {
    CHECK_THROWS_AS(MaskEnsemble::from_matrix({{0.5}}, {0.9}), std::invalid_argument);
    CHECK_THROWS_AS(
        MaskEnsemble::from_matrix({{0.5, 0.5}, {0.5, 0.5}}, {1.0, 0.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(MaskEnsemble::from_efficiencies({0.5}, {0.5}, 0.0, {1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(MaskEnsemble::from_efficiencies({1.5}, {0.5}, 0.5, {1.0}),
                    std::invalid_argument);
}

TEST_CASE("permuting types permutes the matrix consistently") {
    const std::vector<double> eps_in{0.2, 0.5, 1.0}, eps_out{0.3, 0.5, 1.0},
        m{0.3, 0.6, 0.1};
    auto base = MaskEnsemble::from_efficiencies(eps_in, eps_out, 0.6, m);

    std::vector<std::size_t> perm{2, 0, 1};
    std::vector<double> pin(3), pout(3), pm(3);
    for (std::size_t i = 0; i < 3; ++i) {
        pin[i] = eps_in[perm[i]];
        pout[i] = eps_out[perm[i]];
        pm[i] = m[perm[i]];
    }
    auto permuted = MaskEnsemble::from_efficiencies(pin, pout, 0.6, pm);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(permuted.t(i, j) == doctest::Approx(base.t(perm[i], perm[j]))
                                          .epsilon(1e-15));
}
