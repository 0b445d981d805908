#include "qdarwin/branch_model.hpp"
#include "qdarwin/entropy.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace qdarwin;

namespace {

OverlapVector random_overlaps(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> ov(n);
    for (double& o : ov) {
        const double r = u(rng);
        o = r < 0.15 ? 0.0 : (r < 0.3 ? 1.0 : u(rng));
    }
    return OverlapVector(ov);
}

FractionSelection random_selection(std::mt19937_64& rng, std::size_t n) {
    std::bernoulli_distribution coin(0.5);
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k) {
        if (coin(rng)) idx.push_back(k);
    }
    return FractionSelection(idx);
}

}  // namespace

TEST_CASE("domain types validate their invariants") {
    CHECK_THROWS_AS(OverlapVector(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(OverlapVector({0.5, 1.5}), std::domain_error);
    CHECK_THROWS_AS(PVector({-0.1}), std::domain_error);
    CHECK_THROWS_AS(FractionSelection({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS((GhzJunkConfig{3, 4}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((GhzJunkConfig{0, 0}.validate()), std::invalid_argument);

    const FractionSelection sel{2, 0};
    CHECK(sel.indices()[0] == 0);
    CHECK(sel.complement(4).indices().size() == 2);
    CHECK(sel.complement(4).contains(1));
    CHECK_THROWS_AS(sel.check_bounds(2), std::out_of_range);
}

TEST_CASE("GHZ+junk overlaps put the correlated qubits first") {
    CHECK(ghz_junk_overlaps({3, 1}) == OverlapVector{0, 1, 1});
    CHECK(ghz_junk_overlaps({3, 3}) == OverlapVector{0, 0, 0});
    const auto product = ghz_junk_overlaps({3, 0});
    CHECK(product == OverlapVector{1, 1, 1});
    CHECK(system_entropy(product) == 0.0);
    CHECK(qmi_exact(product, {0, 2}) == 0.0);
}

TEST_CASE("iCNOT overlaps") {
    CHECK(icnot_overlaps(PVector{1.0}) == OverlapVector{0.0});
    CHECK(icnot_overlaps(PVector{0.0}) == OverlapVector{1.0});
    CHECK(icnot_overlaps(PVector{0.75})[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("subset overlap") {
    CHECK(subset_overlap({0, 1, 1}, {1, 2}) == 1.0);
    CHECK(subset_overlap({0, 1, 1}, {0, 1}) == 0.0);
    CHECK(subset_overlap({0.5, 0.8}, {0, 1}) == doctest::Approx(0.4));
    CHECK(subset_overlap({0.5, 0.8}, {}) == 1.0);
    CHECK_THROWS_AS(subset_overlap({0.5, 0.8}, {2}), std::out_of_range);
}

TEST_CASE("QMI for GHZ+junk fractions") {
    const auto ov = ghz_junk_overlaps({10, 3});
    const double ln2 = std::numbers::ln2;
    CHECK(system_entropy(ov) == doctest::Approx(ln2));
    CHECK(qmi_exact(ov, {1}) == doctest::Approx(ln2));
    CHECK(qmi_exact(ov, {0, 1, 2}) == doctest::Approx(2 * ln2));
    CHECK(qmi_exact(ov, {5, 6, 7}) == 0.0);
    CHECK(qmi_exact(ov, {0, 1, 2, 9}) == doctest::Approx(2 * ln2));
    CHECK(qmi_exact(ov, {}) == 0.0);
}

TEST_CASE("QMI when the complement is junk") {
    // Qubit 1 is junk, so {0} holds every correlation: 2·h(0.75).
    CHECK(qmi_exact({0.5, 1.0}, {0}) == doctest::Approx(1.1246702892376166).epsilon(1e-14));
    CHECK(system_entropy({0.5}) == doctest::Approx(0.5623351446188083).epsilon(1e-14));
}

TEST_CASE("complement identity, monotonicity and range on random states") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + rng() % 20;
        const auto ov = random_overlaps(rng, n);
        const auto sel = random_selection(rng, n);
        const double s = system_entropy(ov);
        const double i_sel = qmi_exact(ov, sel);
        const double i_rest = qmi_exact(ov, sel.complement(n));
        CHECK(std::abs(i_sel + i_rest - 2 * s) <= 1e-12);
        CHECK(i_sel >= -1e-15);
        CHECK(i_sel <= 2 * s + 1e-12);

        // Adding any qubit never lowers the QMI.
        std::vector<std::size_t> grown(sel.indices().begin(), sel.indices().end());
        for (std::size_t k = 0; k < n; ++k) {
            if (!sel.contains(k)) {
                grown.push_back(k);
                break;
            }
        }
        CHECK(qmi_exact(ov, FractionSelection(grown)) + 1e-12 >= i_sel);
    }
}

TEST_CASE("junk qubits change nothing") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        const auto ov = random_overlaps(rng, n);
        std::vector<double> extended(ov.values().begin(), ov.values().end());
        extended.push_back(1.0);
        const OverlapVector with_junk(extended);
        const auto sel = random_selection(rng, n);
        std::vector<std::size_t> plus(sel.indices().begin(), sel.indices().end());
        plus.push_back(n);
        CHECK(qmi_exact(with_junk, sel) == doctest::Approx(qmi_exact(ov, sel)).epsilon(1e-14));
        CHECK(qmi_exact(with_junk, FractionSelection(plus)) == doctest::Approx(qmi_exact(ov, sel)).epsilon(1e-14));
        CHECK(system_entropy(with_junk) == system_entropy(ov));
    }
}

TEST_CASE("GHZ+junk recognition") {
    std::size_t m = 99;
    CHECK(is_ghz_junk({1, 0, 1, 0}, &m));
    CHECK(m == 2);
    CHECK_FALSE(is_ghz_junk({1, 0.5}));
}
