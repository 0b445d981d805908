#include "qdarwin/accessible_info.hpp"
#include "qdarwin/random.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace qdarwin;

namespace {

constexpr double kLn2 = std::numbers::ln2;

// H(S) + H(E) − H(S,E) for the three outcome classes, written out by hand.
double three_outcome_mi(double p) {
    auto term = [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
    const double h_system = 2 * term(0.5);
    const double h_env = term(0.5 + p) + term(0.5 - p);
    const double h_joint = term(0.5) + term(p) + term(0.5 - p);
    return h_system + h_env - h_joint;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

}  // namespace

TEST_CASE("half product") {
    CHECK(p_half_product({0.0, 0.0}, {0, 1}) == 0.5);
    CHECK(p_half_product({1.0, 0.3}, {0}) == 0.0);
    CHECK(p_half_product({0.5, 0.5}, {0, 1}) == 0.125);
    CHECK(p_half_product({0.5, 0.5}, {}) == 0.5);
    CHECK_THROWS_AS(p_half_product({0.5}, {1}), std::out_of_range);
}

TEST_CASE("accessible information at reference points") {
    CHECK(accessible_mi_from_product(0.5) == 0.0);
    CHECK(accessible_mi_from_product(0.0) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(accessible_mi({0.5, 0.5}, {0, 1}) == doctest::Approx(0.3803956658485779).epsilon(1e-14));
    CHECK(accessible_mi({1.0, 0.2}, {0, 1}) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK_THROWS_AS(accessible_mi_from_product(0.6), std::domain_error);
}

TEST_CASE("accessible information equals the three-outcome classical MI") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 0.5);
    for (int i = 0; i < 1000; ++i) {
        const double p = u(rng);
        CHECK(std::abs(accessible_mi_from_product(p) - three_outcome_mi(p)) <= 1e-12);
    }
    CHECK(std::abs(accessible_mi_from_product(0.0) - three_outcome_mi(0.0)) <= 1e-12);
    CHECK(std::abs(accessible_mi_from_product(0.5) - three_outcome_mi(0.5)) <= 1e-12);
}

TEST_CASE("accessible information is bounded and monotone") {
    double previous = kLn2 + 1.0;
    for (int i = 0; i <= 5000; ++i) {
        const double p = 0.5 * i / 5000.0;
        const double mi = accessible_mi_from_product(p);
        CHECK(mi <= kLn2);
        if (p > 0) CHECK(mi < kLn2);
        CHECK(mi <= previous);
        previous = mi;
    }

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> ps(1 + rng() % 12);
        for (double& p : ps) p = u(rng);
        const PVector p(ps);
        std::vector<std::size_t> idx;
        double previous_mi = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            idx.push_back(k);
            const double mi = accessible_mi(p, FractionSelection(idx));
            CHECK(mi + 1e-15 >= previous_mi);
            previous_mi = mi;
        }
    }
}

TEST_CASE("accessible information never exceeds the QMI") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 15;
        std::vector<double> ps(n);
        for (double& p : ps) p = u(rng);
        const PVector p(ps);
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < n; ++k) {
            if (u(rng) < 0.5) idx.push_back(k);
        }
        const FractionSelection sel(idx);
        CHECK(accessible_mi(p, sel) <= qmi_exact(icnot_overlaps(p), sel) + 1e-9);
    }
}

TEST_CASE("drawing flip probabilities") {
    const PVector v{0.1, 0.9, 0.4};
    CHECK(draw_pvector(FixedDistribution{v}, 3, 7) == v);
    CHECK_THROWS_AS(draw_pvector(FixedDistribution{v}, 4, 7), std::invalid_argument);
    CHECK_THROWS_AS(draw_pvector(ExponentialDistribution{0.0}, 4, 7), std::invalid_argument);
    CHECK_THROWS_AS(draw_pvector(ExponentialDistribution{-1.0}, 4, 7), std::invalid_argument);
    CHECK(draw_pvector(FlatDistribution{}, 50, 7) == draw_pvector(FlatDistribution{}, 50, 7));

    const PVector flat = draw_pvector(FlatDistribution{}, 100'000, 2024);
    double sum = 0.0;
    for (double p : flat.values()) sum += p;
    const double mean = sum / 100'000.0;
    CHECK(mean >= 0.497);
    CHECK(mean <= 0.503);

    // Truncated exponential mean: 1/r − e^{−r}/(1 − e^{−r}); variance bounded by 1/12.
    const double rate = 5.0;
    const PVector ex = draw_pvector(ExponentialDistribution{rate}, 100'000, 99);
    sum = 0.0;
    for (double p : ex.values()) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        sum += p;
    }
    const double expected = 1.0 / rate - std::exp(-rate) / (1.0 - std::exp(-rate));
    CHECK(std::abs(sum / 100'000.0 - expected) <= 4.0 * std::sqrt(1.0 / 12.0 / 100'000.0));
}

TEST_CASE("a vanishing exponential rate is indistinguishable from flat") {
    const auto flat = draw_pvector(FlatDistribution{}, 10'000, 1);
    const auto ex = draw_pvector(ExponentialDistribution{1e-9}, 10'000, 2);
    std::vector<double> a(flat.values().begin(), flat.values().end());
    std::vector<double> b(ex.values().begin(), ex.values().end());
    // Two-sample KS critical value at α = 0.001: 1.95·√(2/n).
    CHECK(ks_statistic(a, b) < 1.95 * std::sqrt(2.0 / 10'000.0));
}

TEST_CASE("fresh-draw curve for perfect records") {
    const PVector ones(std::vector<double>(20, 1.0));
    const auto curve = averaged_accessible_curve(FixedDistribution{ones}, 20, {500, 3, 0});
    CHECK(curve.points[0].mi_nats == 0.0);
    for (std::size_t l = 1; l <= 20; ++l) {
        CHECK(curve.points[l].mi_nats == doctest::Approx(kLn2).epsilon(1e-14));
        CHECK(curve.points[l].stderr_ == 0.0);
        CHECK(curve.points[l].samples == 500);
    }
}

TEST_CASE("biased curves bracket the averaged one") {
    const DrawPlan plan{3000, 17, 0};
    const std::size_t n = 30;
    const auto avg = averaged_accessible_curve(FlatDistribution{}, n, plan);
    const auto hi = biased_accessible_curve(FlatDistribution{}, n, plan, BiasMode::max);
    const auto lo = biased_accessible_curve(FlatDistribution{}, n, plan, BiasMode::min);
    for (std::size_t l = 1; l <= n; ++l) {
        const auto& a = avg.points[l];
        const auto& h = hi.points[l];
        const auto& m = lo.points[l];
        CHECK(m.mi_nats <= a.mi_nats + 3 * std::hypot(m.stderr_, a.stderr_));
        CHECK(a.mi_nats <= h.mi_nats + 3 * std::hypot(h.stderr_, a.stderr_));
    }
    // Whole environment: max and min coincide draw by draw.
    CHECK(hi.points[n].mi_nats == doctest::Approx(lo.points[n].mi_nats).epsilon(1e-12));
}

TEST_CASE("biased max over a fixed environment at l = N equals the average") {
    const PVector v{0.2, 0.9, 0.5, 0.05};
    const auto hi = biased_accessible_curve(FixedDistribution{v}, 4, {100, 1, 0}, BiasMode::max);
    const auto avg = averaged_accessible_curve(FixedDistribution{v}, 4, {100, 1, 0});
    CHECK(hi.points[4].mi_nats == doctest::Approx(avg.points[4].mi_nats).epsilon(1e-14));
    CHECK(hi.points[1].mi_nats == doctest::Approx(accessible_mi(v, {1})).epsilon(1e-14));
    CHECK(hi.points[1].stderr_ == 0.0);
}

TEST_CASE("fixed-environment subset averaging agrees with fresh draws") {
    const PVector env = draw_pvector(FlatDistribution{}, 400, 5);
    const DrawPlan plan{20'000, 8, 0};
    const auto subset = subset_averaged_accessible_curve(env, plan);
    const auto fresh = averaged_accessible_curve(FlatDistribution{}, 400, {20'000, 8, 0});
    for (std::size_t l : {1, 2, 4, 8}) {
        const auto& s = subset.points[l];
        const auto& f = fresh.points[l];
        // The fixed environment is itself a sample, so allow a generous band.
        CHECK(std::abs(s.mi_nats - f.mi_nats) <= 0.03);
    }
}

TEST_CASE("curves are identical under any thread count") {
    const auto reference = averaged_accessible_curve(ExponentialDistribution{2.0}, 25, {700, 11, 1});
    const auto biased = biased_accessible_curve(FlatDistribution{}, 25, {700, 11, 1}, BiasMode::min);
    for (std::size_t threads : {2, 8}) {
        const auto again = averaged_accessible_curve(ExponentialDistribution{2.0}, 25, {700, 11, threads});
        const auto again_biased = biased_accessible_curve(FlatDistribution{}, 25, {700, 11, threads}, BiasMode::min);
        for (std::size_t l = 0; l <= 25; ++l) {
            CHECK(again.points[l].mi_nats == reference.points[l].mi_nats);
            CHECK(again.points[l].stderr_ == reference.points[l].stderr_);
            CHECK(again_biased.points[l].mi_nats == biased.points[l].mi_nats);
        }
    }
}
