#include "qdarwin/accessible_info.hpp"

#include "qdarwin/entropy.hpp"
#include "qdarwin/numeric.hpp"
#include "qdarwin/parallel.hpp"
#include "qdarwin/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qdarwin {

namespace {

const FixedDistribution* as_fixed(const PDistribution& dist) { return std::get_if<FixedDistribution>(&dist); }

void validate(const PDistribution& dist) {
    if (const auto* e = std::get_if<ExponentialDistribution>(&dist)) {
        if (!(e->rate > 0.0) || !std::isfinite(e->rate)) {
            throw std::invalid_argument("exponential rate must be positive");
        }
    }
}

// Fills `out` with one extraction of out.size() flip probabilities.
void extract(const PDistribution& dist, SplitMix64& rng, std::vector<double>& out) {
    if (const auto* fixed = as_fixed(dist)) {
        const auto values = fixed->values.values();
        const std::size_t n = values.size();
        if (out.size() > n) throw std::invalid_argument("fixed distribution has too few values");
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (std::size_t j = 0; j < out.size(); ++j) {
            std::swap(idx[j], idx[j + rng.below(n - j)]);
            out[j] = values[idx[j]];
        }
        return;
    }
    for (double& p : out) p = draw_p(dist, rng);
}

double mi_of_values(std::span<const double> ps) {
    double product = 0.5;
    for (double p : ps) product *= 1.0 - p;
    return accessible_mi_from_product(product);
}

}  // namespace

std::string describe(const PDistribution& dist) {
    return std::visit(
        [](const auto& d) -> std::string {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, FlatDistribution>) {
                return "flat";
            } else if constexpr (std::is_same_v<D, ExponentialDistribution>) {
                return "exponential(rate=" + format_double(d.rate) + ")";
            } else {
                return "fixed(n=" + std::to_string(d.values.size()) + ")";
            }
        },
        dist);
}

void DrawPlan::validate() const {
    if (n_draws < 1) throw std::invalid_argument("need at least one draw");
}

double p_half_product(const PVector& p, const FractionSelection& sel) {
    sel.check_bounds(p.size());
    double product = 0.5;
    for (std::size_t k : sel.indices()) product *= 1.0 - p[k];
    return product;
}

double accessible_mi_from_product(double p_half) {
    if (!(p_half >= -kProbabilityTolerance && p_half <= 0.5 + kProbabilityTolerance)) {
        throw std::domain_error("P must lie in [0, 1/2]");
    }
    p_half = std::clamp(p_half, 0.0, 0.5);
    const double mi = 0.5 * std::numbers::ln2 + xlogx(p_half) - xlogx(0.5 + p_half);
    return std::max(0.0, mi);
}

double accessible_mi(const PVector& p, const FractionSelection& sel) {
    return accessible_mi_from_product(p_half_product(p, sel));
}

double draw_p(const PDistribution& dist, SplitMix64& rng) {
    return std::visit(
        [&](const auto& d) -> double {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, FlatDistribution>) {
                return rng.uniform();
            } else if constexpr (std::is_same_v<D, ExponentialDistribution>) {
                if (!(d.rate > 0.0)) throw std::invalid_argument("exponential rate must be positive");
                // Inverse CDF of rate·e^{−rate·p} / (1 − e^{−rate}) on [0,1].
                const double u = rng.uniform();
                return std::min(1.0, -std::log1p(u * std::expm1(-d.rate)) / d.rate);
            } else {
                throw std::invalid_argument("fixed distributions are not sampled pointwise");
            }
        },
        dist);
}

PVector draw_pvector(const PDistribution& dist, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need at least one value");
    validate(dist);
    if (const auto* fixed = as_fixed(dist)) {
        if (fixed->values.size() != n) throw std::invalid_argument("fixed distribution length mismatch");
        return fixed->values;
    }
    SplitMix64 rng(derive_seed(seed, {static_cast<std::uint64_t>(StreamTag::pvector)}));
    std::vector<double> values(n);
    for (double& p : values) p = draw_p(dist, rng);
    return PVector(std::move(values));
}

MiCurve averaged_accessible_curve(const PDistribution& dist, std::size_t n_env, const DrawPlan& plan) {
    if (n_env < 1) throw std::invalid_argument("environment must have at least one qubit");
    plan.validate();
    validate(dist);
    if (const auto* fixed = as_fixed(dist); fixed && fixed->values.size() != n_env) {
        throw std::invalid_argument("fixed distribution length mismatch");
    }

    MiCurve curve{n_env, std::numbers::ln2, {}};
    curve.append(0, 0.0, 0.0, 1);
    std::vector<double> values(plan.n_draws);
    for (std::size_t l = 1; l <= n_env; ++l) {
        parallel_for(
            plan.n_draws,
            [&](std::size_t d) {
                SplitMix64 rng(derive_seed(plan.seed, {static_cast<std::uint64_t>(StreamTag::fresh_draw), l, d}));
                std::vector<double> ps(l);
                extract(dist, rng, ps);
                values[d] = mi_of_values(ps);
            },
            plan.threads);
        const SampleStats stats = summarize(values);
        curve.append(l, stats.mean, stats.stderr_, stats.count);
    }
    return curve;
}

MiCurve subset_averaged_accessible_curve(const PVector& p, const DrawPlan& plan) {
    return averaged_accessible_curve(FixedDistribution{p}, p.size(), plan);
}

MiCurve biased_accessible_curve(const PDistribution& dist, std::size_t n_env, const DrawPlan& plan,
                                BiasMode mode) {
    if (n_env < 1) throw std::invalid_argument("environment must have at least one qubit");
    plan.validate();
    validate(dist);

    // by_size[l-1][d]: information of the l most (least) correlated qubits in draw d.
    std::vector<std::vector<double>> by_size(n_env, std::vector<double>(plan.n_draws));
    parallel_for(
        plan.n_draws,
        [&](std::size_t d) {
            SplitMix64 rng(derive_seed(plan.seed, {static_cast<std::uint64_t>(StreamTag::biased_draw), d}));
            std::vector<double> ps(n_env);
            if (const auto* fixed = as_fixed(dist)) {
                if (fixed->values.size() != n_env) throw std::invalid_argument("fixed distribution length mismatch");
                std::copy(fixed->values.values().begin(), fixed->values.values().end(), ps.begin());
            } else {
                extract(dist, rng, ps);
            }
            if (mode == BiasMode::max) {
                std::sort(ps.begin(), ps.end(), std::greater<>());
            } else {
                std::sort(ps.begin(), ps.end());
            }
            double product = 0.5;
            for (std::size_t l = 1; l <= n_env; ++l) {
                product *= 1.0 - ps[l - 1];
                by_size[l - 1][d] = accessible_mi_from_product(product);
            }
        },
        plan.threads);

    MiCurve curve{n_env, std::numbers::ln2, {}};
    curve.append(0, 0.0, 0.0, 1);
    for (std::size_t l = 1; l <= n_env; ++l) {
        const SampleStats stats = summarize(by_size[l - 1]);
        curve.append(l, stats.mean, stats.stderr_, stats.count);
    }
    return curve;
}

}  // namespace qdarwin
