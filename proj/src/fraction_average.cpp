#include "qdarwin/fraction_average.hpp"

#include "qdarwin/numeric.hpp"
#include "qdarwin/parallel.hpp"
#include "qdarwin/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace qdarwin {

namespace {

void check_fraction_size(const OverlapVector& ov, std::size_t l) {
    if (l > ov.size()) {
        throw std::out_of_range("fraction size " + std::to_string(l) + " exceeds environment of " +
                                std::to_string(ov.size()));
    }
}

// Advances a sorted l-combination of [0, n) in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t l = c.size();
    for (std::size_t i = l; i-- > 0;) {
        if (c[i] != i + n - l) {
            ++c[i];
            for (std::size_t j = i + 1; j < l; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

AveragedValue averaged_qmi_enumerated(const OverlapVector& ov, std::size_t l, std::uint64_t budget) {
    check_fraction_size(ov, l);
    const std::size_t n = ov.size();
    const double count = binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(l));
    if (count > static_cast<double>(budget)) {
        throw BudgetExceeded("C(" + std::to_string(n) + ", " + std::to_string(l) +
                             ") subsets exceed the enumeration budget of " + std::to_string(budget) +
                             "; use the sampled estimator");
    }

    const double full = ov.full_overlap();
    std::vector<std::size_t> combo(l);
    std::iota(combo.begin(), combo.end(), std::size_t{0});
    CompensatedSum sum;
    std::uint64_t visited = 0;
    do {
        double inside = 1.0;
        double outside = 1.0;
        std::size_t next = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (next < l && combo[next] == k) {
                inside *= ov[k];
                ++next;
            } else {
                outside *= ov[k];
            }
        }
        sum.add(qmi_from_overlaps(full, inside, outside));
        ++visited;
    } while (next_combination(combo, n));

    return {sum.value() / static_cast<double>(visited), 0.0, visited};
}

AveragedValue averaged_qmi_sampled(const OverlapVector& ov, std::size_t l, std::uint64_t n_samples,
                                   std::uint64_t seed, std::size_t threads) {
    check_fraction_size(ov, l);
    if (l == 0) throw std::invalid_argument("sampled averaging needs l >= 1");
    if (n_samples < 2) throw std::invalid_argument("sampled averaging needs at least 2 samples");

    const std::size_t n = ov.size();
    const double full = ov.full_overlap();
    std::vector<double> values(n_samples);
    parallel_for(
        n_samples,
        [&](std::size_t i) {
            SplitMix64 rng(derive_seed(seed, {static_cast<std::uint64_t>(StreamTag::subset_sampling), l, i}));
            std::vector<std::size_t> idx(n);
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            for (std::size_t j = 0; j < l; ++j) {
                std::swap(idx[j], idx[j + rng.below(n - j)]);
            }
            double inside = 1.0;
            double outside = 1.0;
            for (std::size_t j = 0; j < n; ++j) (j < l ? inside : outside) *= ov[idx[j]];
            values[i] = qmi_from_overlaps(full, inside, outside);
        },
        threads);

    const SampleStats stats = summarize(values);
    return {stats.mean, stats.stderr_, stats.count};
}

double ghz_junk_averaged_closed_form(const GhzJunkConfig& cfg, std::size_t l) {
    cfg.validate();
    const auto n = static_cast<std::int64_t>(cfg.n_total);
    const auto m = static_cast<std::int64_t>(cfg.n_correlated);
    const auto size = static_cast<std::int64_t>(l);
    if (size > n) throw std::out_of_range("fraction size exceeds environment");

    const double s_system = m >= 1 ? std::numbers::ln2 : 0.0;
    if (size == 0) return 0.0;
    if (size == n) return 2.0 * s_system;

    // P(no correlated qubit in the fraction) and P(all of them), each
    // exponentiated on its own so neither binomial is ever formed.
    const double log_total = log_binomial(n, size);
    const double none = std::exp(log_binomial(n - m, size) - log_total);
    const double all = std::exp(log_binomial(n - m, size - m) - log_total);
    return (1.0 - none + all) * s_system;
}

ScenarioOrdering ScenarioOrdering::builtin(ScenarioKind kind, const GhzJunkConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.n_total;
    const std::size_t m = cfg.n_correlated;
    ScenarioOrdering ordering;
    ordering.kind = kind;
    auto& order = ordering.order;
    order.reserve(n);
    auto push_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) order.push_back(k);
    };
    switch (kind) {
        case ScenarioKind::A:
            push_range(0, n);
            break;
        case ScenarioKind::B:
            push_range(m, n);
            push_range(0, m);
            break;
        case ScenarioKind::C:
            if (m == 0) throw std::invalid_argument("scenario C needs at least one correlated qubit");
            order.push_back(0);
            push_range(m, n);
            push_range(1, m);
            break;
        case ScenarioKind::explicit_order:
            throw std::invalid_argument("explicit orderings are built with from_order");
    }
    return ordering;
}

ScenarioOrdering ScenarioOrdering::from_order(std::vector<std::size_t> order) {
    return ScenarioOrdering{ScenarioKind::explicit_order, std::move(order)};
}

void ScenarioOrdering::validate(std::size_t n) const {
    if (order.size() != n) throw std::invalid_argument("ordering length does not match environment");
    std::vector<bool> seen(n, false);
    for (std::size_t k : order) {
        if (k >= n || seen[k]) throw std::invalid_argument("ordering is not a permutation");
        seen[k] = true;
    }
}

MiCurve nested_curve(const OverlapVector& ov, const ScenarioOrdering& ordering, std::size_t stride) {
    ordering.validate(ov.size());
    MiCurve curve{ov.size(), system_entropy(ov), {}};
    for (std::size_t l : fraction_grid(ov.size(), stride)) {
        curve.append(l, qmi_exact(ov, FractionSelection::prefix(ordering.order, l)), 0.0, 1);
    }
    return curve;
}

MiCurve scenario_curve(const GhzJunkConfig& cfg, const ScenarioOrdering& ordering, std::size_t stride) {
    return nested_curve(ghz_junk_overlaps(cfg), ordering, stride);
}

MiCurve averaged_curve(const OverlapVector& ov, const AveragingStrategy& strategy, std::size_t stride,
                       std::size_t threads) {
    const std::size_t n = ov.size();
    const double s_system = system_entropy(ov);
    MiCurve curve{n, s_system, {}};

    std::size_t m = 0;
    const bool closed_form = std::holds_alternative<AutoStrategy>(strategy) && is_ghz_junk(ov, &m);

    for (std::size_t l : fraction_grid(n, stride)) {
        if (l == 0) {
            curve.append(0, 0.0, 0.0, 1);
            continue;
        }
        if (l == n) {
            curve.append(n, 2.0 * s_system, 0.0, 1);
            continue;
        }
        if (closed_form) {
            curve.append(l, ghz_junk_averaged_closed_form({n, m}, l), 0.0, 1);
            continue;
        }
        const double count = binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(l));
        AveragedValue value = std::visit(
            [&](const auto& s) -> AveragedValue {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, EnumerateStrategy>) {
                    return averaged_qmi_enumerated(ov, l, s.budget);
                } else if constexpr (std::is_same_v<S, SampleStrategy>) {
                    return averaged_qmi_sampled(ov, l, s.n_samples, s.seed, threads);
                } else {
                    if (count <= static_cast<double>(s.budget)) return averaged_qmi_enumerated(ov, l, s.budget);
                    return averaged_qmi_sampled(ov, l, s.n_samples, s.seed, threads);
                }
            },
            strategy);
        curve.append(l, value.mi_nats, value.stderr_, value.samples);
    }
    return curve;
}

}  // namespace qdarwin
