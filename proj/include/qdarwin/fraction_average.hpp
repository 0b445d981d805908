#pragma once

#include "qdarwin/branch_model.hpp"
#include "qdarwin/mi_curve.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

namespace qdarwin {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AveragedValue {
    double mi_nats = 0.0;
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
};

/// Exact mean of qmi_exact over all C(N, l) subsets. Throws BudgetExceeded if
/// C(N, l) > budget.
AveragedValue averaged_qmi_enumerated(const OverlapVector& ov, std::size_t l,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

/// Mean and standard error over n_samples uniformly random size-l subsets.
/// Each sample draws its subset by partial Fisher–Yates from its own stream,
/// so the result depends only on (ov, l, n_samples, seed).
AveragedValue averaged_qmi_sampled(const OverlapVector& ov, std::size_t l,
                                   std::uint64_t n_samples, std::uint64_t seed,
                                   std::size_t threads = 0);

/// Averaged QMI of the GHZ+junk state over size-l fractions:
/// (1 − [C(N−m, l) − C(N−m, l−m)] / C(N, l)) · S(ρ_S), with the binomial
/// ratios evaluated as exponentiated log-gamma differences.
double ghz_junk_averaged_closed_form(const GhzJunkConfig& cfg, std::size_t l);

enum class ScenarioKind { A, B, C, explicit_order };

/// Nested fraction sequence: the point of size l holds the first l qubits of `order`.
struct ScenarioOrdering {
    ScenarioKind kind = ScenarioKind::explicit_order;
    std::vector<std::size_t> order;

    /// A: correlated first. B: junk first. C: one correlated, all junk, then
    /// the remaining correlated.
    static ScenarioOrdering builtin(ScenarioKind kind, const GhzJunkConfig& cfg);
    static ScenarioOrdering from_order(std::vector<std::size_t> order);

    void validate(std::size_t n) const;
};

/// Non-averaged QMI along a nested fraction sequence.
MiCurve nested_curve(const OverlapVector& ov, const ScenarioOrdering& ordering,
                     std::size_t stride = 1);
MiCurve scenario_curve(const GhzJunkConfig& cfg, const ScenarioOrdering& ordering,
                       std::size_t stride = 1);

struct AutoStrategy {
    std::uint64_t budget = kDefaultEnumerationBudget;
    std::uint64_t n_samples = 10'000;
    std::uint64_t seed = 0;
};
struct EnumerateStrategy {
    std::uint64_t budget = kDefaultEnumerationBudget;
};
struct SampleStrategy {
    std::uint64_t n_samples = 10'000;
    std::uint64_t seed = 0;
};
using AveragingStrategy = std::variant<AutoStrategy, EnumerateStrategy, SampleStrategy>;

/// Averaged QMI at every grid point. GHZ+junk inputs use the closed form under
/// AutoStrategy; otherwise each l is enumerated when the budget allows and
/// sampled if not. l = 0 and l = N are always the exact values 0 and 2·S(ρ_S).
MiCurve averaged_curve(const OverlapVector& ov, const AveragingStrategy& strategy,
                       std::size_t stride = 1, std::size_t threads = 0);

}  // namespace qdarwin
