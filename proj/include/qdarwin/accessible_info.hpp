#pragma once

#include "qdarwin/branch_model.hpp"
#include "qdarwin/mi_curve.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

namespace qdarwin {

class SplitMix64;

// Computational-basis mutual information for the iCNOT model. Measuring the
// system and a fraction gives three outcome classes: (0, 0…0) with
// probability ½, (1, 0…0) with P = ½·Π(1−p_i), and (1, anything else) with
// ½ − P.

struct FlatDistribution {};
/// Density ∝ exp(−rate·p) on [0,1].
struct ExponentialDistribution {
    double rate = 5.0;
};
struct FixedDistribution {
    PVector values;
};
using PDistribution = std::variant<FlatDistribution, ExponentialDistribution, FixedDistribution>;

std::string describe(const PDistribution& dist);

struct DrawPlan {
    std::uint64_t n_draws = 10'000;
    std::uint64_t seed = 0;
    std::size_t threads = 0;

    void validate() const;
};

/// ½·Π_{i∈sel}(1 − p_i).
double p_half_product(const PVector& p, const FractionSelection& sel);

/// ½ ln 2 + P ln P − (½ + P) ln(½ + P), for P ∈ [0, ½].
double accessible_mi_from_product(double p_half);

double accessible_mi(const PVector& p, const FractionSelection& sel);

/// One value from the distribution. Fixed distributions cannot be sampled
/// pointwise and throw std::invalid_argument.
double draw_p(const PDistribution& dist, SplitMix64& rng);

/// n independent draws. For a fixed distribution n must equal its length and
/// the values are returned unchanged.
PVector draw_pvector(const PDistribution& dist, std::size_t n, std::uint64_t seed);

/// For each l, the mean over plan.n_draws fresh extractions of l values.
/// For a fixed distribution each extraction is a uniform size-l subset of it.
MiCurve averaged_accessible_curve(const PDistribution& dist, std::size_t n_env,
                                  const DrawPlan& plan);

/// Subset averaging over one fixed environment (cross-check estimator).
MiCurve subset_averaged_accessible_curve(const PVector& p, const DrawPlan& plan);

enum class BiasMode { max, min };

/// Per draw: n_env values, sorted, keeping the l largest (max) or smallest (min).
MiCurve biased_accessible_curve(const PDistribution& dist, std::size_t n_env,
                                const DrawPlan& plan, BiasMode mode);

}  // namespace qdarwin
