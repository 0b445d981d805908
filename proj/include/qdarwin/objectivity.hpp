#pragma once

#include "qdarwin/accessible_info.hpp"
#include "qdarwin/branch_model.hpp"
#include "qdarwin/mi_curve.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace qdarwin {

inline constexpr double kDefaultThreshold = 0.99;

class NoCrossing : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Consensus {
    std::size_t l_star = 0;
    double f0 = 0.0;
    std::size_t consensus = 0;
};

/// Smallest grid point l* with mi ≥ threshold·s_system; consensus = ⌊N/l*⌋.
Consensus consensus_from_curve(const MiCurve& curve, double s_system,
                               double threshold = kDefaultThreshold);

inline std::size_t redundancy_ghz_junk(const GhzJunkConfig& cfg) {
    cfg.validate();
    return cfg.n_correlated;
}

enum class PackingOrder { descending, ascending, as_given };

/// Greedy partition: scan qubits in `order` of p, closing a fraction as soon as
/// its accessible information reaches threshold·ln 2. Returns the number of
/// closed fractions, a lower bound on the redundancy.
std::size_t redundancy_greedy(const PVector& p, double threshold = kDefaultThreshold,
                              PackingOrder order = PackingOrder::descending);

struct RedundancyEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t draws = 0;
};

RedundancyEstimate redundancy_mean(const PDistribution& dist, std::size_t n_env,
                                   const DrawPlan& plan, double threshold = kDefaultThreshold,
                                   PackingOrder order = PackingOrder::descending);

struct PlateauReport {
    bool present = false;
    std::size_t start_l = 0;
    std::size_t end_l = 0;
    double level_normalized = 0.0;
};

/// Longest run of consecutive curve points with |mi/s_system − 1| ≤ level_tol.
/// present requires at least two points.
PlateauReport detect_plateau(const MiCurve& curve, double s_system, double level_tol = 0.01);

struct DiscordExcess {
    double delta = 0.0;
    /// s_system − Δ when Δ > 0: the most QMI the complementary fraction can hold.
    std::optional<double> complement_bound;
};

DiscordExcess discord_excess_bound(double mi_nats, double s_system);

enum class RedundancyKind { exact, greedy_lower_bound };

struct ObjectivityReport {
    std::string model;
    std::size_t n = 0;
    std::optional<std::size_t> m;
    std::optional<std::string> distribution;
    std::optional<std::string> mode;
    double system_entropy_nats = 0.0;
    double threshold = kDefaultThreshold;
    double f0 = 1.0;
    std::size_t consensus = 1;
    double redundancy = 0.0;
    std::optional<double> redundancy_stderr;
    RedundancyKind redundancy_kind = RedundancyKind::exact;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> n_draws;
};

std::string to_json(const ObjectivityReport& report);

}  // namespace qdarwin
